#include <doctest.h>

#include "jclattice/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace jcl;
using namespace jcl::eigen;

namespace {

HermitianMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    HermitianMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set_diagonal(i, nd(rng));
        for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, Complex{nd(rng), nd(rng)});
    }
    return m;
}

double orthonormality_error(const EigenSystem& e) {
    double err = 0.0;
    for (std::size_t a = 0; a < e.dim(); ++a) {
        for (std::size_t b = 0; b < e.dim(); ++b) {
            const Complex ip = inner(e.eigenvectors[a], e.eigenvectors[b]);
            err = std::max(err, std::abs(ip - Complex(a == b ? 1.0 : 0.0)));
        }
    }
    return err;
}

StateVector unit(std::size_t dim, std::size_t k) {
    StateVector v(dim);
    v[k] = 1.0;
    return v;
}

}  // namespace

TEST_CASE("random hermitian matrices are diagonalized") {
    std::mt19937_64 rng(1);
    for (std::size_t n = 1; n <= 12; ++n) {
        for (int rep = 0; rep < 5; ++rep) {
            const auto m = random_hermitian(n, rng);
            const auto e = diagonalize(m);
            REQUIRE(e.dim() == n);
            CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
            CHECK(reconstruction_error(m, e) < 1e-12 * std::max(1.0, m.frobenius_norm()));
            CHECK(orthonormality_error(e) < 1e-12);
            const double tr = std::accumulate(e.eigenvalues.begin(), e.eigenvalues.end(), 0.0);
            CHECK(tr == doctest::Approx(m.trace()).epsilon(1e-12));
            for (std::size_t k = 0; k < n; ++k) {
                // M v = λ v
                const auto mv = m.apply(e.eigenvectors[k]);
                double res = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    res = std::max(res, std::abs(mv[i] - e.eigenvalues[k] * e.eigenvectors[k][i]));
                }
                CHECK(res < 1e-12 * std::max(1.0, m.frobenius_norm()));
            }
        }
    }
}

TEST_CASE("two by two complex case matches the analytic eigenvalues") {
    HermitianMatrix m(2);
    m.set_diagonal(0, 1.0);
    m.set_diagonal(1, -0.5);
    m.set(0, 1, Complex{0.3, -0.4});
    const auto e = diagonalize(m);
    const double mean = 0.25, half = std::sqrt(0.75 * 0.75 + 0.25);
    CHECK(e.eigenvalues[0] == doctest::Approx(mean - half).epsilon(1e-14));
    CHECK(e.eigenvalues[1] == doctest::Approx(mean + half).epsilon(1e-14));
}

TEST_CASE("eigenvalues do not depend on basis permutation") {
    std::mt19937_64 rng(9);
    const std::size_t n = 7;
    const auto m = random_hermitian(n, rng);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    HermitianMatrix pm(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) pm.set(i, j, m(perm[i], perm[j]));
    }
    const auto a = diagonalize(m), b = diagonalize(pm);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(a.eigenvalues[k] - b.eigenvalues[k]) < 1e-12);
}

TEST_CASE("degenerate spectra converge and keep an orthonormal basis") {
    HermitianMatrix id(5);
    for (std::size_t i = 0; i < 5; ++i) id.set_diagonal(i, 2.0);
    const auto e = diagonalize(id);
    for (double v : e.eigenvalues) CHECK(v == 2.0);
    CHECK(orthonormality_error(e) < 1e-15);

    // all-to-all hopping: one level at −(n−1)κ, (n−1)-fold level at +κ
    const std::size_t n = 6;
    HermitianMatrix hop(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) hop.set(i, j, -1.0);
    }
    const auto h = diagonalize(hop);
    CHECK(h.eigenvalues[0] == doctest::Approx(-5.0).epsilon(1e-14));
    for (std::size_t k = 1; k < n; ++k) CHECK(h.eigenvalues[k] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(orthonormality_error(h) < 1e-13);
    const auto blocks = group_degenerate(h.eigenvalues);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[1].size() == n - 1);
    CHECK(blocks[1].value == doctest::Approx(1.0));
}

TEST_CASE("solver configuration errors") {
    std::mt19937_64 rng(2);
    const auto m = random_hermitian(8, rng);
    try {
        diagonalize(m, {1e-14, 1});
        FAIL("one sweep should not converge an 8x8 random matrix");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoConvergence);
    }
    CHECK_THROWS_AS(diagonalize(m, {0.0, 64}), Error);
    CHECK_THROWS_AS(diagonalize(m, {1e-14, 0}), Error);
}

TEST_CASE("golden rule on basis vectors") {
    const std::vector<CellDamping> d{{0.03, 0.01}, {0.05, 0.02}};
    for (auto model : {ReservoirModel::CommonAtomsCommonCavities, ReservoirModel::IndependentAtomsCommonCavities}) {
        CHECK(golden_rule_rate(unit(4, atom_slot(0)), d, model) == doctest::Approx(0.03));
        CHECK(golden_rule_rate(unit(4, atom_slot(1)), d, model) == doctest::Approx(0.05));
        CHECK(golden_rule_rate(unit(4, photon_slot(0)), d, model) == doctest::Approx(0.01));
        CHECK(golden_rule_rate(unit(4, photon_slot(1)), d, model) == doctest::Approx(0.02));
    }
}

TEST_CASE("collective interference differs between reservoir models") {
    const std::vector<CellDamping> d{{0.04, 0.0}, {0.04, 0.0}};
    const double s = 1.0 / std::sqrt(2.0);
    StateVector anti(4), sym(4);
    anti[atom_slot(0)] = s;
    anti[atom_slot(1)] = -s;
    sym[atom_slot(0)] = s;
    sym[atom_slot(1)] = s;
    CHECK(golden_rule_rate(anti, d, ReservoirModel::CommonAtomsCommonCavities) < 1e-18);
    CHECK(golden_rule_rate(sym, d, ReservoirModel::CommonAtomsCommonCavities) == doctest::Approx(0.08));
    CHECK(golden_rule_rate(anti, d, ReservoirModel::IndependentAtomsCommonCavities) == doctest::Approx(0.04));
    CHECK(golden_rule_rate(sym, d, ReservoirModel::IndependentAtomsCommonCavities) == doctest::Approx(0.04));
}

TEST_CASE("rate operator expectation equals the golden rule") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> u(0, 0.1);
    for (int n = 1; n <= 5; ++n) {
        std::vector<CellDamping> d;
        for (int i = 0; i < n; ++i) d.push_back({u(rng), u(rng)});
        for (auto model : {ReservoirModel::CommonAtomsCommonCavities, ReservoirModel::IndependentAtomsCommonCavities}) {
            const auto r = rate_operator(d, model);
            const std::size_t dim = 2 * n;
            StateVector v(dim);
            for (auto& c : v) c = Complex{nd(rng), nd(rng)};
            Complex expect = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j) expect += std::conj(v[i]) * r[i * dim + j] * v[j];
            }
            CHECK(std::abs(expect.imag()) < 1e-14);
            CHECK(expect.real() == doctest::Approx(golden_rule_rate(v, d, model)).epsilon(1e-12));
        }
    }
}

TEST_CASE("numeric rates require the canonical basis") {
    std::mt19937_64 rng(8);
    const auto e = diagonalize(random_hermitian(4, rng));
    const std::vector<CellDamping> d{{0.1, 0.1}, {0.1, 0.1}};
    try {
        golden_rule_rates_numeric(e, d, ReservoirModel::CommonAtomsCommonCavities);
        FAIL("expected BasisMismatch");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::BasisMismatch);
    }
}

TEST_CASE("projector comparison ignores the choice of basis inside a span") {
    const double s = 1.0 / std::sqrt(2.0);
    const std::vector<StateVector> a{unit(3, 0), unit(3, 1)};
    const std::vector<StateVector> b{{s, s, 0.0}, {Complex{0, s}, Complex{0, -s}, 0.0}};
    const std::vector<StateVector> c{unit(3, 0), unit(3, 2)};
    CHECK(projector_distance(a, b) < 1e-15);
    CHECK(projector_distance(a, c) == doctest::Approx(std::sqrt(2.0)));

    const std::vector<CellDamping> d{{0.3, 0.0}, {0.0, 0.0}};
    const auto op = rate_operator(d, ReservoirModel::CommonAtomsCommonCavities);
    const std::vector<StateVector> p{unit(4, 0), unit(4, 1)};
    const std::vector<StateVector> q{{s, s, 0.0, 0.0}, {s, -s, 0.0, 0.0}};
    CHECK(compressed_operator_distance(p, q, op) < 1e-15);

    // linearly dependent input collapses to the span dimension
    const std::vector<StateVector> dup{unit(3, 0), {2.0, 0.0, 0.0}, unit(3, 1)};
    CHECK(orthonormal_basis(dup).size() == 2);
}
