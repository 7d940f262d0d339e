#include <doctest.h>

#include "jclattice/eigensolver.hpp"
#include "jclattice/jc_single.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace jcl;
using namespace jcl::single;

namespace {

// Independent Fock-space model of one cell: states |g,k⟩ and |e,k⟩,
// H = ω_c a†a + ω_a σ⁺σ⁻ + g(aσ⁺ + a†σ⁻). The n-th manifold is
// {|e,n−1⟩, |g,n⟩}; the ground state |g,0⟩ sits at 0.
struct Manifold {
    double upper, lower;             // eigenvalues
    std::array<double, 2> vu, vl;    // real eigenvectors over {|e,n−1⟩, |g,n⟩}
};

Manifold manifold(int n, double omega_c, double g, double delta) {
    HermitianMatrix h(2);
    h.set_diagonal(0, (n - 1) * omega_c + omega_c + delta);
    h.set_diagonal(1, n * omega_c);
    h.set(0, 1, g * std::sqrt(static_cast<double>(n)));
    const auto eig = eigen::diagonalize(h);
    Manifold m;
    m.lower = eig.eigenvalues[0];
    m.upper = eig.eigenvalues[1];
    for (int k = 0; k < 2; ++k) {
        m.vl[k] = eig.eigenvectors[0][k].real();
        m.vu[k] = eig.eigenvectors[1][k].real();
    }
    return m;
}

// ⟨j|a|i⟩ and ⟨j|σ⁻|i⟩ for i in manifold n, j in manifold n−1 (n >= 2).
// a|e,n−1⟩ = √(n−1)|e,n−2⟩, a|g,n⟩ = √n|g,n−1⟩, σ⁻|e,n−1⟩ = |g,n−1⟩.
double inter_rate(int n, const std::array<double, 2>& i, const std::array<double, 2>& j, const CellDamping& d) {
    const double a = j[0] * std::sqrt(n - 1.0) * i[0] + j[1] * std::sqrt(static_cast<double>(n)) * i[1];
    const double s = j[1] * i[0];
    return d.gamma_c * a * a + d.gamma_a * s * s;
}

}  // namespace

TEST_CASE("mixing angle limits and errors") {
    CHECK(dressed_angle(1, 1.0, 0.0) == doctest::Approx(std::numbers::pi / 4));
    CHECK(dressed_angle(1, 0.0, 2.0) == doctest::Approx(0.0));
    CHECK(dressed_angle(1, 0.0, -2.0) == doctest::Approx(std::numbers::pi / 2));
    CHECK(std::cos(dressed_angle(3, 1.0, 0.0)) * std::cos(dressed_angle(3, 1.0, 0.0)) == doctest::Approx(0.5));
    CHECK_THROWS_AS(dressed_angle(0, 1.0, 0.0), Error);
    for (auto bad : {std::pair{0.0, 0.0}, std::pair{-1.0, 0.5}}) {
        try {
            dressed_angle(1, bad.first, bad.second);
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK((e.code() == ErrorCode::DegenerateAngle || e.code() == ErrorCode::NegativeRate));
        }
    }
}

TEST_CASE("resonant vacuum Rabi splitting") {
    const auto e = ladder_energies(1, 0.0, 1.0, 0.0);
    CHECK(e.omega_plus == doctest::Approx(1.0));
    CHECK(e.omega_minus == doctest::Approx(-1.0));
    CHECK(e.omega_ground == doctest::Approx(0.0));
    const auto e4 = ladder_energies(4, 0.0, 1.0, 0.0);
    CHECK(e4.omega_plus - e4.omega_minus == doctest::Approx(4.0));
}

TEST_CASE("ladder energies match the Fock-space Bohr frequencies") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const double wc = 4 * u(rng) - 2, g = 0.1 + 2 * u(rng), delta = 8 * u(rng) - 4;
        for (int n = 1; n <= 6; ++n) {
            const auto e = ladder_energies(n, wc, g, delta);
            const auto m = manifold(n, wc, g, delta);
            CHECK(e.omega_plus - e.omega_ground == doctest::Approx(m.upper).epsilon(1e-12));
            CHECK(e.omega_minus - e.omega_ground == doctest::Approx(m.lower).epsilon(1e-12));
        }
    }
}

TEST_CASE("dressed states are the manifold eigenvectors") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        const double g = 0.1 + 2 * u(rng), delta = 8 * u(rng) - 4;
        for (int n = 1; n <= 5; ++n) {
            const double th = dressed_angle(n, g, delta);
            const auto m = manifold(n, 0.0, g, delta);
            const auto plus = dressed_state(Branch::Plus, th);
            const auto minus = dressed_state(Branch::Minus, th);
            CHECK(std::norm(plus[0]) + std::norm(plus[1]) == doctest::Approx(1.0));
            // the i on the photon component is a phase of the dressed basis
            const Complex op = plus[0] * m.vu[0] + plus[1] * Complex{0, -1} * m.vu[1];
            const Complex om = minus[0] * m.vl[0] + minus[1] * Complex{0, -1} * m.vl[1];
            CHECK(std::abs(op) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(std::abs(om) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(std::abs(std::conj(plus[0]) * minus[0] + std::conj(plus[1]) * minus[1]) < 1e-15);
        }
    }
}

TEST_CASE("doublet-to-ground rates equal the golden-rule matrix elements") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const double g = 0.1 + 2 * u(rng), delta = 8 * u(rng) - 4;
        const CellDamping d{0.1 * u(rng), 0.1 * u(rng)};
        const auto m = manifold(1, 0.0, g, delta);
        // ⟨g,0|a|e,0⟩ = 0, ⟨g,0|a|g,1⟩ = 1, ⟨g,0|σ⁻|e,0⟩ = 1
        const double plus = d.gamma_a * m.vu[0] * m.vu[0] + d.gamma_c * m.vu[1] * m.vu[1];
        const double minus = d.gamma_a * m.vl[0] * m.vl[0] + d.gamma_c * m.vl[1] * m.vl[1];
        const auto r = doublet_to_ground_rates(dressed_angle(1, g, delta), d);
        CHECK(std::abs(r.plus - plus) < 1e-13);
        CHECK(std::abs(r.minus - minus) < 1e-13);
        CHECK(std::abs(r.plus + r.minus - d.total()) < 1e-12);
    }
}

TEST_CASE("equal damping gives rate gamma for both ground transitions") {
    const auto r = doublet_to_ground_rates(dressed_angle(1, 1.0, 3.0), {0.04, 0.04});
    CHECK(r.plus == doctest::Approx(0.04));
    CHECK(r.minus == doctest::Approx(0.04));
}

TEST_CASE("inter-doublet rates equal the golden-rule matrix elements") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const double g = 0.1 + 2 * u(rng), delta = 8 * u(rng) - 4;
        const CellDamping d{0.1 * u(rng), 0.1 * u(rng)};
        for (int n = 2; n <= 6; ++n) {
            const auto hi = manifold(n, 0.0, g, delta);
            const auto lo = manifold(n - 1, 0.0, g, delta);
            const auto r = inter_doublet_rates(n, dressed_angle(n, g, delta), dressed_angle(n - 1, g, delta), d);
            CHECK(std::abs(r.gamma_pp - inter_rate(n, hi.vu, lo.vu, d)) < 1e-12);
            CHECK(std::abs(r.gamma_pm - inter_rate(n, hi.vu, lo.vl, d)) < 1e-12);
            CHECK(std::abs(r.gamma_mp - inter_rate(n, hi.vl, lo.vu, d)) < 1e-12);
            CHECK(std::abs(r.gamma_mm - inter_rate(n, hi.vl, lo.vl, d)) < 1e-12);

            const auto tot = doublet_totals(n, dressed_angle(n, g, delta), d);
            CHECK(std::abs(r.total_plus - tot.plus) < 1e-12);
            CHECK(std::abs(r.total_minus - tot.minus) < 1e-12);
        }
    }
    CHECK_THROWS_AS(inter_doublet_rates(1, 0.3, 0.2, {0.1, 0.1}), Error);
}

TEST_CASE("clamp_rate removes roundoff negatives only") {
    CHECK(clamp_rate(-1e-15) == 0.0);
    CHECK(clamp_rate(0.25) == 0.25);
}
