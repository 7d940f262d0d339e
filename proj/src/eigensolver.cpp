#include "jclattice/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace jcl::eigen {

namespace {

double off_diagonal_norm(const std::vector<Complex>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) s += std::norm(a[i * n + j]);
        }
    }
    return std::sqrt(s);
}

// One complex Givens rotation annihilating a(p,q). The rotation is the real
// Jacobi rotation conjugated by diag(1, e^{-iφ}) with e^{iφ} = a(p,q)/|a(p,q)|.
void rotate(std::vector<Complex>& a, std::vector<Complex>& v, std::size_t n, std::size_t p,
            std::size_t q) {
    const Complex apq = a[p * n + q];
    const double mag = std::abs(apq);
    if (mag < 1e-300) return;

    const Complex phase = apq / mag;
    const double app = a[p * n + p].real();
    const double aqq = a[q * n + q].real();
    const double theta = (aqq - app) / (2.0 * mag);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Complex u_pp{c, 0.0};
    const Complex u_pq{s, 0.0};
    const Complex u_qp = -s * std::conj(phase);
    const Complex u_qq = c * std::conj(phase);

    for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const Complex akp = a[k * n + p];
        const Complex akq = a[k * n + q];
        const Complex new_kp = akp * u_pp + akq * u_qp;
        const Complex new_kq = akp * u_pq + akq * u_qq;
        a[k * n + p] = new_kp;
        a[k * n + q] = new_kq;
        a[p * n + k] = std::conj(new_kp);
        a[q * n + k] = std::conj(new_kq);
    }
    a[p * n + p] = Complex{app - t * mag, 0.0};
    a[q * n + q] = Complex{aqq + t * mag, 0.0};
    a[p * n + q] = Complex{};
    a[q * n + p] = Complex{};

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v[k * n + p];
        const Complex vkq = v[k * n + q];
        v[k * n + p] = vkp * u_pp + vkq * u_qp;
        v[k * n + q] = vkp * u_pq + vkq * u_qq;
    }
}

void fix_phase(StateVector& vec) {
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < vec.size(); ++i) {
        const double m = std::abs(vec[i]);
        if (m > best_mag * (1.0 + 1e-12)) {
            best = i;
            best_mag = m;
        }
    }
    if (best_mag <= 0.0) return;
    const Complex rot = std::conj(vec[best]) / best_mag;
    for (auto& z : vec) z *= rot;
    vec[best] = Complex{vec[best].real(), 0.0};
}

bool canonical_basis(const std::vector<BasisLabel>& basis, std::size_t n_cells) {
    if (basis.size() != 2 * n_cells) return false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!(basis[i] == label_of(i))) return false;
    }
    return true;
}

}  // namespace

EigenSystem diagonalize(const HermitianMatrix& m, const SolverConfig& cfg) {
    if (!(cfg.relative_tolerance > 0.0) || cfg.max_sweeps < 1) {
        throw Error(ErrorCode::PreconditionViolated, "solver tolerance must be > 0 and max_sweeps >= 1");
    }
    const std::size_t n = m.dim();
    std::vector<Complex> a(n * n);
    std::vector<Complex> v(n * n, Complex{});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
        v[i * n + i] = Complex{1.0, 0.0};
    }

    const double tol = cfg.relative_tolerance * m.frobenius_norm();
    int sweeps = 0;
    while (off_diagonal_norm(a, n) >= tol && tol > 0.0) {
        if (sweeps == cfg.max_sweeps) {
            throw Error(ErrorCode::NoConvergence,
                        "Jacobi did not converge in " + std::to_string(cfg.max_sweeps) + " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, n, p, q);
        }
        ++sweeps;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a[x * n + x].real() < a[y * n + y].real();
    });

    EigenSystem out;
    out.basis = m.basis();
    out.eigenvalues.reserve(n);
    out.eigenvectors.reserve(n);
    for (std::size_t idx : order) {
        out.eigenvalues.push_back(a[idx * n + idx].real());
        StateVector col(n);
        for (std::size_t k = 0; k < n; ++k) col[k] = v[k * n + idx];
        col = normalized(std::move(col));
        fix_phase(col);
        out.eigenvectors.push_back(std::move(col));
    }
    return out;
}

double reconstruction_error(const HermitianMatrix& m, const EigenSystem& eig) {
    const std::size_t n = m.dim();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < eig.dim(); ++k) {
                acc += eig.eigenvectors[k][i] * eig.eigenvalues[k] * std::conj(eig.eigenvectors[k][j]);
            }
            s += std::norm(acc - m(i, j));
        }
    }
    return std::sqrt(s);
}

double golden_rule_rate(const StateVector& amplitudes, std::span<const CellDamping> damping,
                        ReservoirModel model) {
    const std::size_t n_cells = damping.size();
    if (amplitudes.size() != 2 * n_cells) {
        throw Error(ErrorCode::BasisMismatch, "amplitude vector must have 2N entries");
    }
    Complex atom_sum{};
    Complex photon_sum{};
    double atom_incoherent = 0.0;
    for (std::size_t j = 0; j < n_cells; ++j) {
        const int cell = static_cast<int>(j);
        const Complex ca = amplitudes[atom_slot(cell)];
        const Complex cc = amplitudes[photon_slot(cell)];
        atom_sum += std::sqrt(damping[j].gamma_a) * ca;
        atom_incoherent += damping[j].gamma_a * std::norm(ca);
        photon_sum += std::sqrt(damping[j].gamma_c) * cc;
    }
    const double atom_part =
        model == ReservoirModel::CommonAtomsCommonCavities ? std::norm(atom_sum) : atom_incoherent;
    return atom_part + std::norm(photon_sum);
}

std::vector<double> golden_rule_rates_numeric(const EigenSystem& eig,
                                              std::span<const CellDamping> damping,
                                              ReservoirModel model) {
    if (!canonical_basis(eig.basis, damping.size())) {
        throw Error(ErrorCode::BasisMismatch,
                    "eigen system basis is not the one-excitation basis of " +
                        std::to_string(damping.size()) + " cells");
    }
    std::vector<double> rates;
    rates.reserve(eig.dim());
    for (const auto& vec : eig.eigenvectors) rates.push_back(golden_rule_rate(vec, damping, model));
    return rates;
}

std::vector<Complex> rate_operator(std::span<const CellDamping> damping, ReservoirModel model) {
    const std::size_t dim = 2 * damping.size();
    std::vector<Complex> r(dim * dim, Complex{});
    StateVector atom(dim, Complex{});
    StateVector photon(dim, Complex{});
    for (std::size_t j = 0; j < damping.size(); ++j) {
        const int cell = static_cast<int>(j);
        atom[atom_slot(cell)] = std::sqrt(damping[j].gamma_a);
        photon[photon_slot(cell)] = std::sqrt(damping[j].gamma_c);
    }
    auto add_outer = [&](const StateVector& x) {
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t k = 0; k < dim; ++k) r[i * dim + k] += x[i] * std::conj(x[k]);
        }
    };
    add_outer(photon);
    if (model == ReservoirModel::CommonAtomsCommonCavities) {
        add_outer(atom);
    } else {
        for (std::size_t j = 0; j < damping.size(); ++j) {
            const std::size_t s = atom_slot(static_cast<int>(j));
            r[s * dim + s] += damping[j].gamma_a;
        }
    }
    return r;
}

std::vector<DegenerateBlock> group_degenerate(std::span<const double> sorted, double relative_tolerance) {
    std::vector<DegenerateBlock> blocks;
    if (sorted.empty()) return blocks;
    const double span = sorted.back() - sorted.front();
    const double tol = std::max(relative_tolerance * span, 1e-300);
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= sorted.size(); ++i) {
        if (i == sorted.size() || sorted[i] - sorted[i - 1] > tol) {
            double mean = 0.0;
            for (std::size_t k = begin; k < i; ++k) mean += sorted[k];
            blocks.push_back({begin, i, mean / static_cast<double>(i - begin)});
            begin = i;
        }
    }
    return blocks;
}

std::vector<StateVector> orthonormal_basis(std::span<const StateVector> vectors, double drop_tolerance) {
    std::vector<StateVector> basis;
    for (const auto& v : vectors) {
        StateVector w = v;
        const double original = std::sqrt(norm_squared(w));
        if (original == 0.0) continue;
        // two passes of modified Gram-Schmidt
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                const Complex proj = inner(b, w);
                for (std::size_t i = 0; i < w.size(); ++i) w[i] -= proj * b[i];
            }
        }
        const double residual = std::sqrt(norm_squared(w));
        if (residual <= drop_tolerance * original) continue;
        for (auto& z : w) z /= residual;
        basis.push_back(std::move(w));
    }
    return basis;
}

std::vector<Complex> projector(std::span<const StateVector> vectors) {
    const auto basis = orthonormal_basis(vectors);
    const std::size_t dim = vectors.empty() ? 0 : vectors.front().size();
    std::vector<Complex> p(dim * dim, Complex{});
    for (const auto& b : basis) {
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t k = 0; k < dim; ++k) p[i * dim + k] += b[i] * std::conj(b[k]);
        }
    }
    return p;
}

namespace {

std::vector<Complex> matmul(const std::vector<Complex>& x, const std::vector<Complex>& y, std::size_t n) {
    std::vector<Complex> out(n * n, Complex{});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex xik = x[i * n + k];
            if (xik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] += xik * y[k * n + j];
        }
    }
    return out;
}

double frobenius_difference(const std::vector<Complex>& x, const std::vector<Complex>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::norm(x[i] - y[i]);
    return std::sqrt(s);
}

std::size_t common_dim(std::span<const StateVector> a, std::span<const StateVector> b) {
    const std::size_t dim = !a.empty() ? a.front().size() : (!b.empty() ? b.front().size() : 0);
    for (const auto& v : a) {
        if (v.size() != dim) throw Error(ErrorCode::BasisMismatch, "vector length mismatch");
    }
    for (const auto& v : b) {
        if (v.size() != dim) throw Error(ErrorCode::BasisMismatch, "vector length mismatch");
    }
    return dim;
}

std::vector<Complex> projector_or_zero(std::span<const StateVector> v, std::size_t dim) {
    return v.empty() ? std::vector<Complex>(dim * dim, Complex{}) : projector(v);
}

}  // namespace

double projector_distance(std::span<const StateVector> a, std::span<const StateVector> b) {
    const std::size_t dim = common_dim(a, b);
    return frobenius_difference(projector_or_zero(a, dim), projector_or_zero(b, dim));
}

double compressed_operator_distance(std::span<const StateVector> a, std::span<const StateVector> b,
                                    const std::vector<Complex>& op) {
    const std::size_t dim = common_dim(a, b);
    if (op.size() != dim * dim) throw Error(ErrorCode::BasisMismatch, "operator dimension mismatch");
    const auto pa = projector_or_zero(a, dim);
    const auto pb = projector_or_zero(b, dim);
    return frobenius_difference(matmul(matmul(pa, op, dim), pa, dim), matmul(matmul(pb, op, dim), pb, dim));
}

}  // namespace jcl::eigen
