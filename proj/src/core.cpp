#include "jclattice/core.hpp"

#include <algorithm>
#include <cmath>

namespace jcl {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NegativeRate: return "NegativeRate";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::EmptyLattice: return "EmptyLattice";
        case ErrorCode::DampingLengthMismatch: return "DampingLengthMismatch";
        case ErrorCode::KappaOnSingleCell: return "KappaOnSingleCell";
        case ErrorCode::DegenerateAngle: return "DegenerateAngle";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::DegenerateCell: return "DegenerateCell";
        case ErrorCode::WrongReservoirModel: return "WrongReservoirModel";
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::BasisMismatch: return "BasisMismatch";
        case ErrorCode::EmptyLineList: return "EmptyLineList";
        case ErrorCode::NonPositiveWidth: return "NonPositiveWidth";
        case ErrorCode::NoPeaks: return "NoPeaks";
    }
    return "Unknown";
}

std::string_view to_string(ReservoirModel model) noexcept {
    switch (model) {
        case ReservoirModel::CommonAtomsCommonCavities: return "common";
        case ReservoirModel::IndependentAtomsCommonCavities: return "independent";
    }
    return "unknown";
}

bool LatticeParams::identical_cells() const noexcept {
    return std::all_of(damping.begin(), damping.end(),
                       [&](const CellDamping& d) { return d == damping.front(); });
}

double LatticeParams::max_cell_rate() const noexcept {
    double best = 0.0;
    for (const auto& d : damping) best = std::max(best, d.total());
    return best;
}

LatticeParams identical_lattice(int n_cells, double omega_c, double delta, double g, double kappa,
                                CellDamping damping, ReservoirModel reservoir) {
    LatticeParams p;
    p.n_cells = n_cells;
    p.omega_c = omega_c;
    p.delta = delta;
    p.g = g;
    p.kappa = kappa;
    p.damping.assign(static_cast<std::size_t>(std::max(n_cells, 0)), damping);
    p.reservoir = reservoir;
    return p;
}

const LatticeParams& validate(const LatticeParams& params) {
    if (params.n_cells < 1) {
        throw Error(ErrorCode::EmptyLattice, "lattice needs at least one cell");
    }
    for (double v : {params.omega_c, params.delta, params.g, params.kappa}) {
        if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "lattice parameter is not finite");
    }
    if (params.g < 0.0) throw Error(ErrorCode::NegativeRate, "coupling g must be >= 0");
    if (params.damping.size() != static_cast<std::size_t>(params.n_cells)) {
        throw Error(ErrorCode::DampingLengthMismatch,
                    "expected " + std::to_string(params.n_cells) + " damping entries, got " +
                        std::to_string(params.damping.size()));
    }
    for (const auto& d : params.damping) {
        if (!std::isfinite(d.gamma_a) || !std::isfinite(d.gamma_c)) {
            throw Error(ErrorCode::NonFinite, "damping rate is not finite");
        }
        if (d.gamma_a < 0.0 || d.gamma_c < 0.0) {
            throw Error(ErrorCode::NegativeRate, "damping rates must be >= 0");
        }
    }
    if (params.n_cells == 1 && params.kappa != 0.0) {
        throw Error(ErrorCode::KappaOnSingleCell, "hopping kappa must be 0 for a single cell");
    }
    return params;
}

std::vector<BasisLabel> one_excitation_basis(int n_cells) {
    std::vector<BasisLabel> basis;
    basis.reserve(2 * static_cast<std::size_t>(std::max(n_cells, 0)));
    for (int c = 0; c < n_cells; ++c) {
        basis.push_back({SlotKind::AtomExcited, c});
        basis.push_back({SlotKind::PhotonIn, c});
    }
    return basis;
}

std::string to_string(const BasisLabel& label) {
    return (label.kind == SlotKind::AtomExcited ? "atom_excited[" : "photon_in[") +
           std::to_string(label.cell) + "]";
}

HermitianMatrix::HermitianMatrix(std::size_t dim, std::vector<BasisLabel> basis)
    : dim_(dim), entries_(dim * dim, Complex{0.0, 0.0}), basis_(std::move(basis)) {
    if (!basis_.empty() && basis_.size() != dim_) {
        throw Error(ErrorCode::BasisMismatch, "basis size does not match matrix dimension");
    }
}

void HermitianMatrix::set(std::size_t i, std::size_t j, Complex value) {
    if (i >= dim_ || j >= dim_) throw std::out_of_range("HermitianMatrix::set index");
    if (i == j) {
        entries_[i * dim_ + i] = Complex{value.real(), 0.0};
        return;
    }
    entries_[i * dim_ + j] = value;
    entries_[j * dim_ + i] = std::conj(value);
}

double HermitianMatrix::frobenius_norm() const noexcept {
    double s = 0.0;
    for (const auto& z : entries_) s += std::norm(z);
    return std::sqrt(s);
}

double HermitianMatrix::trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i].real();
    return t;
}

StateVector HermitianMatrix::apply(const StateVector& v) const {
    if (v.size() != dim_) throw Error(ErrorCode::BasisMismatch, "vector length mismatch");
    StateVector out(dim_, Complex{});
    for (std::size_t i = 0; i < dim_; ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < dim_; ++j) acc += entries_[i * dim_ + j] * v[j];
        out[i] = acc;
    }
    return out;
}

Complex inner(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::BasisMismatch, "vector length mismatch");
    Complex acc{};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double norm_squared(const StateVector& v) noexcept {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s;
}

StateVector normalized(StateVector v) {
    const double n = std::sqrt(norm_squared(v));
    if (n == 0.0) throw Error(ErrorCode::ZeroVector, "cannot normalize a zero vector");
    for (auto& z : v) z /= n;
    return v;
}

}  // namespace jcl
