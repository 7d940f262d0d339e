// core.hpp — shared domain types for coupled Jaynes-Cummings cells:
// complex amplitudes, damping, lattice parameters, the one-excitation basis,
// Hermitian matrices and eigen systems.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jcl {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

inline double modulus_squared(const Complex& z) noexcept { return std::norm(z); }

// --------------------------------- errors -----------------------------------

enum class ErrorCode {
    NegativeRate,
    NonFinite,
    EmptyLattice,
    DampingLengthMismatch,
    KappaOnSingleCell,
    DegenerateAngle,
    PreconditionViolated,
    DegenerateCell,
    WrongReservoirModel,
    ZeroVector,
    NoConvergence,
    BasisMismatch,
    EmptyLineList,
    NonPositiveWidth,
    NoPeaks,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// ------------------------------ physical model ------------------------------

struct CellDamping {
    double gamma_a{0.0};  // atomic spontaneous emission into side modes
    double gamma_c{0.0};  // cavity loss

    double total() const noexcept { return gamma_a + gamma_c; }
    friend bool operator==(const CellDamping&, const CellDamping&) = default;
};

enum class ReservoirModel {
    CommonAtomsCommonCavities,
    IndependentAtomsCommonCavities,
};

std::string_view to_string(ReservoirModel model) noexcept;

struct LatticeParams {
    int n_cells{1};
    double omega_c{0.0};
    double delta{0.0};  // ω_a − ω_c
    double g{1.0};
    double kappa{0.0};
    std::vector<CellDamping> damping{CellDamping{}};
    ReservoirModel reservoir{ReservoirModel::CommonAtomsCommonCavities};

    double omega_a() const noexcept { return omega_c + delta; }
    bool identical_cells() const noexcept;
    // max over cells of γ_a + γ_c
    double max_cell_rate() const noexcept;

    friend bool operator==(const LatticeParams&, const LatticeParams&) = default;
};

// Convenience constructor for N cells sharing one damping pair.
LatticeParams identical_lattice(int n_cells, double omega_c, double delta, double g, double kappa,
                                CellDamping damping,
                                ReservoirModel reservoir = ReservoirModel::CommonAtomsCommonCavities);

// Returns params unchanged or throws Error.
const LatticeParams& validate(const LatticeParams& params);

// ------------------------------- basis labels -------------------------------

enum class SlotKind { AtomExcited, PhotonIn };

struct BasisLabel {
    SlotKind kind{SlotKind::AtomExcited};
    int cell{0};

    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

// Cell-major, atom before photon.
constexpr std::size_t index_of(const BasisLabel& label) noexcept {
    return 2 * static_cast<std::size_t>(label.cell) + (label.kind == SlotKind::PhotonIn ? 1 : 0);
}

constexpr BasisLabel label_of(std::size_t index) noexcept {
    return BasisLabel{index % 2 == 0 ? SlotKind::AtomExcited : SlotKind::PhotonIn,
                      static_cast<int>(index / 2)};
}

constexpr std::size_t atom_slot(int cell) noexcept { return index_of({SlotKind::AtomExcited, cell}); }
constexpr std::size_t photon_slot(int cell) noexcept { return index_of({SlotKind::PhotonIn, cell}); }

std::vector<BasisLabel> one_excitation_basis(int n_cells);
std::string to_string(const BasisLabel& label);

// ----------------------------- Hermitian matrix -----------------------------

class HermitianMatrix {
public:
    explicit HermitianMatrix(std::size_t dim, std::vector<BasisLabel> basis = {});

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<BasisLabel>& basis() const noexcept { return basis_; }

    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

    // Writes (i,j) and its mirror; diagonal entries keep only the real part.
    void set(std::size_t i, std::size_t j, Complex value);
    void set_diagonal(std::size_t i, double value) { set(i, i, value); }

    double frobenius_norm() const noexcept;
    double trace() const noexcept;
    StateVector apply(const StateVector& v) const;

private:
    std::size_t dim_;
    std::vector<Complex> entries_;
    std::vector<BasisLabel> basis_;
};

struct EigenSystem {
    std::vector<double> eigenvalues;        // ascending
    std::vector<StateVector> eigenvectors;  // eigenvectors[k] pairs with eigenvalues[k]
    std::vector<BasisLabel> basis;          // empty for matrices without a labeled basis

    std::size_t dim() const noexcept { return eigenvalues.size(); }
};

// ------------------------------ vector helpers ------------------------------

Complex inner(const StateVector& a, const StateVector& b);  // ⟨a|b⟩
double norm_squared(const StateVector& v) noexcept;
StateVector normalized(StateVector v);

}  // namespace jcl
