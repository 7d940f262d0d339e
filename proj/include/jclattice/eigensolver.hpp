// eigensolver.hpp — cyclic complex Jacobi diagonalization of small dense
// Hermitian matrices, the generic golden-rule rate evaluator over the
// one-excitation basis, and degenerate-subspace comparison tools.
//
// Everything here is independent of the closed-form eigenstates in
// jc_lattice; it is the numerical reference those closed forms are checked
// against.

#pragma once

#include "jclattice/core.hpp"

#include <span>
#include <vector>

namespace jcl::eigen {

struct SolverConfig {
    // Convergence when off-diagonal Frobenius norm < relative_tolerance · ‖M‖_F.
    double relative_tolerance{1e-14};
    int max_sweeps{64};
};

/// Cyclic (row-major) complex Jacobi. Eigenvalues ascending; each
/// eigenvector is normalized and phased so its largest component is real
/// and positive. Throws NoConvergence when max_sweeps is exhausted.
EigenSystem diagonalize(const HermitianMatrix& m, const SolverConfig& cfg = {});

// ‖V D V† − M‖_F
double reconstruction_error(const HermitianMatrix& m, const EigenSystem& eig);

// ---------------------------------------------------------------- golden rule

/// Decay rate of one ν=1 state into the ground state.
///   common:      |Σⱼ √γ_aj c_atom(j)|² + |Σⱼ √γ_cj c_photon(j)|²
///   independent: Σⱼ γ_aj |c_atom(j)|²  + |Σⱼ √γ_cj c_photon(j)|²
double golden_rule_rate(const StateVector& amplitudes, std::span<const CellDamping> damping,
                        ReservoirModel model);

/// golden_rule_rate for every eigenvector. Throws BasisMismatch unless the
/// eigen system carries the canonical 2N-label basis for N = damping.size().
std::vector<double> golden_rule_rates_numeric(const EigenSystem& eig,
                                              std::span<const CellDamping> damping,
                                              ReservoirModel model);

/// Matrix R with ⟨v|R|v⟩ = golden_rule_rate(v); used for basis-independent
/// comparisons inside degenerate blocks.
std::vector<Complex> rate_operator(std::span<const CellDamping> damping, ReservoirModel model);

// ----------------------------------------------------------- subspace tools

struct DegenerateBlock {
    std::size_t begin{0};  // index into the sorted eigenvalue list
    std::size_t end{0};    // one past the last
    double value{0.0};     // mean eigenvalue of the block

    std::size_t size() const noexcept { return end - begin; }
};

/// Groups sorted eigenvalues whose consecutive gaps are below
/// relative_tolerance · (spectral span), floored at an absolute 1e-300.
std::vector<DegenerateBlock> group_degenerate(std::span<const double> sorted_eigenvalues,
                                              double relative_tolerance = 1e-9);

/// Orthonormal basis of span(vectors) by modified Gram-Schmidt; vectors whose
/// residual norm falls below drop_tolerance are discarded.
std::vector<StateVector> orthonormal_basis(std::span<const StateVector> vectors,
                                           double drop_tolerance = 1e-10);

/// Dense projector onto span(vectors) (row-major dim×dim).
std::vector<Complex> projector(std::span<const StateVector> vectors);

/// ‖P_a − P_b‖_F for the spans of two vector sets.
double projector_distance(std::span<const StateVector> a, std::span<const StateVector> b);

/// ‖P_a R P_a − P_b R P_b‖_F.
double compressed_operator_distance(std::span<const StateVector> a, std::span<const StateVector> b,
                                    const std::vector<Complex>& op);

}  // namespace jcl::eigen
