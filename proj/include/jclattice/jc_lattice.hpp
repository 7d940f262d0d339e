// jc_lattice.hpp — closed-form one-excitation eigenstates and decay rates of
// N all-to-all coupled Jaynes-Cummings cells.
//
// Energy conventions
//   bohr_frequency  excitation frequency above the ground state |0g…0g⟩; these
//                   are the eigenvalues of build_hamiltonian.
//   level_energy    the published closed-form level energy,
//                   bohr_frequency + level_reference(params), where the
//                   reference ground level is −Δ/2 for one cell and −Δ for
//                   coupled cells.
//
// Hopping enters the Hamiltonian as −κ between every pair of photon slots, so
// the fully symmetric photon mode sits at ω_c − (N−1)κ and every
// antisymmetric photon mode at ω_c + κ.

#pragma once

#include "jclattice/core.hpp"
#include "jclattice/eigensolver.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jcl::lattice {

enum class Sign { Plus, Minus };

constexpr double sign_value(Sign s) noexcept { return s == Sign::Plus ? 1.0 : -1.0; }

HermitianMatrix build_hamiltonian(const LatticeParams& params);

double level_reference(const LatticeParams& params) noexcept;

// ------------------------------------------------------------------ two cells

struct TwoCellState {
    Sign parity{Sign::Plus};  // ε: + antisymmetric, − symmetric under cell exchange
    Sign branch{Sign::Plus};  // ε': upper (+) or lower (−) member of the parity doublet
    double r{0.0};            // (Δ − εκ)/(2g)
    double u{0.0};            // photon amplitude
    double w{0.0};            // atom amplitude
    double level_energy{0.0};
    double bohr_frequency{0.0};

    /// u(|1g0g⟩ − ε|0g1g⟩) + w(|0e0g⟩ − ε|0g0e⟩) in BasisLabel order.
    StateVector amplitudes() const;
    std::string id() const;
};

/// States ordered (+,+), (+,−), (−,+), (−,−). Throws DegenerateCell when g = 0.
std::array<TwoCellState, 4> two_cell_eigensystem(const LatticeParams& params);

/// Closed-form decay rate to the ground state: identical cells with a common
/// reservoir (1−ε)²(γ_a w² + γ_c u²); distinct cells
/// (√γ_a1 − ε√γ_a2)² w² + (√γ_c1 − ε√γ_c2)² u², which collapses to
/// ½(√γ_a1 − ε√γ_c1)² when γ_a1 = γ_c2 and γ_a2 = γ_c1; independent atomic
/// reservoirs (γ_a1 + γ_a2) w² + (√γ_c1 − ε√γ_c2)² u².
double two_cell_rate(const TwoCellState& state, const LatticeParams& params);

// -------------------------------------------------------------------- N cells

struct NCellRoots {
    double r{0.0};        // (Δ − κ)/(2g), antisymmetric detuning ratio
    double p_plus{0.0};   // −r + √(r²+1)
    double p_minus{0.0};  // −r − √(r²+1)
    double r_sym{0.0};    // (Δ + (N−1)κ)/(2g)
    double q_plus{0.0};   // −r' + √(r'²+1)
    double q_minus{0.0};  // −r' − √(r'²+1)
};

NCellRoots n_cell_roots(const LatticeParams& params);

enum class NCellKind { AntisymmetricUpper, AntisymmetricLower, SymmetricPlus, SymmetricMinus };

std::string_view to_string(NCellKind kind) noexcept;

struct NCellEigenstate {
    NCellKind kind{NCellKind::SymmetricPlus};
    int index{0};            // 1..N−1 upper, N..2N−2 lower, 0 for symmetric states
    int partner_cell{-1};    // antisymmetric states pair cell 0 with this cell
    bool paired_form{false}; // true for the p(|a₀⟩−|a_k⟩) form, false for the p, 1/p' form
    double p_anchor{0.0};    // atom coefficient on cell 0 (or 1/p' on every atom for symmetric)
    double p_other{0.0};     // root paired with p_anchor (p_anchor·p_other = −1)
    double normalization{1.0};
    StateVector amplitudes;
    double level_energy{0.0};
    double bohr_frequency{0.0};

    bool antisymmetric() const noexcept {
        return kind == NCellKind::AntisymmetricUpper || kind == NCellKind::AntisymmetricLower;
    }
    std::string id() const;
};

/// 2N states: upper antisymmetric (indices 1..N−1), lower antisymmetric
/// (N..2N−2), then the symmetric φ₊ and φ₋. Requires N >= 2 and g > 0.
std::vector<NCellEigenstate> n_cell_eigensystem(const LatticeParams& params);

/// Closed-form rate for one N-cell state, selected by reservoir model and
/// whether the cells are identical.
double n_cell_rate(const NCellEigenstate& state, const LatticeParams& params);

// ---------------------------------------------------------- unified surface

enum class StateFamily { DressedSingle, TwoCell, NCell, Numeric };

struct LatticeEigenstate {
    std::string id;
    StateFamily family{StateFamily::Numeric};
    double bohr_frequency{0.0};
    double level_energy{0.0};
    StateVector amplitudes;
    std::optional<double> closed_form_rate;
};

enum class ClosedFormRoute { TwoCell, NCell };

/// Closed-form states for any N: dressed doublet for N = 1, the chosen route
/// for N = 2, the N-cell construction for N >= 3.
std::vector<LatticeEigenstate> closed_form_states(const LatticeParams& params,
                                                  ClosedFormRoute route = ClosedFormRoute::TwoCell);

/// Eigenvectors of build_hamiltonian from the Jacobi solver.
std::vector<LatticeEigenstate> numeric_states(const LatticeParams& params,
                                              const eigen::SolverConfig& cfg = {});

// --------------------------------------------------------- entanglement/rates

struct WStateMetrics {
    double balance{0.0};
    bool maximally_entangled{false};
};

/// balance = min/max of |c_k|² over every atom and photon slot of the cells
/// that carry weight. Throws ZeroVector for the zero vector.
WStateMetrics w_state_metrics(const StateVector& amplitudes, double tolerance = 1e-6);

enum class RateClass { Superradiant, Subradiant, Dark };

std::string_view to_string(RateClass c) noexcept;

struct RateEntry {
    std::string state_id;
    double bohr_frequency{0.0};
    double level_energy{0.0};
    double rate{0.0};
    RateClass rate_class{RateClass::Subradiant};
    double entanglement_balance{0.0};
    bool maximally_entangled{false};
};

struct ReportConfig {
    double dark_relative{1e-9};  // Dark when rate < dark_relative · max(γ_a + γ_c)
    double entanglement_tolerance{1e-6};
};

struct RateReport {
    std::vector<RateEntry> entries;
    double single_cell_rate{0.0};  // max over cells of γ_a + γ_c
    double dark_threshold{0.0};
};

/// Uses each state's closed-form rate when present, otherwise the generic
/// golden rule on its amplitudes.
RateReport transition_rates(std::span<const LatticeEigenstate> states, const LatticeParams& params,
                            const ReportConfig& cfg = {});

// ----------------------------------------------------- strong hopping limit

struct StrongCouplingReport {
    double coupling_ratio_squared{0.0};  // (g/κ)²
    double upper_first_deviation{0.0};   // |Γ₁ − 0|
    double upper_rest_deviation{0.0};    // max |Γ_i − 0|, i = 2..N−1
    double lower_deviation{0.0};         // max |Γ_j − γ_a|, j = N..2N−2
    double symmetric_deviation{0.0};     // max |Γ± − (γ_a + p'²Nγ_c)/(1+p'²)|

    double max_deviation() const noexcept;
};

/// κ ≫ g limit for identical cells with independent atomic reservoirs. Rates
/// are ordered as n_cell_eigensystem. Throws WrongReservoirModel for a common
/// atomic reservoir.
StrongCouplingReport strong_coupling_limit_check(const LatticeParams& params, std::span<const double> rates);

}  // namespace jcl::lattice
