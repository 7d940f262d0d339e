// jc_single.hpp — closed-form single-cell Jaynes-Cummings ladder and its
// golden-rule transition rates.

#pragma once

#include "jclattice/core.hpp"

#include <array>

namespace jcl::single {

enum class Branch { Plus, Minus };

struct DressedDoublet {
    int n{1};
    double theta_n{0.0};
    double omega_plus{0.0};
    double omega_minus{0.0};
};

struct LadderEnergies {
    double omega_plus{0.0};
    double omega_minus{0.0};
    double omega_ground{0.0};  // −Δ/2
};

struct GroundRates {
    double plus{0.0};   // Γ_{+,1}
    double minus{0.0};  // Γ_{−,1}
};

struct DoubletRates {
    double gamma_pp{0.0};  // Γ_{+,+n}
    double gamma_pm{0.0};  // Γ_{+,−n}
    double gamma_mp{0.0};  // Γ_{−,+n}
    double gamma_mm{0.0};  // Γ_{−,−n}
    double total_plus{0.0};
    double total_minus{0.0};
};

/// Mixing angle θₙ = ½·atan2(2g√n, Δ) ∈ [0, π/2].
/// Throws DegenerateAngle for g = Δ = 0, PreconditionViolated for n < 1 or g < 0.
double dressed_angle(int n, double g, double delta);

/// ω±ₙ = nω_c ± √(ng² + Δ²/4), ω₀ = −Δ/2.
LadderEnergies ladder_energies(int n, double omega_c, double g, double delta);

DressedDoublet make_doublet(int n, double omega_c, double g, double delta);

/// Amplitudes over {|e,n−1⟩, |g,n⟩}: + → (cosθ, i sinθ), − → (−sinθ, i cosθ).
std::array<Complex, 2> dressed_state(Branch branch, double theta_n);

GroundRates doublet_to_ground_rates(double theta_1, const CellDamping& damping);

/// Rates from the n-th doublet into the (n−1)-th; n >= 2.
DoubletRates inter_doublet_rates(int n, double theta_n, double theta_nm1, const CellDamping& damping);

/// Totals Γ±ₙ = nγ_c + (γ_a − γ_c)·{cos²θₙ, sin²θₙ}.
GroundRates doublet_totals(int n, double theta_n, const CellDamping& damping);

// Clamps roundoff-negative rates to zero.
double clamp_rate(double rate);

}  // namespace jcl::single
