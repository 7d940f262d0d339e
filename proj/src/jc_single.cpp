#include "jclattice/jc_single.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

namespace jcl::single {

double clamp_rate(double rate) {
    assert(rate >= -1e-12);
    return std::max(rate, 0.0);
}

double dressed_angle(int n, double g, double delta) {
    if (n < 1) throw Error(ErrorCode::PreconditionViolated, "doublet index n must be >= 1");
    if (g < 0.0) throw Error(ErrorCode::NegativeRate, "coupling g must be >= 0");
    if (g == 0.0 && delta == 0.0) {
        throw Error(ErrorCode::DegenerateAngle, "g = delta = 0 leaves the doublet degenerate");
    }
    const double theta = 0.5 * std::atan2(2.0 * g * std::sqrt(static_cast<double>(n)), delta);
    return std::clamp(theta, 0.0, std::numbers::pi / 2);
}

LadderEnergies ladder_energies(int n, double omega_c, double g, double delta) {
    if (n < 1) throw Error(ErrorCode::PreconditionViolated, "doublet index n must be >= 1");
    const double split = std::sqrt(n * g * g + 0.25 * delta * delta);
    return {n * omega_c + split, n * omega_c - split, -0.5 * delta};
}

DressedDoublet make_doublet(int n, double omega_c, double g, double delta) {
    const auto e = ladder_energies(n, omega_c, g, delta);
    return {n, dressed_angle(n, g, delta), e.omega_plus, e.omega_minus};
}

std::array<Complex, 2> dressed_state(Branch branch, double theta_n) {
    const double c = std::cos(theta_n);
    const double s = std::sin(theta_n);
    if (branch == Branch::Plus) return {Complex{c, 0.0}, Complex{0.0, s}};
    return {Complex{-s, 0.0}, Complex{0.0, c}};
}

GroundRates doublet_to_ground_rates(double theta_1, const CellDamping& d) {
    const double c2 = std::cos(theta_1) * std::cos(theta_1);
    const double diff = d.gamma_a - d.gamma_c;
    return {clamp_rate(d.gamma_c + diff * c2), clamp_rate(d.gamma_a - diff * c2)};
}

DoubletRates inter_doublet_rates(int n, double theta_n, double theta_nm1, const CellDamping& d) {
    if (n < 2) throw Error(ErrorCode::PreconditionViolated, "inter-doublet rates need n >= 2");
    const double ga = d.gamma_a;
    const double gc = d.gamma_c;
    const double c2n = std::cos(2.0 * theta_n);
    const double s2n = std::sin(2.0 * theta_n);
    const double c2m = std::cos(2.0 * theta_nm1);
    const double s2m = std::sin(2.0 * theta_nm1);
    const double cos2 = std::cos(theta_n) * std::cos(theta_n);
    const double sin2 = std::sin(theta_n) * std::sin(theta_n);
    const double nn = static_cast<double>(n);
    const double cross = 0.5 * gc * std::sqrt(nn * (nn - 1.0)) * s2n * s2m;

    // sign = +1 selects the "+" lower state, −1 the "−" lower state
    auto upper_plus = [&](double sign) {
        return 0.5 * ((ga - gc) - sign * (ga + gc) * c2m) * cos2 +
               0.5 * nn * gc * (1.0 + sign * c2n * c2m) + sign * cross;
    };
    auto upper_minus = [&](double sign) {
        return 0.5 * ((ga - gc) - sign * (ga + gc) * c2m) * sin2 +
               0.5 * nn * gc * (1.0 - sign * c2n * c2m) - sign * cross;
    };

    DoubletRates r;
    r.gamma_pp = clamp_rate(upper_plus(+1.0));
    r.gamma_pm = clamp_rate(upper_plus(-1.0));
    r.gamma_mp = clamp_rate(upper_minus(+1.0));
    r.gamma_mm = clamp_rate(upper_minus(-1.0));
    r.total_plus = r.gamma_pp + r.gamma_pm;
    r.total_minus = r.gamma_mp + r.gamma_mm;
    return r;
}

GroundRates doublet_totals(int n, double theta_n, const CellDamping& d) {
    if (n < 1) throw Error(ErrorCode::PreconditionViolated, "doublet index n must be >= 1");
    const double diff = d.gamma_a - d.gamma_c;
    const double cos2 = std::cos(theta_n) * std::cos(theta_n);
    const double sin2 = std::sin(theta_n) * std::sin(theta_n);
    return {clamp_rate(n * d.gamma_c + diff * cos2), clamp_rate(n * d.gamma_c + diff * sin2)};
}

}  // namespace jcl::single
