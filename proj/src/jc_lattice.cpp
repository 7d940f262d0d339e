#include "jclattice/jc_lattice.hpp"

#include "jclattice/jc_single.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace jcl::lattice {

namespace {

// p± = −r ± √(r²+1), evaluated without cancellation via p₊p₋ = −1.
std::pair<double, double> quadratic_roots(double r) {
    const double s = std::hypot(r, 1.0);
    if (r >= 0.0) {
        const double pm = -r - s;
        return {-1.0 / pm, pm};
    }
    const double pp = -r + s;
    return {pp, -1.0 / pp};
}

void require_coupling(const LatticeParams& p) {
    if (p.g == 0.0) throw Error(ErrorCode::DegenerateCell, "closed forms need g > 0");
}

double sqrt_rate(double x) { return std::sqrt(std::max(x, 0.0)); }

}  // namespace

HermitianMatrix build_hamiltonian(const LatticeParams& params) {
    validate(params);
    const int n = params.n_cells;
    HermitianMatrix h(2 * static_cast<std::size_t>(n), one_excitation_basis(n));
    for (int i = 0; i < n; ++i) {
        h.set_diagonal(atom_slot(i), params.omega_a());
        h.set_diagonal(photon_slot(i), params.omega_c);
        h.set(atom_slot(i), photon_slot(i), params.g);
        for (int j = i + 1; j < n; ++j) h.set(photon_slot(i), photon_slot(j), -params.kappa);
    }
    return h;
}

double level_reference(const LatticeParams& params) noexcept {
    return params.n_cells == 1 ? -0.5 * params.delta : -params.delta;
}

// ------------------------------------------------------------------ two cells

StateVector TwoCellState::amplitudes() const {
    const double eps = sign_value(parity);
    StateVector v(4);
    v[atom_slot(0)] = w;
    v[photon_slot(0)] = u;
    v[atom_slot(1)] = -eps * w;
    v[photon_slot(1)] = -eps * u;
    return v;
}

std::string TwoCellState::id() const {
    auto c = [](Sign s) { return s == Sign::Plus ? '+' : '-'; };
    return std::string("two_cell(") + c(parity) + "," + c(branch) + ")";
}

std::array<TwoCellState, 4> two_cell_eigensystem(const LatticeParams& params) {
    validate(params);
    if (params.n_cells != 2) throw Error(ErrorCode::PreconditionViolated, "two-cell route needs N = 2");
    require_coupling(params);

    std::array<TwoCellState, 4> out;
    std::size_t k = 0;
    for (Sign parity : {Sign::Plus, Sign::Minus}) {
        const double eps = sign_value(parity);
        const double shifted = params.delta - eps * params.kappa;
        const double r = shifted / (2.0 * params.g);
        const auto [pp, pm] = quadratic_roots(r);
        const double split = std::sqrt(params.g * params.g + 0.25 * shifted * shifted);
        for (Sign branch : {Sign::Plus, Sign::Minus}) {
            const double p = branch == Sign::Plus ? pp : pm;
            const double den = std::sqrt(2.0 + 2.0 * p * p);
            TwoCellState s;
            s.parity = parity;
            s.branch = branch;
            s.r = r;
            s.u = p / den;
            s.w = 1.0 / den;
            s.level_energy = params.omega_c - 0.5 * shifted + sign_value(branch) * split;
            s.bohr_frequency = s.level_energy - level_reference(params);
            out[k++] = s;
        }
    }
    return out;
}

double two_cell_rate(const TwoCellState& s, const LatticeParams& params) {
    validate(params);
    if (params.n_cells != 2) throw Error(ErrorCode::PreconditionViolated, "two-cell rate needs N = 2");
    const double eps = sign_value(s.parity);
    const auto& d1 = params.damping[0];
    const auto& d2 = params.damping[1];
    const double w2 = s.w * s.w;
    const double u2 = s.u * s.u;
    const double cav = std::pow(sqrt_rate(d1.gamma_c) - eps * sqrt_rate(d2.gamma_c), 2);

    double rate;
    if (params.reservoir == ReservoirModel::IndependentAtomsCommonCavities) {
        if (params.identical_cells()) {
            rate = 2.0 * d1.gamma_a * w2 + (1.0 - eps) * (1.0 - eps) * d1.gamma_c * u2;
        } else {
            rate = (d1.gamma_a + d2.gamma_a) * w2 + cav * u2;
        }
    } else if (params.identical_cells()) {
        rate = (1.0 - eps) * (1.0 - eps) * (d1.gamma_a * w2 + d1.gamma_c * u2);
    } else if (d1.gamma_a == d2.gamma_c && d2.gamma_a == d1.gamma_c) {
        // u² + w² = ½ for every state, so the amplitudes drop out
        rate = 0.5 * std::pow(sqrt_rate(d1.gamma_a) - eps * sqrt_rate(d1.gamma_c), 2);
    } else {
        rate = std::pow(sqrt_rate(d1.gamma_a) - eps * sqrt_rate(d2.gamma_a), 2) * w2 + cav * u2;
    }
    return single::clamp_rate(rate);
}

// -------------------------------------------------------------------- N cells

NCellRoots n_cell_roots(const LatticeParams& params) {
    validate(params);
    require_coupling(params);
    NCellRoots r;
    r.r = (params.delta - params.kappa) / (2.0 * params.g);
    std::tie(r.p_plus, r.p_minus) = quadratic_roots(r.r);
    r.r_sym = (params.delta + (params.n_cells - 1) * params.kappa) / (2.0 * params.g);
    std::tie(r.q_plus, r.q_minus) = quadratic_roots(r.r_sym);
    return r;
}

std::string_view to_string(NCellKind kind) noexcept {
    switch (kind) {
        case NCellKind::AntisymmetricUpper: return "antisymmetric_upper";
        case NCellKind::AntisymmetricLower: return "antisymmetric_lower";
        case NCellKind::SymmetricPlus: return "symmetric_plus";
        case NCellKind::SymmetricMinus: return "symmetric_minus";
    }
    return "?";
}

std::string NCellEigenstate::id() const {
    switch (kind) {
        case NCellKind::SymmetricPlus: return "phi_plus";
        case NCellKind::SymmetricMinus: return "phi_minus";
        default: return "phi_" + std::to_string(index);
    }
}

std::vector<NCellEigenstate> n_cell_eigensystem(const LatticeParams& params) {
    validate(params);
    const int n = params.n_cells;
    if (n < 2) throw Error(ErrorCode::PreconditionViolated, "N-cell construction needs N >= 2");
    const NCellRoots roots = n_cell_roots(params);
    const std::size_t dim = 2 * static_cast<std::size_t>(n);
    const double ref = level_reference(params);

    const double shifted = params.delta - params.kappa;
    const double split = std::sqrt(params.g * params.g + 0.25 * shifted * shifted);
    const double upper_level = params.omega_c - 0.5 * shifted + split;
    const double lower_level = params.omega_c - 0.5 * shifted - split;

    std::vector<NCellEigenstate> out;
    out.reserve(dim);

    // The upper branch of the antisymmetric doublet carries atom weight p₋,
    // the lower branch p₊.
    auto antisym = [&](NCellKind kind, int index, int partner, bool paired, double p_a, double p_o,
                       double level) {
        NCellEigenstate s;
        s.kind = kind;
        s.index = index;
        s.partner_cell = partner;
        s.paired_form = paired;
        s.p_anchor = p_a;
        s.p_other = p_o;
        s.amplitudes.assign(dim, Complex{});
        s.amplitudes[atom_slot(0)] = p_a;
        s.amplitudes[photon_slot(0)] = -1.0;
        s.amplitudes[photon_slot(partner)] = 1.0;
        if (paired) {
            s.amplitudes[atom_slot(partner)] = -p_a;
            s.normalization = std::sqrt(2.0 * p_a * p_a + 2.0);
        } else {
            s.amplitudes[atom_slot(partner)] = 1.0 / p_o;
            s.normalization = std::sqrt(p_a * p_a + 1.0 / (p_o * p_o) + 2.0);
        }
        for (auto& c : s.amplitudes) c /= s.normalization;
        s.level_energy = level;
        s.bohr_frequency = level - ref;
        out.push_back(std::move(s));
    };

    for (int k = 1; k <= n - 1; ++k) {
        if (k == 1) {
            antisym(NCellKind::AntisymmetricUpper, k, n - 1, false, roots.p_minus, roots.p_plus, upper_level);
        } else {
            antisym(NCellKind::AntisymmetricUpper, k, k - 1, true, roots.p_minus, roots.p_plus, upper_level);
        }
    }
    for (int m = 0; m <= n - 2; ++m) {
        if (m == 0) {
            antisym(NCellKind::AntisymmetricLower, n, n - 1, false, roots.p_plus, roots.p_minus, lower_level);
        } else {
            antisym(NCellKind::AntisymmetricLower, n + m, m, true, roots.p_plus, roots.p_minus, lower_level);
        }
    }

    const double shifted_sym = params.delta + (n - 1) * params.kappa;
    const double split_sym = std::sqrt(params.g * params.g + 0.25 * shifted_sym * shifted_sym);
    for (Sign branch : {Sign::Plus, Sign::Minus}) {
        const double q = branch == Sign::Plus ? roots.q_plus : roots.q_minus;
        NCellEigenstate s;
        s.kind = branch == Sign::Plus ? NCellKind::SymmetricPlus : NCellKind::SymmetricMinus;
        s.p_anchor = 1.0 / q;
        s.p_other = branch == Sign::Plus ? roots.q_minus : roots.q_plus;
        s.normalization = std::sqrt(n / (q * q) + n);
        s.amplitudes.assign(dim, Complex{});
        for (int i = 0; i < n; ++i) {
            s.amplitudes[atom_slot(i)] = 1.0 / (q * s.normalization);
            s.amplitudes[photon_slot(i)] = 1.0 / s.normalization;
        }
        // q₊ > 0 pairs with the higher level
        s.level_energy = params.omega_c - 0.5 * shifted_sym + sign_value(branch) * split_sym;
        s.bohr_frequency = s.level_energy - ref;
        out.push_back(std::move(s));
    }
    return out;
}

double n_cell_rate(const NCellEigenstate& s, const LatticeParams& params) {
    validate(params);
    const int n = params.n_cells;
    const auto& d = params.damping;
    const bool common = params.reservoir == ReservoirModel::CommonAtomsCommonCavities;

    if (!s.antisymmetric()) {
        const double q = 1.0 / s.p_anchor;
        if (params.identical_cells()) {
            const double ga = d[0].gamma_a;
            const double gc = d[0].gamma_c;
            if (common) return single::clamp_rate(n * (ga + q * q * gc) / (1.0 + q * q));
            return single::clamp_rate((ga + q * q * n * gc) / (1.0 + q * q));
        }
        double sa = 0.0, sc = 0.0, ga_sum = 0.0;
        for (const auto& c : d) {
            sa += sqrt_rate(c.gamma_a);
            sc += sqrt_rate(c.gamma_c);
            ga_sum += c.gamma_a;
        }
        const double atoms = common ? sa * sa : ga_sum;
        return single::clamp_rate((atoms / (q * q) + sc * sc) / (s.normalization * s.normalization));
    }

    if (common && params.identical_cells()) return 0.0;  // decoherence-free

    const double pa = s.p_anchor;
    const double po = s.p_other;
    const auto& d0 = d[0];
    const auto& dk = d[static_cast<std::size_t>(s.partner_cell)];
    const double cav = std::pow(sqrt_rate(dk.gamma_c) - sqrt_rate(d0.gamma_c), 2);
    double atoms;
    if (common) {
        atoms = s.paired_form ? pa * pa * std::pow(sqrt_rate(d0.gamma_a) - sqrt_rate(dk.gamma_a), 2)
                              : std::pow(pa * sqrt_rate(d0.gamma_a) + sqrt_rate(dk.gamma_a) / po, 2);
    } else {
        atoms = s.paired_form ? pa * pa * (d0.gamma_a + dk.gamma_a)
                              : pa * pa * d0.gamma_a + dk.gamma_a / (po * po);
    }
    return single::clamp_rate((atoms + cav) / (s.normalization * s.normalization));
}

// ---------------------------------------------------------- unified surface

std::vector<LatticeEigenstate> closed_form_states(const LatticeParams& params, ClosedFormRoute route) {
    validate(params);
    std::vector<LatticeEigenstate> out;

    if (params.n_cells == 1) {
        const auto doublet = single::make_doublet(1, params.omega_c, params.g, params.delta);
        const auto rates = single::doublet_to_ground_rates(doublet.theta_n, params.damping[0]);
        for (auto branch : {single::Branch::Plus, single::Branch::Minus}) {
            const auto ds = single::dressed_state(branch, doublet.theta_n);
            LatticeEigenstate s;
            const bool plus = branch == single::Branch::Plus;
            s.id = plus ? "dressed(+,1)" : "dressed(-,1)";
            s.family = StateFamily::DressedSingle;
            s.level_energy = plus ? doublet.omega_plus : doublet.omega_minus;
            s.bohr_frequency = s.level_energy - level_reference(params);
            // dressed photon components carry a factor i relative to the lattice basis
            s.amplitudes = {ds[0], ds[1] * Complex{0.0, -1.0}};
            s.closed_form_rate = plus ? rates.plus : rates.minus;
            out.push_back(std::move(s));
        }
        return out;
    }

    if (params.n_cells == 2 && route == ClosedFormRoute::TwoCell) {
        for (const auto& t : two_cell_eigensystem(params)) {
            out.push_back({t.id(), StateFamily::TwoCell, t.bohr_frequency, t.level_energy, t.amplitudes(),
                           two_cell_rate(t, params)});
        }
        return out;
    }

    for (const auto& s : n_cell_eigensystem(params)) {
        out.push_back({s.id(), StateFamily::NCell, s.bohr_frequency, s.level_energy, s.amplitudes,
                       n_cell_rate(s, params)});
    }
    return out;
}

std::vector<LatticeEigenstate> numeric_states(const LatticeParams& params, const eigen::SolverConfig& cfg) {
    const auto eig = eigen::diagonalize(build_hamiltonian(params), cfg);
    const double ref = level_reference(params);
    std::vector<LatticeEigenstate> out;
    out.reserve(eig.dim());
    for (std::size_t k = 0; k < eig.dim(); ++k) {
        out.push_back({"numeric_" + std::to_string(k), StateFamily::Numeric, eig.eigenvalues[k],
                       eig.eigenvalues[k] + ref, eig.eigenvectors[k], std::nullopt});
    }
    return out;
}

// --------------------------------------------------------- entanglement/rates

WStateMetrics w_state_metrics(const StateVector& amplitudes, double tolerance) {
    if (amplitudes.empty() || amplitudes.size() % 2 != 0) {
        throw Error(ErrorCode::PreconditionViolated, "amplitudes must cover atom and photon slots of each cell");
    }
    const std::size_t cells = amplitudes.size() / 2;
    std::vector<double> cell_weight(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        cell_weight[c] = modulus_squared(amplitudes[2 * c]) + modulus_squared(amplitudes[2 * c + 1]);
    }
    const double max_cell = *std::max_element(cell_weight.begin(), cell_weight.end());
    if (!(max_cell > 0.0)) throw Error(ErrorCode::ZeroVector, "state has no weight");

    double lo = INFINITY, hi = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
        if (cell_weight[c] <= 1e-12 * max_cell) continue;
        for (std::size_t k = 2 * c; k < 2 * c + 2; ++k) {
            const double p = modulus_squared(amplitudes[k]);
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
    }
    WStateMetrics m;
    m.balance = lo / hi;
    m.maximally_entangled = std::abs(1.0 - m.balance) <= tolerance;
    return m;
}

std::string_view to_string(RateClass c) noexcept {
    switch (c) {
        case RateClass::Superradiant: return "superradiant";
        case RateClass::Subradiant: return "subradiant";
        case RateClass::Dark: return "dark";
    }
    return "?";
}

RateReport transition_rates(std::span<const LatticeEigenstate> states, const LatticeParams& params,
                            const ReportConfig& cfg) {
    validate(params);
    RateReport report;
    report.single_cell_rate = params.max_cell_rate();
    report.dark_threshold = cfg.dark_relative * report.single_cell_rate;
    report.entries.reserve(states.size());
    for (const auto& s : states) {
        if (s.amplitudes.size() != 2 * static_cast<std::size_t>(params.n_cells)) {
            throw Error(ErrorCode::BasisMismatch, "state " + s.id + " does not match the lattice size");
        }
        RateEntry e;
        e.state_id = s.id;
        e.bohr_frequency = s.bohr_frequency;
        e.level_energy = s.level_energy;
        e.rate = s.closed_form_rate ? *s.closed_form_rate
                                    : eigen::golden_rule_rate(s.amplitudes, params.damping, params.reservoir);
        if (report.single_cell_rate == 0.0 || e.rate < report.dark_threshold) {
            e.rate_class = RateClass::Dark;
        } else if (e.rate > report.single_cell_rate) {
            e.rate_class = RateClass::Superradiant;
        } else {
            e.rate_class = RateClass::Subradiant;
        }
        const auto m = w_state_metrics(s.amplitudes, cfg.entanglement_tolerance);
        e.entanglement_balance = m.balance;
        e.maximally_entangled = m.maximally_entangled;
        report.entries.push_back(std::move(e));
    }
    return report;
}

// ----------------------------------------------------- strong hopping limit

double StrongCouplingReport::max_deviation() const noexcept {
    return std::max({upper_first_deviation, upper_rest_deviation, lower_deviation, symmetric_deviation});
}

StrongCouplingReport strong_coupling_limit_check(const LatticeParams& params, std::span<const double> rates) {
    validate(params);
    if (params.reservoir != ReservoirModel::IndependentAtomsCommonCavities) {
        throw Error(ErrorCode::WrongReservoirModel, "strong-hopping limit applies to independent atomic reservoirs");
    }
    if (!params.identical_cells()) {
        throw Error(ErrorCode::PreconditionViolated, "strong-hopping limit needs identical cells");
    }
    const int n = params.n_cells;
    if (n < 2) throw Error(ErrorCode::PreconditionViolated, "strong-hopping limit needs N >= 2");
    if (rates.size() != 2 * static_cast<std::size_t>(n)) {
        throw Error(ErrorCode::DampingLengthMismatch, "expected 2N rates");
    }
    if (params.kappa == 0.0) throw Error(ErrorCode::PreconditionViolated, "strong-hopping limit needs kappa != 0");

    const double ga = params.damping[0].gamma_a;
    const double gc = params.damping[0].gamma_c;
    const auto roots = n_cell_roots(params);

    StrongCouplingReport rep;
    rep.coupling_ratio_squared = std::pow(params.g / params.kappa, 2);
    rep.upper_first_deviation = std::abs(rates[0]);
    for (int i = 2; i <= n - 1; ++i) {
        rep.upper_rest_deviation = std::max(rep.upper_rest_deviation, std::abs(rates[i - 1]));
    }
    for (int j = n; j <= 2 * n - 2; ++j) {
        rep.lower_deviation = std::max(rep.lower_deviation, std::abs(rates[j - 1] - ga));
    }
    const double qs[2] = {roots.q_plus, roots.q_minus};
    for (int b = 0; b < 2; ++b) {
        const double q2 = qs[b] * qs[b];
        const double limit = (ga + q2 * n * gc) / (1.0 + q2);
        rep.symmetric_deviation =
            std::max(rep.symmetric_deviation, std::abs(rates[2 * n - 2 + b] - limit));
    }
    return rep;
}

}  // namespace jcl::lattice
