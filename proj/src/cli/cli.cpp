#include "jclattice/cli.hpp"

#include "jclattice/eigensolver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

namespace jcl::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Json complex_array(const StateVector& v) {
    Json a = Json::array();
    for (const auto& c : v) a.push_back({c.real(), c.imag()});
    return a;
}

Json params_json(const LatticeParams& p) {
    Json damping = Json::array();
    for (const auto& d : p.damping) damping.push_back({{"gamma_a", d.gamma_a}, {"gamma_c", d.gamma_c}});
    return {{"cells", p.n_cells}, {"omega_c", p.omega_c}, {"delta", p.delta}, {"g", p.g},
            {"kappa", p.kappa},   {"reservoir", std::string(to_string(p.reservoir))}, {"damping", damping}};
}

Json basis_json(int n) {
    Json a = Json::array();
    for (const auto& l : one_excitation_basis(n)) a.push_back(to_string(l));
    return a;
}

Json document(std::string_view command, const LatticeParams& p) {
    return {{"schema_version", kSchemaVersion}, {"command", std::string(command)}, {"params", params_json(p)}};
}

// ------------------------------------------------------------------ eigen

Json eigen_document(const RunConfig& cfg) {
    const auto p = lattice_params(cfg);
    Json doc = document("eigen", p);
    doc["basis"] = basis_json(p.n_cells);
    Json closed = Json::array();
    if (p.g > 0.0 || p.n_cells == 1) {
        for (const auto& s : lattice::closed_form_states(p, cfg.route)) {
            closed.push_back({{"id", s.id},
                              {"bohr_frequency", s.bohr_frequency},
                              {"level_energy", s.level_energy},
                              {"amplitudes", complex_array(s.amplitudes)}});
        }
    }
    doc["closed_form"] = closed;
    const auto eig = eigen::diagonalize(lattice::build_hamiltonian(p));
    Json vecs = Json::array();
    for (const auto& v : eig.eigenvectors) vecs.push_back(complex_array(v));
    doc["numeric"] = {{"eigenvalues", eig.eigenvalues}, {"eigenvectors", vecs}};
    return doc;
}

// ------------------------------------------------------------------ rates

lattice::RateReport closed_report(const RunConfig& cfg, const LatticeParams& p) {
    const auto states = lattice::closed_form_states(p, cfg.route);
    return lattice::transition_rates(states, p);
}

Json rates_document(const RunConfig& cfg) {
    const auto p = lattice_params(cfg);
    const auto report = closed_report(cfg, p);
    Json doc = document("rates", p);
    doc["single_cell_rate"] = report.single_cell_rate;
    doc["dark_threshold"] = report.dark_threshold;
    Json states = Json::array();
    std::map<std::string, int> counts{{"dark", 0}, {"subradiant", 0}, {"superradiant", 0}};
    for (const auto& e : report.entries) {
        states.push_back({{"id", e.state_id},
                          {"bohr_frequency", e.bohr_frequency},
                          {"level_energy", e.level_energy},
                          {"rate", e.rate},
                          {"class", std::string(to_string(e.rate_class))},
                          {"entanglement_balance", e.entanglement_balance},
                          {"maximally_entangled", e.maximally_entangled}});
        ++counts[std::string(to_string(e.rate_class))];
    }
    doc["states"] = states;
    doc["counts"] = counts;
    return doc;
}

// --------------------------------------------------------------- spectrum

struct SpectrumResult {
    spectra::SpectrumSamples samples;
    std::vector<spectra::SpectralLine> lines;
    std::vector<spectra::Peak> peaks;
    std::optional<double> witness;
    double center{0.0};
    LatticeParams params;
};

SpectrumResult compute_spectrum(const RunConfig& cfg, unsigned threads) {
    SpectrumResult r;
    r.params = lattice_params(cfg);
    const auto report = closed_report(cfg, r.params);
    r.lines = spectra::lines_from_report(report, cfg.probe.frame);
    // ω_c on the level axis; the same point sits at ω_c − reference on the Bohr axis
    r.center = cfg.probe.frame == spectra::LineFrame::Level ? r.params.omega_c
                                                            : r.params.omega_c - lattice::level_reference(r.params);
    auto grid = spectra::default_grid(r.lines, r.center, cfg.probe.gamma);
    if (cfg.probe.wmin) grid.omega_min = *cfg.probe.wmin;
    if (cfg.probe.wmax) grid.omega_max = *cfg.probe.wmax;
    grid.points = cfg.probe.points;
    r.samples = spectra::susceptibility(r.lines, cfg.probe.gamma, grid, threads);
    r.peaks = spectra::find_peaks(r.samples);
    if (!r.peaks.empty()) r.witness = spectra::symmetry_witness(r.peaks, r.center, cfg.probe.gamma);
    return r;
}

std::string spectrum_csv(const SpectrumResult& r) {
    std::string s = "omega_c_minus_omega_p,im_chi\n";
    const auto& g = r.samples.grid;
    for (std::size_t k = g.size(); k-- > 0;) {
        s += fmt(r.params.omega_c - g[k]);
        s += ',';
        s += fmt(r.samples.values[k]);
        s += '\n';
    }
    return s;
}

Json spectrum_document(const RunConfig& cfg, const SpectrumResult& r) {
    Json doc = document("spectrum", r.params);
    doc["frame"] = std::string(spectra::to_string(cfg.probe.frame));
    doc["probe_width"] = r.samples.probe_width;
    doc["grid"] = {{"omega_min", r.samples.grid.front()},
                   {"omega_max", r.samples.grid.back()},
                   {"points", r.samples.grid.size()}};
    Json lines = Json::array();
    for (const auto& l : r.lines) lines.push_back({{"origin", l.origin}, {"frequency", l.frequency}, {"rate", l.rate}});
    doc["lines"] = lines;
    Json peaks = Json::array();
    for (const auto& pk : r.peaks) {
        peaks.push_back({{"omega_p", pk.position},
                         {"omega_c_minus_omega_p", r.params.omega_c - pk.position},
                         {"height", pk.height}});
    }
    doc["peaks"] = peaks;
    doc["symmetry_center"] = r.center;
    doc["symmetry_witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
    doc["warnings"] = r.samples.warnings;
    return doc;
}

// ------------------------------------------------------------------ verify

struct VerifyOutcome {
    OracleDeviation worst;
    int cases{0};
    // case with the largest deviation relative to its tolerance
    LatticeParams worst_case;
    double worst_ratio{-1.0};
};

LatticeParams random_params(int n, std::mt19937_64& rng, int trial) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    LatticeParams p;
    p.n_cells = n;
    p.omega_c = 4.0 * unit(rng) - 2.0;
    p.g = 0.2 + 2.0 * unit(rng);
    p.delta = 10.0 * unit(rng) - 5.0;
    p.kappa = n == 1 ? 0.0 : 6.0 * unit(rng) - 3.0;
    p.reservoir = trial % 2 == 0 ? ReservoirModel::CommonAtomsCommonCavities
                                 : ReservoirModel::IndependentAtomsCommonCavities;
    p.damping.clear();
    const CellDamping shared{0.1 * unit(rng), 0.1 * unit(rng)};
    const bool identical = (trial / 2) % 2 == 0;
    for (int i = 0; i < n; ++i) {
        p.damping.push_back(identical ? shared : CellDamping{0.1 * unit(rng), 0.1 * unit(rng)});
    }
    return p;
}

void merge(OracleDeviation& into, const OracleDeviation& d) {
    into.energy = std::max(into.energy, d.energy);
    into.subspace = std::max(into.subspace, d.subspace);
    into.rate = std::max(into.rate, d.rate);
    into.block_mismatch = into.block_mismatch || d.block_mismatch;
}

VerifyOutcome run_verify(const RunConfig& cfg) {
    VerifyOutcome out;
    std::vector<LatticeParams> cases;
    const auto base = lattice_params(cfg);
    if (base.n_cells == 1 || base.g > 0.0) cases.push_back(base);
    std::mt19937_64 rng(cfg.seed);
    for (int t = 0; t < cfg.trials; ++t) cases.push_back(random_params(base.n_cells, rng, t));
    const VerifyTolerances tol;
    for (const auto& p : cases) {
        OracleDeviation d = compare_with_numeric(p, lattice::ClosedFormRoute::TwoCell);
        if (p.n_cells == 2) merge(d, compare_with_numeric(p, lattice::ClosedFormRoute::NCell));
        merge(out.worst, d);
        const double ratio = d.block_mismatch ? INFINITY
                                              : std::max({d.energy / tol.energy, d.subspace / tol.subspace,
                                                          d.rate / tol.rate});
        if (ratio > out.worst_ratio) {
            out.worst_ratio = ratio;
            out.worst_case = p;
        }
        ++out.cases;
    }
    return out;
}

// ------------------------------------------------------------------- sweep

void set_swept(RunConfig& cfg, const std::string& name, double v) {
    if (name == "delta") cfg.delta = v;
    else if (name == "kappa") cfg.kappa = v;
    else if (name == "g") cfg.g = v;
    else if (name == "omega_c") cfg.omega_c = v;
    else if (name == "gamma_a") cfg.gamma_a = {v};
    else if (name == "gamma_c") cfg.gamma_c = {v};
    else if (name == "gamma") cfg.probe.gamma = v;
    else throw Error(ErrorCode::PreconditionViolated, "cannot sweep '" + name + "'");
}

struct SweepRow {
    double value{0.0};
    Json doc;
    std::vector<std::pair<std::string, double>> summary;
};

SweepRow sweep_point(RunConfig cfg, double value) {
    set_swept(cfg, cfg.sweep.parameter, value);
    SweepRow row;
    row.value = value;
    if (cfg.sweep.of == "eigen") {
        row.doc = eigen_document(cfg);
        const auto& vals = row.doc["numeric"]["eigenvalues"];
        for (std::size_t k = 0; k < vals.size(); ++k) row.summary.emplace_back("omega_" + std::to_string(k), vals[k]);
    } else if (cfg.sweep.of == "rates") {
        row.doc = rates_document(cfg);
        for (const auto& s : row.doc["states"]) row.summary.emplace_back(s["id"], s["rate"]);
    } else if (cfg.sweep.of == "spectrum") {
        const auto r = compute_spectrum(cfg, 1);
        row.doc = spectrum_document(cfg, r);
        row.summary.emplace_back("symmetry_witness", r.witness ? *r.witness : NAN);
        row.summary.emplace_back("peak_count", static_cast<double>(r.peaks.size()));
    } else {
        throw Error(ErrorCode::PreconditionViolated, "sweep --of must be eigen, rates or spectrum");
    }
    return row;
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg) {
    if (cfg.sweep.steps < 1) throw Error(ErrorCode::PreconditionViolated, "sweep needs steps >= 1");
    const int n = cfg.sweep.steps;
    std::vector<double> values(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        values[i] = n == 1 ? cfg.sweep.start : cfg.sweep.start + (cfg.sweep.stop - cfg.sweep.start) * i / (n - 1);
    }
    // validate the swept parameter before spawning work
    RunConfig probe = cfg;
    set_swept(probe, cfg.sweep.parameter, cfg.sweep.start);

    std::vector<SweepRow> rows(values.size());
    const unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(n));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < values.size();) rows[i] = sweep_point(cfg, values[i]);
    };
    std::vector<std::future<void>> pool;
    for (unsigned w = 1; w < workers; ++w) pool.push_back(std::async(std::launch::async, work));
    work();
    for (auto& f : pool) f.get();  // rethrows worker errors
    return rows;
}

std::string sweep_csv(const RunConfig& cfg, const std::vector<SweepRow>& rows) {
    std::string s = "index," + cfg.sweep.parameter;
    for (const auto& [name, _] : rows.front().summary) s += "," + name;
    s += '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        s += std::to_string(i) + "," + fmt(rows[i].value);
        for (const auto& [_, v] : rows[i].summary) s += "," + fmt(v);
        s += '\n';
    }
    return s;
}

// ------------------------------------------------------------------ output

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::PreconditionViolated, "cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw Error(ErrorCode::PreconditionViolated, "write to '" + path + "' failed");
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::PreconditionViolated, "cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::string& cmd = cfg.subcommand;
    std::string format = cfg.output.format;
    if (!format.empty() && format != "csv" && format != "json") {
        throw Error(ErrorCode::PreconditionViolated, "format must be csv or json");
    }

    if (cmd == "eigen") {
        emit(cfg.output.path, json_text(eigen_document(cfg)), out);
    } else if (cmd == "rates") {
        emit(cfg.output.path, json_text(rates_document(cfg)), out);
    } else if (cmd == "spectrum") {
        const auto r = compute_spectrum(cfg, thread_count());
        for (const auto& w : r.samples.warnings) err << "warning: " << w << '\n';
        const auto doc = spectrum_document(cfg, r);
        if (format == "json") {
            emit(cfg.output.path, json_text(doc), out);
        } else {
            emit(cfg.output.path, spectrum_csv(r), out);
            std::string sidecar = cfg.output.sidecar;
            if (sidecar.empty() && !cfg.output.path.empty() && cfg.output.path != "-") {
                sidecar = cfg.output.path + ".json";
            }
            if (!sidecar.empty()) emit(sidecar, json_text(doc), out);
        }
    } else if (cmd == "sweep") {
        const auto rows = run_sweep(cfg);
        if (format == "csv") {
            emit(cfg.output.path, sweep_csv(cfg, rows), out);
        } else {
            Json doc = {{"schema_version", kSchemaVersion},
                        {"command", "sweep"},
                        {"of", cfg.sweep.of},
                        {"parameter", cfg.sweep.parameter}};
            Json arr = Json::array();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                arr.push_back({{"index", i}, {"value", rows[i].value}, {"result", rows[i].doc}});
            }
            doc["rows"] = arr;
            emit(cfg.output.path, json_text(doc), out);
        }
    } else if (cmd == "verify") {
        const VerifyTolerances tol;
        const auto v = run_verify(cfg);
        const bool ok = !v.worst.block_mismatch && v.worst.energy <= tol.energy &&
                        v.worst.subspace <= tol.subspace && v.worst.rate <= tol.rate;
        char buf[512];
        std::snprintf(buf, sizeof buf,
                      "cases %d\nmax energy deviation   %.3e (tol %.0e)\nmax subspace deviation %.3e (tol %.0e)\n"
                      "max rate deviation     %.3e (tol %.0e)\nblock mismatch         %s\n%s\n",
                      v.cases, v.worst.energy, tol.energy, v.worst.subspace, tol.subspace, v.worst.rate, tol.rate,
                      v.worst.block_mismatch ? "yes" : "no", ok ? "PASS" : "FAIL");
        out << buf;
        if (!ok) out << "worst case " << params_json(v.worst_case).dump() << '\n';
        return ok ? 0 : 1;
    } else {
        throw Error(ErrorCode::PreconditionViolated, "unknown subcommand '" + cmd + "'");
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coupled Jaynes-Cummings cells: eigenstates, decay rates and probe spectra", "jc_lattice"};
    app.require_subcommand(1);

    // flag name -> config key; values are kept as text and applied after the
    // config file so command-line flags win
    const std::vector<std::pair<std::string, std::string>> flags = {
        {"--cells", "cells"},     {"--omega-c", "omega_c"}, {"--delta", "delta"},     {"--g", "g"},
        {"--kappa", "kappa"},     {"--gamma-a", "gamma_a"}, {"--gamma-c", "gamma_c"}, {"--reservoir", "reservoir"},
        {"--route", "route"},     {"--gamma", "gamma"},     {"--wmin", "wmin"},       {"--wmax", "wmax"},
        {"--points", "points"},   {"--frame", "frame"},     {"--output,-o", "output"}, {"--format", "format"},
        {"--sidecar", "sidecar"}, {"--seed", "seed"},       {"--trials", "trials"},   {"--param", "param"},
        {"--start", "start"},     {"--stop", "stop"},       {"--steps", "steps"},     {"--of", "of"},
    };
    std::vector<std::string> values(flags.size());
    std::vector<CLI::Option*> options;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        options.push_back(app.add_option(flags[i].first, values[i], "sets '" + flags[i].second + "'"));
    }
    std::string config_path;
    app.add_option("--config", config_path, "flat key=value file; flags override it");

    for (const char* name : {"eigen", "rates", "spectrum", "sweep", "verify"}) {
        app.add_subcommand(name)->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = parse_config_text(read_file(config_path), cfg);
        for (std::size_t i = 0; i < flags.size(); ++i) {
            if (options[i]->count() > 0) apply_setting(cfg, flags[i].second, values[i]);
        }
        cfg.subcommand = app.get_subcommands().front()->get_name();
        return dispatch(cfg, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace jcl::cli
