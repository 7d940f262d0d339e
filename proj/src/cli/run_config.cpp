#include "jclattice/cli.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace jcl::cli {

namespace {

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view why) {
    throw Error(ErrorCode::PreconditionViolated,
                "config key '" + std::string(key) + "' = '" + std::string(value) + "': " + std::string(why));
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view v) {
    v = trim(v);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || ptr != v.data() + v.size()) bad(key, v, "not a number");
    return x;
}

template <class Int>
Int parse_int(std::string_view key, std::string_view v) {
    v = trim(v);
    Int x{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || ptr != v.data() + v.size()) bad(key, v, "not an integer");
    return x;
}

std::vector<double> parse_list(std::string_view key, std::string_view v) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= v.size()) {
        const auto comma = v.find(',', pos);
        const auto piece = v.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        out.push_back(parse_double(key, piece));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += fmt(v[i]);
    }
    return s;
}

ReservoirModel parse_reservoir(std::string_view key, std::string_view v) {
    if (v == "common") return ReservoirModel::CommonAtomsCommonCavities;
    if (v == "independent") return ReservoirModel::IndependentAtomsCommonCavities;
    bad(key, v, "expected common or independent");
}

lattice::ClosedFormRoute parse_route(std::string_view key, std::string_view v) {
    if (v == "two-cell") return lattice::ClosedFormRoute::TwoCell;
    if (v == "n-cell") return lattice::ClosedFormRoute::NCell;
    bad(key, v, "expected two-cell or n-cell");
}

}  // namespace

std::string_view to_string(lattice::ClosedFormRoute r) noexcept {
    return r == lattice::ClosedFormRoute::TwoCell ? "two-cell" : "n-cell";
}

LatticeParams lattice_params(const RunConfig& cfg) {
    if (cfg.cells < 1) throw Error(ErrorCode::EmptyLattice, "cells must be >= 1");
    auto expand = [&](const std::vector<double>& v, const char* name) {
        if (v.size() == 1) return std::vector<double>(static_cast<std::size_t>(cfg.cells), v[0]);
        if (v.size() != static_cast<std::size_t>(cfg.cells)) {
            throw Error(ErrorCode::DampingLengthMismatch,
                        std::string(name) + " needs 1 or " + std::to_string(cfg.cells) + " values");
        }
        return v;
    };
    const auto ga = expand(cfg.gamma_a, "gamma_a");
    const auto gc = expand(cfg.gamma_c, "gamma_c");
    LatticeParams p;
    p.n_cells = cfg.cells;
    p.omega_c = cfg.omega_c;
    p.delta = cfg.delta;
    p.g = cfg.g;
    p.kappa = cfg.kappa;
    p.reservoir = cfg.reservoir;
    p.damping.clear();
    for (std::size_t i = 0; i < ga.size(); ++i) p.damping.push_back({ga[i], gc[i]});
    validate(p);
    return p;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view raw) {
    const std::string_view v = trim(raw);
    if (key == "command") c.subcommand = std::string(v);
    else if (key == "cells") c.cells = parse_int<int>(key, v);
    else if (key == "omega_c") c.omega_c = parse_double(key, v);
    else if (key == "delta") c.delta = parse_double(key, v);
    else if (key == "g") c.g = parse_double(key, v);
    else if (key == "kappa") c.kappa = parse_double(key, v);
    else if (key == "gamma_a") c.gamma_a = parse_list(key, v);
    else if (key == "gamma_c") c.gamma_c = parse_list(key, v);
    else if (key == "reservoir") c.reservoir = parse_reservoir(key, v);
    else if (key == "route") c.route = parse_route(key, v);
    else if (key == "gamma") c.probe.gamma = parse_double(key, v);
    else if (key == "wmin") c.probe.wmin = v.empty() ? std::nullopt : std::optional(parse_double(key, v));
    else if (key == "wmax") c.probe.wmax = v.empty() ? std::nullopt : std::optional(parse_double(key, v));
    else if (key == "points") c.probe.points = parse_int<int>(key, v);
    else if (key == "frame") c.probe.frame = spectra::parse_line_frame(v);
    else if (key == "param") c.sweep.parameter = std::string(v);
    else if (key == "start") c.sweep.start = parse_double(key, v);
    else if (key == "stop") c.sweep.stop = parse_double(key, v);
    else if (key == "steps") c.sweep.steps = parse_int<int>(key, v);
    else if (key == "of") c.sweep.of = std::string(v);
    else if (key == "output") c.output.path = std::string(v);
    else if (key == "format") c.output.format = std::string(v);
    else if (key == "sidecar") c.output.sidecar = std::string(v);
    else if (key == "seed") c.seed = parse_int<std::uint64_t>(key, v);
    else if (key == "trials") c.trials = parse_int<int>(key, v);
    else bad(key, v, "unknown key");
}

std::string to_config_text(const RunConfig& c) {
    std::ostringstream os;
    auto kv = [&](const char* k, const std::string& v) { os << k << '=' << v << '\n'; };
    kv("command", c.subcommand);
    kv("cells", std::to_string(c.cells));
    kv("omega_c", fmt(c.omega_c));
    kv("delta", fmt(c.delta));
    kv("g", fmt(c.g));
    kv("kappa", fmt(c.kappa));
    kv("gamma_a", fmt_list(c.gamma_a));
    kv("gamma_c", fmt_list(c.gamma_c));
    kv("reservoir", std::string(to_string(c.reservoir)));
    kv("route", std::string(to_string(c.route)));
    kv("gamma", fmt(c.probe.gamma));
    kv("wmin", c.probe.wmin ? fmt(*c.probe.wmin) : std::string());
    kv("wmax", c.probe.wmax ? fmt(*c.probe.wmax) : std::string());
    kv("points", std::to_string(c.probe.points));
    kv("frame", std::string(spectra::to_string(c.probe.frame)));
    kv("param", c.sweep.parameter);
    kv("start", fmt(c.sweep.start));
    kv("stop", fmt(c.sweep.stop));
    kv("steps", std::to_string(c.sweep.steps));
    kv("of", c.sweep.of);
    kv("output", c.output.path);
    kv("format", c.output.format);
    kv("sidecar", c.output.sidecar);
    kv("seed", std::to_string(c.seed));
    kv("trials", std::to_string(c.trials));
    return os.str();
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const auto line = trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) bad(line, "", "expected key=value");
        apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return base;
}

unsigned thread_count() {
    const char* env = std::getenv("JC_LATTICE_THREADS");
    unsigned n = 0;
    if (env && *env) n = parse_int<unsigned>("JC_LATTICE_THREADS", env);
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

}  // namespace jcl::cli
