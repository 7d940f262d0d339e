// cli.hpp — run configuration and the jc_lattice command-line entry point.

#pragma once

#include "jclattice/core.hpp"
#include "jclattice/jc_lattice.hpp"
#include "jclattice/spectra.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jcl::cli {

inline constexpr int kSchemaVersion = 1;

struct ProbeConfig {
    double gamma{0.01};
    std::optional<double> wmin;  // default grid when either bound is unset
    std::optional<double> wmax;
    int points{4001};
    spectra::LineFrame frame{spectra::LineFrame::Level};

    friend bool operator==(const ProbeConfig&, const ProbeConfig&) = default;
};

struct SweepConfig {
    std::string parameter{"delta"};
    double start{0.0};
    double stop{0.0};
    int steps{1};
    std::string of{"rates"};

    friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct OutputConfig {
    std::string path;     // empty: stdout
    std::string format;   // csv | json, empty picks the subcommand default
    std::string sidecar;  // spectrum JSON sidecar, empty: <path>.json

    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RunConfig {
    std::string subcommand;
    int cells{1};
    double omega_c{0.0};
    double delta{0.0};
    double g{1.0};
    double kappa{0.0};
    std::vector<double> gamma_a{0.0};  // one value for every cell, or one per cell
    std::vector<double> gamma_c{0.0};
    ReservoirModel reservoir{ReservoirModel::CommonAtomsCommonCavities};
    lattice::ClosedFormRoute route{lattice::ClosedFormRoute::TwoCell};
    ProbeConfig probe;
    SweepConfig sweep;
    OutputConfig output;
    std::uint64_t seed{1};
    int trials{25};

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Expands per-cell damping and validates. Throws Error.
LatticeParams lattice_params(const RunConfig& cfg);

/// Flat key=value text; parse_config_text(to_config_text(c)) == c.
std::string to_config_text(const RunConfig& cfg);

/// Applies key=value lines on top of base. Blank lines and '#' comments are
/// skipped. Throws Error(PreconditionViolated) on unknown keys or bad values.
RunConfig parse_config_text(std::string_view text, RunConfig base = {});

/// Sets one named field from its textual value (keys as in the config file).
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

std::string_view to_string(lattice::ClosedFormRoute r) noexcept;

// Closed-form vs numeric agreement for one parameter point.
struct OracleDeviation {
    double energy{0.0};    // max |ω_closed − ω_numeric| / max(1, max|ω|)
    double subspace{0.0};  // max projector distance over degenerate blocks
    double rate{0.0};      // max |Γ_closed − golden rule|, per state and per block sum
    bool block_mismatch{false};
};

// Levels closer than this fraction of the spectral span are compared as one
// cluster.
inline constexpr double kClusterRelativeGap = 1e-3;

OracleDeviation compare_with_numeric(const LatticeParams& params, lattice::ClosedFormRoute route);

struct VerifyTolerances {
    double energy{1e-10};
    double subspace{1e-9};
    double rate{1e-12};
};

/// Worker count from JC_LATTICE_THREADS (unset or 0: hardware concurrency).
unsigned thread_count();

/// Runs one invocation. args excludes the program name.
/// Exit codes: 0 success, 1 verification failure, 2 configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jcl::cli
