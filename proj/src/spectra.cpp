#include "jclattice/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

namespace jcl::spectra {

std::string_view to_string(LineFrame f) noexcept { return f == LineFrame::Level ? "level" : "bohr"; }

LineFrame parse_line_frame(std::string_view s) {
    if (s == "level") return LineFrame::Level;
    if (s == "bohr") return LineFrame::Bohr;
    throw Error(ErrorCode::PreconditionViolated, "unknown line frame '" + std::string(s) + "'");
}

std::vector<SpectralLine> lines_from_report(const lattice::RateReport& report, LineFrame frame) {
    std::vector<SpectralLine> lines;
    for (const auto& e : report.entries) {
        if (e.rate_class == lattice::RateClass::Dark) continue;
        lines.push_back({frame == LineFrame::Level ? e.level_energy : e.bohr_frequency, e.rate, e.state_id});
    }
    return lines;
}

std::vector<double> FrequencyGrid::values() const {
    if (points < 2) throw Error(ErrorCode::PreconditionViolated, "grid needs at least 2 points");
    if (!std::isfinite(omega_min) || !std::isfinite(omega_max) || !(omega_max > omega_min)) {
        throw Error(ErrorCode::PreconditionViolated, "grid needs finite omega_min < omega_max");
    }
    std::vector<double> v(static_cast<std::size_t>(points));
    const double h = (omega_max - omega_min) / (points - 1);
    for (int i = 0; i < points; ++i) v[i] = omega_min + i * h;
    v.back() = omega_max;
    return v;
}

FrequencyGrid default_grid(const std::vector<SpectralLine>& lines, double omega_c, double gamma) {
    double reach = 0.0;
    for (const auto& l : lines) reach = std::max(reach, std::abs(l.frequency - omega_c));
    const double half = 2.0 * reach + 10.0 * gamma;
    return {omega_c - half, omega_c + half, 4001};
}

SpectrumSamples susceptibility(const std::vector<SpectralLine>& lines, double gamma, const FrequencyGrid& grid,
                               unsigned threads) {
    if (lines.empty()) throw Error(ErrorCode::EmptyLineList, "no lines to synthesize");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw Error(ErrorCode::NonPositiveWidth, "probe width must be > 0");
    for (const auto& l : lines) {
        if (!std::isfinite(l.frequency) || !std::isfinite(l.rate)) {
            throw Error(ErrorCode::NonFinite, "line " + l.origin + " is not finite");
        }
        if (l.rate < 0.0) throw Error(ErrorCode::NegativeRate, "line " + l.origin + " has a negative rate");
    }

    SpectrumSamples out;
    out.grid = grid.values();
    out.values.assign(out.grid.size(), 0.0);
    out.probe_width = gamma;

    std::vector<double> freqs;
    for (const auto& l : lines) freqs.push_back(l.frequency);
    std::sort(freqs.begin(), freqs.end());
    for (std::size_t i = 1; i < freqs.size(); ++i) {
        const double gap = freqs[i] - freqs[i - 1];
        const double scale = std::max({std::abs(freqs[i]), std::abs(freqs[i - 1]), gamma});
        // coincident lines are one transition, not an overlap
        if (gap > 1e-9 * scale && gap < 5.0 * gamma) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "lines at %.6g and %.6g are closer than 5 gamma", freqs[i - 1], freqs[i]);
            out.warnings.emplace_back(buf);
        }
    }

    const double g2 = gamma * gamma;
    auto eval = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const double wp = out.grid[k];
            double acc = 0.0;
            for (const auto& l : lines) {
                const double d = l.frequency - wp;
                acc += gamma * l.rate / (d * d + g2);
            }
            out.values[k] = acc;
        }
    };

    const std::size_t n = out.grid.size();
    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        eval(0, n);
        return out;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t b = 0; b < n; b += chunk) pool.emplace_back(eval, b, std::min(n, b + chunk));
    pool.clear();
    return out;
}

std::vector<Peak> find_peaks(const SpectrumSamples& s) {
    if (s.grid.size() < 3 || s.values.size() != s.grid.size()) {
        throw Error(ErrorCode::PreconditionViolated, "find_peaks needs >= 3 matching samples");
    }
    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < s.values.size(); ++i) {
        const double a = s.values[i - 1], b = s.values[i], c = s.values[i + 1];
        if (!(b > a && b >= c)) continue;
        const double den = a - 2.0 * b + c;
        const double p = den != 0.0 ? 0.5 * (a - c) / den : 0.0;
        const double h = 0.5 * (s.grid[i + 1] - s.grid[i - 1]);
        peaks.push_back({s.grid[i] + p * h, b - 0.25 * (a - c) * p});
    }
    return peaks;
}

double symmetry_witness(const std::vector<Peak>& peaks, double center, double gamma) {
    if (peaks.empty()) throw Error(ErrorCode::NoPeaks, "no peaks to compare");
    if (!(gamma > 0.0)) throw Error(ErrorCode::NonPositiveWidth, "pairing tolerance needs gamma > 0");
    double score = 0.0;
    for (const auto& pk : peaks) {
        const double mirror = 2.0 * center - pk.position;
        const Peak* best = nullptr;
        double best_d = INFINITY;
        for (const auto& q : peaks) {
            const double d = std::abs(q.position - mirror);
            if (d < best_d) {
                best_d = d;
                best = &q;
            }
        }
        if (best_d > 3.0 * gamma) return 1.0;
        const double sum = pk.height + best->height;
        if (sum > 0.0) score = std::max(score, std::abs(pk.height - best->height) / sum);
    }
    return score;
}

}  // namespace jcl::spectra
