// spectra.hpp — weak-probe absorption spectrum as a sum of Lorentzian lines,
// peak extraction and the mirror-symmetry witness about ω_c.

#pragma once

#include "jclattice/core.hpp"
#include "jclattice/jc_lattice.hpp"

#include <string>
#include <vector>

namespace jcl::spectra {

struct SpectralLine {
    double frequency{0.0};  // line position on the probe axis
    double rate{0.0};       // Γ of the transition, >= 0
    std::string origin;     // state id
};

// Level places lines at the closed-form level energies (the ω − ω_c axis the
// published spectra use); Bohr places them at excitation frequencies above
// the ground state.
enum class LineFrame { Level, Bohr };

std::string_view to_string(LineFrame f) noexcept;
LineFrame parse_line_frame(std::string_view s);

/// One line per non-dark entry of a rate report. Only transitions into the
/// ground state are included.
std::vector<SpectralLine> lines_from_report(const lattice::RateReport& report, LineFrame frame = LineFrame::Level);

struct FrequencyGrid {
    double omega_min{0.0};
    double omega_max{0.0};
    int points{4001};

    std::vector<double> values() const;
};

/// ω_c ± (2·max|ω_line − ω_c| + 10γ), 4001 points.
FrequencyGrid default_grid(const std::vector<SpectralLine>& lines, double omega_c, double gamma);

struct SpectrumSamples {
    std::vector<double> grid;    // probe frequencies ω_p, strictly increasing
    std::vector<double> values;  // Im χ(ω_p)
    double probe_width{0.0};
    std::vector<std::string> warnings;
};

/// Im χ(ω_p) = Σ γΓ/((ω_line − ω_p)² + γ²). threads = 0 picks the hardware
/// concurrency; the result does not depend on it.
SpectrumSamples susceptibility(const std::vector<SpectralLine>& lines, double gamma, const FrequencyGrid& grid,
                               unsigned threads = 1);

struct Peak {
    double position{0.0};
    double height{0.0};
};

/// 3-point local maxima refined with a parabola through the peak triple.
std::vector<Peak> find_peaks(const SpectrumSamples& samples);

/// Pairs each peak at center+δ with the nearest one at center−δ (within
/// 3γ); returns max |h₁ − h₂|/(h₁ + h₂), or 1 if any peak is unpaired.
/// Throws NoPeaks on an empty list.
double symmetry_witness(const std::vector<Peak>& peaks, double center, double gamma);

}  // namespace jcl::spectra
