#include "jclattice/cli.hpp"

#include "jclattice/eigensolver.hpp"

#include <algorithm>
#include <cmath>

namespace jcl::cli {

OracleDeviation compare_with_numeric(const LatticeParams& params, lattice::ClosedFormRoute route) {
    auto closed = lattice::closed_form_states(params, route);
    std::stable_sort(closed.begin(), closed.end(),
                     [](const auto& a, const auto& b) { return a.bohr_frequency < b.bohr_frequency; });
    const auto eig = eigen::diagonalize(lattice::build_hamiltonian(params));
    const auto numeric_rates = eigen::golden_rule_rates_numeric(eig, params.damping, params.reservoir);
    const auto op = eigen::rate_operator(params.damping, params.reservoir);

    OracleDeviation dev;
    double scale = 1.0;
    for (double e : eig.eigenvalues) scale = std::max(scale, std::abs(e));
    if (closed.size() != eig.dim()) {
        dev.block_mismatch = true;
        return dev;
    }
    for (std::size_t k = 0; k < closed.size(); ++k) {
        dev.energy = std::max(dev.energy, std::abs(closed[k].bohr_frequency - eig.eigenvalues[k]) / scale);
        if (closed[k].closed_form_rate) {
            const double generic = eigen::golden_rule_rate(closed[k].amplitudes, params.damping, params.reservoir);
            dev.rate = std::max(dev.rate, std::abs(*closed[k].closed_form_rate - generic));
        }
    }

    // Closed-form vectors inside a degenerate block need not be orthogonal,
    // and numeric vectors of nearly degenerate levels are only fixed to
    // eps·‖H‖/gap, so clusters are compared through their spans.
    for (const auto& block : eigen::group_degenerate(eig.eigenvalues, kClusterRelativeGap)) {
        std::vector<StateVector> a, b;
        double numeric_sum = 0.0;
        for (std::size_t k = block.begin; k < block.end; ++k) {
            a.push_back(closed[k].amplitudes);
            b.push_back(eig.eigenvectors[k]);
            numeric_sum += numeric_rates[k];
        }
        const auto ortho = eigen::orthonormal_basis(a);
        if (ortho.size() != block.size()) {
            dev.block_mismatch = true;
            continue;
        }
        dev.subspace = std::max(dev.subspace, eigen::projector_distance(a, b));
        double closed_sum = 0.0;
        for (const auto& v : ortho) closed_sum += eigen::golden_rule_rate(v, params.damping, params.reservoir);
        dev.rate = std::max(dev.rate, std::abs(closed_sum - numeric_sum));
        dev.rate = std::max(dev.rate, eigen::compressed_operator_distance(a, b, op));
    }
    return dev;
}

}  // namespace jcl::cli
