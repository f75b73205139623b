#include "relaychain/quant_optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "relaychain/cutset_bounds.hpp"

namespace relaychain {

namespace {

struct Incumbent {
    double value = -std::numeric_limits<double>::infinity();
    double q1 = 0.0;
    double q2 = 0.0;
};

// Evaluates a full cross grid of log10-coordinates, ascending in (q1, q2) so
// that with strict improvement the incumbent is the lexicographically
// smallest among ties.
void evaluate_grid(const ChainParams& p, const std::vector<double>& log_q1,
                   const std::vector<double>& log_q2, Incumbent& best, long long& evals) {
    for (double lq1 : log_q1) {
        const double q1 = std::pow(10.0, lq1);
        for (double lq2 : log_q2) {
            const double q2 = std::pow(10.0, lq2);
            const double value = nnc_rates_closed(p, {q1, q2}).r_min;
            ++evals;
            if (value > best.value) {
                best = {value, q1, q2};
            }
        }
    }
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) {
        out[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    }
    return out;
}

}  // namespace

OptResult optimize_quant(const ChainParams& p, const GridSpec& grid) {
    if (auto violation = validate(p)) {
        throw std::invalid_argument("optimize_quant: " + *violation);
    }
    if (!(grid.q_lo > 0.0) || !(grid.q_hi > grid.q_lo) || grid.points_per_decade < 4) {
        throw EmptyGrid("optimize_quant: need 0 < q_lo < q_hi and points_per_decade >= 4");
    }

    const double lo = std::log10(grid.q_lo);
    const double hi = std::log10(grid.q_hi);
    const int coarse_count = static_cast<int>(std::ceil((hi - lo) * grid.points_per_decade)) + 1;
    const std::vector<double> coarse = linspace(lo, hi, coarse_count);

    Incumbent best;
    long long evals = 0;
    evaluate_grid(p, coarse, coarse, best, evals);

    // Refinement: 5x5 sub-grids centered on the incumbent, half-width one
    // coarse cell to start, shrinking by 4x per level. Stops when the
    // bracket per coordinate is below 1e-4 relative width or depth 12.
    double half_width = coarse_count > 1 ? (hi - lo) / (coarse_count - 1) : 0.0;
    int depth = 0;
    while (depth < 12 && half_width > 0.0 &&
           std::pow(10.0, 2.0 * half_width) - 1.0 >= 1e-4) {
        ++depth;
        const double c1 = std::log10(best.q1);
        const double c2 = std::log10(best.q2);
        const std::vector<double> sub1 =
            linspace(std::max(lo, c1 - half_width), std::min(hi, c1 + half_width), 5);
        const std::vector<double> sub2 =
            linspace(std::max(lo, c2 - half_width), std::min(hi, c2 + half_width), 5);
        evaluate_grid(p, sub1, sub2, best, evals);
        half_width /= 4.0;
    }

    OptResult res;
    res.q1_opt = best.q1;
    res.q2_opt = best.q2;
    res.rate_opt = best.value;
    res.gap_at_opt = cutset_bound(p).c_min - best.value;
    res.grid_stats.evaluations = evals;
    res.grid_stats.refinement_depth = depth;
    return res;
}

std::vector<UnboundednessRecord> unboundedness_sweep(double h1_sq,
                                                     const std::vector<double>& rho12_values,
                                                     const GridSpec& grid) {
    std::vector<UnboundednessRecord> records;
    records.reserve(rho12_values.size());
    for (double rho : rho12_values) {
        const ChainParams p = scenario_params(h1_sq, rho);
        const OptResult opt = optimize_quant(p, grid);
        records.push_back({rho, cutset_bound(p).c_min, opt.rate_opt, opt.gap_at_opt});
    }
    return records;
}

}  // namespace relaychain
