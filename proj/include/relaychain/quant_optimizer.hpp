#pragma once

#include <vector>

#include "relaychain/chain_model.hpp"
#include "relaychain/nnc_rates.hpp"

namespace relaychain {

/// Log-spaced search box for the two quantization levels.
struct GridSpec {
    double q_lo = 1e-4;
    double q_hi = 1e4;
    int points_per_decade = 6;  // coarse pass resolution, at least 4
};

struct GridStats {
    long long evaluations = 0;
    int refinement_depth = 0;
};

/// Maximizer of the min-cut NNC rate over (q1, q2).
struct OptResult {
    double q1_opt = 0.0;
    double q2_opt = 0.0;
    double rate_opt = 0.0;    // min-cut NNC rate at the maximizer, bits
    double gap_at_opt = 0.0;  // cut-set minimum minus rate_opt
    GridStats grid_stats;
};

/// Coarse log-grid search followed by successive 5x5 sub-grid refinement
/// around the incumbent (bracket shrinks by 4x per level). Deterministic for
/// a fixed GridSpec; ties break toward smaller (q1, q2). Throws EmptyGrid on
/// invalid bounds or resolution.
OptResult optimize_quant(const ChainParams& p, const GridSpec& grid = {});

/// One row of the diverging-gap demonstration.
struct UnboundednessRecord {
    double rho12 = 0.0;
    double c_min = 0.0;
    double rate_opt = 0.0;
    double gap_at_opt = 0.0;
};

/// Runs optimize_quant over scenario_params(h1_sq, rho) for each rho in
/// rho12_values and reports the optimized rate and its gap per point.
std::vector<UnboundednessRecord> unboundedness_sweep(double h1_sq,
                                                     const std::vector<double>& rho12_values,
                                                     const GridSpec& grid = {});

}  // namespace relaychain
