#pragma once

#include <utility>

#include "relaychain/chain_model.hpp"

namespace relaychain {

/// Outcome of the concatenated scheme: the first relay quantizes for the
/// second, the second decodes and re-encodes for the destination.
struct ConcatResult {
    double rate = 0.0;                          // min of the three terms below
    double q1_star = 0.0;                       // 1 - rho12^2, the equalizing level
    std::pair<double, double> stage1_terms{0.0, 0.0};
    double stage2_term = 0.0;                   // last-hop decode-and-forward rate
    double gap_bound = 0.0;                     // max of the two quantization penalties
};

/// Achievable rate of the concatenated scheme at quantization level q1.
/// Defined only for rho13 == rho23 == 0 (throws
/// UnsupportedCorrelationStructure otherwise) and |rho12| < 1.
ConcatResult concat_rate(const ChainParams& p, double q1);

/// The quantization level equalizing the two stage-1 penalties: 1 - rho12^2.
double optimal_q1(double rho12);

/// Cut-set minimum minus the concatenated rate, in bits. Never exceeds the
/// result's gap_bound; at q1 = optimal_q1(rho12) it is at most half a bit.
double concat_gap(const ChainParams& p, double q1);

}  // namespace relaychain
