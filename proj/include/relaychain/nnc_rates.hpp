#pragma once

#include "relaychain/chain_model.hpp"
#include "relaychain/cutset_bounds.hpp"

namespace relaychain {

/// Noisy-network-coding achievable rates per cut, in bits. Values are raw
/// (possibly negative); r_min_clamped is the usable rate floor at zero.
struct NncRates {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;
    double r_min = 0.0;
    double r_min_clamped = 0.0;
};

/// Per-cut gaps between the cut-set bound and the NNC rate, in bits.
struct GapReport {
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    double d_max = 0.0;
};

/// Closed-form rates for Gaussian inputs and Gaussian quantization.
/// Throws SingularNoiseCovariance if the quantization-augmented noise
/// determinant collapses.
NncRates nnc_rates_closed(const ChainParams& p, const QuantLevels& q);

/// The same rates evaluated as conditional mutual informations over the
/// assembled joint law. Agrees with nnc_rates_closed to within 1e-9 bits;
/// the two routes share no computation.
NncRates nnc_rates_generic(const ChainParams& p, const QuantLevels& q);

/// Gaps d_i = c_i - r_i for the first three cuts, from the closed forms.
GapReport nnc_gaps(const ChainParams& p, const QuantLevels& q);

}  // namespace relaychain
