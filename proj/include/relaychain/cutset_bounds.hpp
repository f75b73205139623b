#pragma once

#include "relaychain/chain_model.hpp"

namespace relaychain {

/// Per-cut upper bounds in bits for the cuts {X}, {X,X1}, {X,X1,X2}, {X,X2},
/// and their minimum. A bound whose denominator vanishes (singular noise
/// covariance, |rho23| -> 1, |rho13| -> 1) is reported as +infinity and
/// `divergent` is set instead of raising an error, so sweeps can approach the
/// boundary.
struct CutsetBounds {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double c4 = 0.0;  // always >= c3
    double c_min = 0.0;
    bool divergent = false;
};

CutsetBounds cutset_bound(const ChainParams& p);

}  // namespace relaychain
