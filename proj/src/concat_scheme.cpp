#include "relaychain/concat_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relaychain/cutset_bounds.hpp"

namespace relaychain {

namespace {

void check_structure(const char* who, const ChainParams& p, double q1) {
    if (std::abs(p.rho13) > 1e-12 || std::abs(p.rho23) > 1e-12) {
        std::ostringstream msg;
        msg << who << ": the concatenated scheme requires rho13 == rho23 == 0 "
            << "(got rho13 = " << p.rho13 << ", rho23 = " << p.rho23 << ")";
        throw UnsupportedCorrelationStructure(msg.str());
    }
    if (!(std::abs(p.rho12) < 1.0)) {
        throw DegenerateCorrelation(std::string(who) + ": |rho12| must be strictly below 1");
    }
    if (!(q1 > 0.0)) {
        throw std::invalid_argument(std::string(who) + ": q1 must be strictly positive");
    }
}

}  // namespace

ConcatResult concat_rate(const ChainParams& p, double q1) {
    check_structure("concat_rate", p, q1);
    const double residual = 1.0 - p.rho12 * p.rho12;  // Var(Z1 | Z2)

    ConcatResult res;
    // Stage 1: relay 1 quantizes its observation for relay 2, which decodes.
    res.stage1_terms.first =
        0.5 * std::log2(1.0 + p.h1_sq() / residual) - 0.5 * std::log2(1.0 + q1 / residual);
    res.stage1_terms.second =
        0.5 * std::log2(1.0 + p.h2_sq()) - 0.5 * std::log2(1.0 + residual / q1);
    // Stage 2: relay 2 re-encodes over the last hop.
    res.stage2_term = 0.5 * std::log2(1.0 + p.h3_sq());

    res.rate = std::min({res.stage1_terms.first, res.stage1_terms.second, res.stage2_term});
    res.q1_star = optimal_q1(p.rho12);
    res.gap_bound = std::max(0.5 * std::log2(1.0 + q1 / residual),
                             0.5 * std::log2(1.0 + residual / q1));
    return res;
}

double optimal_q1(double rho12) {
    if (!(std::abs(rho12) < 1.0)) {
        throw DegenerateCorrelation("optimal_q1: |rho12| must be strictly below 1");
    }
    return 1.0 - rho12 * rho12;
}

double concat_gap(const ChainParams& p, double q1) {
    const ConcatResult res = concat_rate(p, q1);
    return cutset_bound(p).c_min - res.rate;
}

}  // namespace relaychain
