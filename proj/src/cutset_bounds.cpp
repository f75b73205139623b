#include "relaychain/cutset_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace relaychain {

namespace {

double half_log2_1p(double x) { return 0.5 * std::log2(1.0 + x); }

// half_log2_1p(num/den), or +inf when the denominator has collapsed.
double bound_or_inf(double num, double den) {
    if (den <= 1e-14) {
        return std::numeric_limits<double>::infinity();
    }
    return half_log2_1p(num / den);
}

}  // namespace

CutsetBounds cutset_bound(const ChainParams& p) {
    if (auto violation = validate(p)) {
        throw std::invalid_argument("cutset_bound: " + *violation);
    }
    const double r12 = p.rho12, r13 = p.rho13, r23 = p.rho23;
    const double det_kz =
        1.0 + 2.0 * r12 * r13 * r23 - r12 * r12 - r13 * r13 - r23 * r23;

    CutsetBounds b;
    b.c1 = bound_or_inf((1.0 - r23 * r23) * p.h1_sq(), det_kz);
    b.c2 = bound_or_inf(p.h2_sq(), 1.0 - r23 * r23);
    b.c3 = half_log2_1p(p.h3_sq());
    b.c4 = bound_or_inf(p.h1_sq() + p.h3_sq() + p.h1_sq() * p.h3_sq(), 1.0 - r13 * r13);
    b.c_min = std::min({b.c1, b.c2, b.c3, b.c4});
    b.divergent = std::isinf(b.c1) || std::isinf(b.c2) || std::isinf(b.c4);
    return b;
}

}  // namespace relaychain
