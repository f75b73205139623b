#include "relaychain/nnc_rates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace relaychain {

namespace {

void check_inputs(const char* who, const ChainParams& p, const QuantLevels& q) {
    if (auto violation = validate(p)) {
        throw std::invalid_argument(std::string(who) + ": " + *violation);
    }
    if (auto violation = validate(q)) {
        throw std::invalid_argument(std::string(who) + ": " + *violation);
    }
}

NncRates finish(double r1, double r2, double r3) {
    NncRates r;
    r.r1 = r1;
    r.r2 = r2;
    r.r3 = r3;
    r.r_min = std::min({r1, r2, r3});
    r.r_min_clamped = std::max(0.0, r.r_min);
    return r;
}

}  // namespace

NncRates nnc_rates_closed(const ChainParams& p, const QuantLevels& q) {
    check_inputs("nnc_rates_closed", p, q);
    const double r12 = p.rho12, r13 = p.rho13, r23 = p.rho23;

    // Determinant of the noise covariance with quantization noise added on
    // the two relay entries: [[1+q1, r12, r13], [r12, 1+q2, r23], [r13, r23, 1]].
    const double det_kq = (1.0 + q.q1) * ((1.0 + q.q2) - r23 * r23) -
                          r12 * (r12 - r23 * r13) + r13 * (r12 * r23 - (1.0 + q.q2) * r13);
    if (det_kq <= 1e-14) {
        std::ostringstream msg;
        msg << "nnc_rates_closed: quantized noise covariance determinant " << det_kq
            << " is not positive";
        throw SingularNoiseCovariance(msg.str());
    }

    const double r1 = 0.5 * std::log2(1.0 + (1.0 + q.q2 - r23 * r23) * p.h1_sq() / det_kq);

    const double r2 = 0.5 * std::log2(1.0 + p.h2_sq() / (1.0 + q.q2 - r23 * r23)) -
                      0.5 * std::log2(1.0 + (1.0 - r13 * r13) / q.q1);

    // 2x2 determinant of the conditional (on Y3) noise covariance with the
    // quantization variances added on the diagonal.
    const double cross = r12 - r13 * r23;
    const double det2 =
        (1.0 - r13 * r13 + q.q1) * (1.0 - r23 * r23 + q.q2) - cross * cross;
    const double r3 = 0.5 * std::log2(1.0 + p.h3_sq()) - 0.5 * std::log2(det2 / (q.q1 * q.q2));

    return finish(r1, r2, r3);
}

NncRates nnc_rates_generic(const ChainParams& p, const QuantLevels& q) {
    check_inputs("nnc_rates_generic", p, q);
    using namespace labels;
    const GaussianJoint joint = assemble_joint(p, q);

    const double r1 = conditional_mi(joint, {X}, {Yh1, Yh2, Y3}, {X1, X2});
    // The penalty terms condition on the inputs and the destination
    // observation only; this is the conditioning under which the closed
    // forms above are exact.
    const double r2 = conditional_mi(joint, {X, X1}, {Yh2, Y3}, {X2}) -
                      conditional_mi(joint, {Y1}, {Yh1}, {X, X1, X2, Y3});
    const double r3 = conditional_mi(joint, {X, X1, X2}, {Y3}, {}) -
                      conditional_mi(joint, {Y1, Y2}, {Yh1, Yh2}, {X, X1, X2, Y3});

    return finish(r1, r2, r3);
}

GapReport nnc_gaps(const ChainParams& p, const QuantLevels& q) {
    const CutsetBounds c = cutset_bound(p);
    const NncRates r = nnc_rates_closed(p, q);
    GapReport g;
    g.d1 = c.c1 - r.r1;
    g.d2 = c.c2 - r.r2;
    g.d3 = c.c3 - r.r3;
    g.d_max = std::max({g.d1, g.d2, g.d3});
    return g;
}

}  // namespace relaychain
