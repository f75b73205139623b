#pragma once

#include <cstdint>
#include <vector>

#include "relaychain/chain_model.hpp"

namespace relaychain {

/// Monte Carlo estimate of a mutual-information quantity, in bits.
/// std_error_proxy is half the absolute difference between the estimates on
/// the two halves of the sample.
struct McEstimate {
    double value = 0.0;
    long long n_samples = 0;
    std::uint64_t seed = 0;
    double std_error_proxy = 0.0;
};

/// Draws n rows from the joint law (one signal per column, in label order).
/// Generation is mt19937_64 uniforms mapped through the Box-Muller transform
/// and a symmetric eigen square root of the covariance (eigenvalues floored
/// at zero, so rank-deficient joints sample fine). Deterministic per seed.
/// Throws FactorizationFailure on indefinite input.
Eigen::MatrixXd sample_joint(const GaussianJoint& j, long long n, std::uint64_t seed);

/// Plug-in conditional MI from the sample covariance of `samples`, whose
/// columns follow j.labels(). Throws SingularSampleCovariance when a needed
/// block is numerically singular.
double plugin_conditional_mi(const Eigen::MatrixXd& samples, const GaussianJoint& j,
                             const LabelSet& a, const LabelSet& b, const LabelSet& c);

/// One weighted conditional-MI term of an estimated expression.
struct MiTerm {
    double weight = 1.0;
    LabelSet a;
    LabelSet b;
    LabelSet c;
};

/// Estimates I(A;B|C) by sampling the joint (n >= 1e4).
McEstimate mc_conditional_mi(const GaussianJoint& j, const LabelSet& a, const LabelSet& b,
                             const LabelSet& c, long long n, std::uint64_t seed);

/// Estimates sum_i weight_i * I(A_i;B_i|C_i) on one shared sample, so
/// differences of MI terms are evaluated coherently.
McEstimate mc_mi_expression(const GaussianJoint& j, const std::vector<MiTerm>& expr, long long n,
                            std::uint64_t seed);

/// One entry of the fixed validation set: a named closed-form rate term and
/// the MI expression that must reproduce it on the assembled joint.
struct RegressionTerm {
    std::string name;
    ChainParams params;
    QuantLevels quant;
    double closed_form = 0.0;  // bits
    std::vector<MiTerm> expression;
};

/// The fixed ten-term set covering every per-cut bound and NNC rate.
std::vector<RegressionTerm> mi_regression_set();

}  // namespace relaychain
