#pragma once

#include <optional>
#include <string>

#include "relaychain/gaussian.hpp"

namespace relaychain {

// Signal names used by the assembled joint law.
namespace labels {
inline const std::string X = "X";      // source input
inline const std::string X1 = "X1";    // relay 1 input
inline const std::string X2 = "X2";    // relay 2 input
inline const std::string Y1 = "Y1";    // relay 1 observation
inline const std::string Y2 = "Y2";    // relay 2 observation
inline const std::string Y3 = "Y3";    // destination observation
inline const std::string Yh1 = "Yh1";  // relay 1 quantized observation
inline const std::string Yh2 = "Yh2";  // relay 2 quantized observation
}  // namespace labels

/// Four-node chain parameters. Transmit powers and receiver noise variances
/// are normalized to one; gains are stored as amplitudes and only enter the
/// rate formulas squared.
struct ChainParams {
    double h1 = 1.0;
    double h2 = 1.0;
    double h3 = 1.0;
    double rho12 = 0.0;
    double rho13 = 0.0;
    double rho23 = 0.0;

    double h1_sq() const { return h1 * h1; }
    double h2_sq() const { return h2 * h2; }
    double h3_sq() const { return h3 * h3; }
};

/// Gaussian quantization noise variances at the two relays.
struct QuantLevels {
    double q1 = 1.0;
    double q2 = 1.0;
};

/// Unit-diagonal covariance of the three receiver noises.
SymMatrix noise_covariance(const ChainParams& p);

/// std::nullopt when p is valid; otherwise a description of the violated
/// constraint ("correlation out of range ..." or "K_Z not PSD ...").
std::optional<std::string> validate(const ChainParams& p);

/// Description of a q that is not strictly positive, or std::nullopt.
std::optional<std::string> validate(const QuantLevels& q);

/// The special configuration with rho13 = rho23 = 0 and
/// h2^2 = h3^2 = h1^2 / (1 - rho12^2). Gains are positive roots.
/// Throws DegenerateCorrelation when |rho12| >= 1.
ChainParams scenario_params(double h1_sq, double rho12);

/// Joint covariance of (X, X1, X2, Y1, Y2, Y3, Yh1, Yh2): independent
/// unit-power inputs, correlated unit-variance receiver noises, and
/// quantization noise q_i added independently on the relay observations.
GaussianJoint assemble_joint(const ChainParams& p, const QuantLevels& q);

}  // namespace relaychain
