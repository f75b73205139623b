#include "relaychain/chain_model.hpp"

#include <cmath>
#include <sstream>

namespace relaychain {

SymMatrix noise_covariance(const ChainParams& p) {
    Eigen::Matrix3d kz;
    kz << 1.0, p.rho12, p.rho13,  //
        p.rho12, 1.0, p.rho23,    //
        p.rho13, p.rho23, 1.0;
    return SymMatrix(kz);
}

std::optional<std::string> validate(const ChainParams& p) {
    const struct {
        const char* name;
        double value;
    } rhos[] = {{"rho12", p.rho12}, {"rho13", p.rho13}, {"rho23", p.rho23}};
    for (const auto& r : rhos) {
        if (!(std::abs(r.value) <= 1.0)) {
            std::ostringstream msg;
            msg << "correlation out of range: |" << r.name << "| = " << std::abs(r.value)
                << " exceeds 1";
            return msg.str();
        }
    }
    if (!is_psd(noise_covariance(p), kPsdTol)) {
        return "K_Z not PSD: the noise correlation matrix has a negative eigenvalue";
    }
    return std::nullopt;
}

std::optional<std::string> validate(const QuantLevels& q) {
    if (!(q.q1 > 0.0)) {
        return "quantization level q1 must be strictly positive";
    }
    if (!(q.q2 > 0.0)) {
        return "quantization level q2 must be strictly positive";
    }
    return std::nullopt;
}

ChainParams scenario_params(double h1_sq, double rho12) {
    if (!(std::abs(rho12) < 1.0)) {
        std::ostringstream msg;
        msg << "scenario_params: |rho12| = " << std::abs(rho12) << " must be strictly below 1";
        throw DegenerateCorrelation(msg.str());
    }
    if (!(h1_sq > 0.0)) {
        throw std::invalid_argument("scenario_params: h1_sq must be > 0");
    }
    ChainParams p;
    p.h1 = std::sqrt(h1_sq);
    p.h2 = p.h3 = std::sqrt(h1_sq / (1.0 - rho12 * rho12));
    p.rho12 = rho12;
    p.rho13 = 0.0;
    p.rho23 = 0.0;
    return p;
}

GaussianJoint assemble_joint(const ChainParams& p, const QuantLevels& q) {
    if (auto violation = validate(p)) {
        throw std::invalid_argument("assemble_joint: " + *violation);
    }
    if (auto violation = validate(q)) {
        throw std::invalid_argument("assemble_joint: " + *violation);
    }

    LabelSet names = {labels::X,  labels::X1, labels::X2,  labels::Y1,
                      labels::Y2, labels::Y3, labels::Yh1, labels::Yh2};
    enum { X = 0, X1, X2, Y1, Y2, Y3, YH1, YH2 };

    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(8, 8);
    k(X, X) = k(X1, X1) = k(X2, X2) = 1.0;

    // Y_i = h_i * (own input) + Z_i with the inputs mutually independent and
    // independent of the noises, so cross terms between observations reduce
    // to the noise correlations.
    const int in_of[3] = {X, X1, X2};
    const double gain[3] = {p.h1, p.h2, p.h3};
    const int obs[3] = {Y1, Y2, Y3};
    Eigen::Matrix3d kz = noise_covariance(p).matrix();
    for (int i = 0; i < 3; ++i) {
        k(obs[i], obs[i]) = gain[i] * gain[i] + 1.0;
        k(obs[i], in_of[i]) = k(in_of[i], obs[i]) = gain[i];
        for (int l = 0; l < 3; ++l) {
            if (l != i) {
                k(obs[i], obs[l]) = kz(i, l);
            }
        }
    }

    // Yh_i = Y_i + Zh_i with Zh_i independent of everything, so Yh_i shares
    // every cross-covariance with Y_i and gains q_i on its variance.
    const int quantized[2] = {YH1, YH2};
    const int source[2] = {Y1, Y2};
    const double qvar[2] = {q.q1, q.q2};
    for (int i = 0; i < 2; ++i) {
        for (int col = 0; col < 8; ++col) {
            if (col != quantized[i]) {
                k(quantized[i], col) = k(col, quantized[i]) = k(source[i], col);
            }
        }
        k(quantized[i], quantized[i]) = k(source[i], source[i]) + qvar[i];
    }
    k(YH1, YH2) = k(YH2, YH1) = k(Y1, Y2);

    return GaussianJoint(std::move(names), SymMatrix(k));
}

}  // namespace relaychain
