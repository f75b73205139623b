#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include "relaychain/chain_model.hpp"

namespace relaychain::testing {

// 53-bit uniform in [0, 1), independent of distribution-library internals.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::pow(10.0, uniform(rng, std::log10(lo), std::log10(hi)));
}

// Determinant by cofactor expansion along the first row. Exponential in dim;
// the independent check for the factorization-based log_det.
inline double cofactor_det(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    if (n == 1) {
        return m(0, 0);
    }
    double det = 0.0;
    double sign = 1.0;
    for (int col = 0; col < n; ++col) {
        Eigen::MatrixXd minor(n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int mc = 0;
            for (int l = 0; l < n; ++l) {
                if (l != col) {
                    minor(i - 1, mc++) = m(i, l);
                }
            }
        }
        det += sign * m(0, col) * cofactor_det(minor);
        sign = -sign;
    }
    return det;
}

inline double min_eigenvalue(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

// Random correlations with the noise covariance comfortably inside the PSD
// cone, and gains up to `h_max`.
inline ChainParams random_valid_params(std::mt19937_64& rng, double h_max = 10.0) {
    ChainParams p;
    do {
        p.rho12 = uniform(rng, -1.0, 1.0);
        p.rho13 = uniform(rng, -1.0, 1.0);
        p.rho23 = uniform(rng, -1.0, 1.0);
    } while (min_eigenvalue(noise_covariance(p).matrix()) < 1e-4);
    p.h1 = uniform(rng, 0.0, h_max);
    p.h2 = uniform(rng, 0.0, h_max);
    p.h3 = uniform(rng, 0.0, h_max);
    return p;
}

inline QuantLevels random_quant(std::mt19937_64& rng, double lo = 1e-3, double hi = 1e3) {
    return {log_uniform(rng, lo, hi), log_uniform(rng, lo, hi)};
}

// Random positive definite matrix A = B B^T + eps*I.
inline Eigen::MatrixXd random_pd_matrix(std::mt19937_64& rng, int dim, double eps = 0.1) {
    Eigen::MatrixXd b(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int l = 0; l < dim; ++l) {
            b(i, l) = uniform(rng, -1.0, 1.0);
        }
    }
    return b * b.transpose() + eps * Eigen::MatrixXd::Identity(dim, dim);
}

}  // namespace relaychain::testing
