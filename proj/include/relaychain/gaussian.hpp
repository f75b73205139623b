#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "relaychain/errors.hpp"

namespace relaychain {

// Pivot threshold below which a factorization is treated as singular.
inline constexpr double kPivotTol = 1e-14;
// Eigenvalue tolerance for positive-semidefiniteness of unit-normalized matrices.
inline constexpr double kPsdTol = 1e-12;

/// Dense symmetric matrix. Construction mirrors the lower triangle into the
/// upper one, so entries(i,j) == entries(j,i) holds exactly afterwards.
class SymMatrix {
  public:
    /// Builds from a square matrix (dim >= 1). Inputs whose halves disagree by
    /// more than a small relative tolerance are rejected.
    explicit SymMatrix(const Eigen::MatrixXd& m);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Eigen::MatrixXd& matrix() const { return mat_; }
    double operator()(int i, int j) const { return mat_(i, j); }

  private:
    Eigen::MatrixXd mat_;
};

using LabelSet = std::vector<std::string>;

/// Joint law of a zero-mean Gaussian vector with named coordinates.
class GaussianJoint {
  public:
    /// Labels must be unique and match cov.dim(); cov must be PSD within
    /// kPsdTol after unit-diagonal normalization.
    GaussianJoint(LabelSet labels, SymMatrix cov);

    const LabelSet& labels() const { return labels_; }
    const SymMatrix& cov() const { return cov_; }
    int dim() const { return cov_.dim(); }

    int index_of(const std::string& label) const;
    std::vector<int> indices_of(const LabelSet& subset) const;

  private:
    LabelSet labels_;
    SymMatrix cov_;
};

/// Natural-log determinant via Cholesky. Throws NotPositiveDefinite if any
/// pivot falls at or below kPivotTol.
double log_det(const SymMatrix& m);

/// True iff the smallest eigenvalue is >= -tol.
bool is_psd(const SymMatrix& m, double tol);

/// Covariance of `target` conditioned on `given` (Schur complement
/// K_T - K_TG K_G^-1 K_GT). Throws SingularConditioningBlock when the
/// conditioning block is not invertible within tolerance.
SymMatrix conditional_cov(const GaussianJoint& j, const LabelSet& target, const LabelSet& given);

/// Conditional mutual information I(A;B|C) in bits,
/// 0.5*log2(det K_{A|C} / det K_{A|B,C}). Empty A or B gives 0.
double conditional_mi(const GaussianJoint& j, const LabelSet& a, const LabelSet& b,
                      const LabelSet& c);

}  // namespace relaychain
