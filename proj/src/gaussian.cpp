#include "relaychain/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace relaychain {

namespace {

// Lower Cholesky factor with an explicit pivot threshold. Returns false as
// soon as a pivot (the value under the square root) drops to `tol` or below.
bool cholesky_lower(const Eigen::MatrixXd& a, double tol, Eigen::MatrixXd& lower) {
    const int n = static_cast<int>(a.rows());
    lower = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        double pivot = a(j, j) - lower.row(j).head(j).squaredNorm();
        if (pivot <= tol) {
            return false;
        }
        lower(j, j) = std::sqrt(pivot);
        for (int i = j + 1; i < n; ++i) {
            lower(i, j) = (a(i, j) - lower.row(i).head(j).dot(lower.row(j).head(j))) / lower(j, j);
        }
    }
    return true;
}

void check_disjoint(const LabelSet& a, const LabelSet& b, const char* what) {
    std::set<std::string> seen(a.begin(), a.end());
    for (const auto& l : b) {
        if (seen.count(l)) {
            throw std::invalid_argument(std::string(what) + ": label sets overlap at '" + l + "'");
        }
    }
}

}  // namespace

SymMatrix::SymMatrix(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw std::invalid_argument("SymMatrix: matrix must be square with dim >= 1");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
        throw std::invalid_argument("SymMatrix: input is not symmetric");
    }
    mat_ = m;
    // Mirror the lower triangle so equality across the diagonal is exact.
    for (int i = 0; i < mat_.rows(); ++i) {
        for (int j = 0; j < i; ++j) {
            mat_(j, i) = mat_(i, j);
        }
    }
}

GaussianJoint::GaussianJoint(LabelSet labels, SymMatrix cov)
    : labels_(std::move(labels)), cov_(std::move(cov)) {
    if (static_cast<int>(labels_.size()) != cov_.dim()) {
        throw std::invalid_argument("GaussianJoint: label count does not match covariance dim");
    }
    std::set<std::string> uniq(labels_.begin(), labels_.end());
    if (uniq.size() != labels_.size()) {
        throw std::invalid_argument("GaussianJoint: labels must be unique");
    }
    // PSD check on the unit-diagonal normalization, so the tolerance is
    // meaningful regardless of the variance scale.
    const Eigen::MatrixXd& k = cov_.matrix();
    Eigen::VectorXd d = k.diagonal();
    if (d.minCoeff() < -kPsdTol) {
        throw NotPositiveDefinite("GaussianJoint: negative variance on the diagonal");
    }
    Eigen::VectorXd s(d.size());
    for (int i = 0; i < d.size(); ++i) {
        s(i) = d(i) > 0.0 ? 1.0 / std::sqrt(d(i)) : 1.0;
    }
    Eigen::MatrixXd normalized = s.asDiagonal() * k * s.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normalized, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol) {
        std::ostringstream msg;
        msg << "GaussianJoint: covariance not PSD (normalized min eigenvalue "
            << es.eigenvalues().minCoeff() << ")";
        throw NotPositiveDefinite(msg.str());
    }
}

int GaussianJoint::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw std::invalid_argument("GaussianJoint: unknown label '" + label + "'");
    }
    return static_cast<int>(it - labels_.begin());
}

std::vector<int> GaussianJoint::indices_of(const LabelSet& subset) const {
    std::vector<int> idx;
    idx.reserve(subset.size());
    for (const auto& l : subset) {
        idx.push_back(index_of(l));
    }
    return idx;
}

double log_det(const SymMatrix& m) {
    Eigen::MatrixXd lower;
    if (!cholesky_lower(m.matrix(), kPivotTol, lower)) {
        throw NotPositiveDefinite("log_det: matrix not positive definite within tolerance");
    }
    double acc = 0.0;
    for (int i = 0; i < m.dim(); ++i) {
        acc += std::log(lower(i, i));
    }
    return 2.0 * acc;
}

bool is_psd(const SymMatrix& m, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

SymMatrix conditional_cov(const GaussianJoint& j, const LabelSet& target, const LabelSet& given) {
    check_disjoint(target, given, "conditional_cov");
    const std::vector<int> t = j.indices_of(target);
    const std::vector<int> g = j.indices_of(given);
    const Eigen::MatrixXd& k = j.cov().matrix();

    Eigen::MatrixXd kt(t.size(), t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t l = 0; l < t.size(); ++l) {
            kt(i, l) = k(t[i], t[l]);
        }
    }
    if (g.empty()) {
        return SymMatrix(kt);
    }

    Eigen::MatrixXd kg(g.size(), g.size());
    Eigen::MatrixXd kgt(g.size(), t.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t l = 0; l < g.size(); ++l) {
            kg(i, l) = k(g[i], g[l]);
        }
        for (std::size_t l = 0; l < t.size(); ++l) {
            kgt(i, l) = k(g[i], t[l]);
        }
    }

    Eigen::MatrixXd lower;
    if (!cholesky_lower(kg, kPivotTol, lower)) {
        throw SingularConditioningBlock(
            "conditional_cov: conditioning block not invertible within tolerance");
    }
    // K_T - K_TG K_G^-1 K_GT == K_T - W^T W with W = L^-1 K_GT, which keeps
    // the result symmetric by construction.
    Eigen::MatrixXd w = lower.triangularView<Eigen::Lower>().solve(kgt);
    Eigen::MatrixXd schur = kt - w.transpose() * w;
    return SymMatrix((schur + schur.transpose()) / 2.0);
}

double conditional_mi(const GaussianJoint& j, const LabelSet& a, const LabelSet& b,
                      const LabelSet& c) {
    check_disjoint(a, b, "conditional_mi");
    check_disjoint(a, c, "conditional_mi");
    check_disjoint(b, c, "conditional_mi");
    if (a.empty() || b.empty()) {
        return 0.0;
    }
    LabelSet bc = b;
    bc.insert(bc.end(), c.begin(), c.end());
    const double num = log_det(conditional_cov(j, a, c));
    const double den = log_det(conditional_cov(j, a, bc));
    return (num - den) / (2.0 * std::log(2.0));
}

}  // namespace relaychain
