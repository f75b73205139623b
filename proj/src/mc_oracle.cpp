#include "relaychain/mc_oracle.hpp"

#include <cmath>
#include <random>

#include "relaychain/cutset_bounds.hpp"
#include "relaychain/nnc_rates.hpp"

namespace relaychain {

namespace {

// Standard normals from mt19937_64 via Box-Muller on 53-bit uniforms.
class NormalSource {
  public:
    explicit NormalSource(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] keeps the log finite; u2 in [0, 1).
        const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1p-53;
        const double u2 = static_cast<double>(rng_() >> 11) * 0x1p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

Eigen::MatrixXd covariance_sqrt(const GaussianJoint& j) {
    const Eigen::MatrixXd& k = j.cov().matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double scale = std::max(1.0, std::abs(ev.maxCoeff()));
    if (ev.minCoeff() < -1e-8 * scale) {
        throw FactorizationFailure("sample_joint: covariance is indefinite");
    }
    Eigen::VectorXd roots(ev.size());
    for (int i = 0; i < ev.size(); ++i) {
        roots(i) = std::sqrt(std::max(0.0, ev(i)));
    }
    return es.eigenvectors() * roots.asDiagonal();
}

// Centered sample covariance of a row range.
Eigen::MatrixXd sample_cov(const Eigen::MatrixXd& samples, long long begin, long long count) {
    const auto block = samples.middleRows(begin, count);
    const Eigen::RowVectorXd mean = block.colwise().mean();
    const Eigen::MatrixXd centered = block.rowwise() - mean;
    return (centered.transpose() * centered) / static_cast<double>(count - 1);
}

double logdet_block(const Eigen::MatrixXd& cov, const std::vector<int>& idx) {
    if (idx.empty()) {
        return 0.0;  // det of the empty block is 1
    }
    Eigen::MatrixXd sub(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t l = 0; l < idx.size(); ++l) {
            sub(i, l) = cov(idx[i], idx[l]);
        }
    }
    try {
        return log_det(SymMatrix((sub + sub.transpose()) / 2.0));
    } catch (const NotPositiveDefinite&) {
        throw SingularSampleCovariance("plug-in estimate: sample covariance block is singular");
    }
}

double plugin_from_cov(const Eigen::MatrixXd& cov, const GaussianJoint& j, const LabelSet& a,
                       const LabelSet& b, const LabelSet& c) {
    auto join = [](const LabelSet& x, const LabelSet& y) {
        LabelSet out = x;
        out.insert(out.end(), y.begin(), y.end());
        return out;
    };
    const double ld_ac = logdet_block(cov, j.indices_of(join(a, c)));
    const double ld_bc = logdet_block(cov, j.indices_of(join(b, c)));
    const double ld_c = logdet_block(cov, j.indices_of(c));
    const double ld_abc = logdet_block(cov, j.indices_of(join(join(a, b), c)));
    return 0.5 * (ld_ac + ld_bc - ld_c - ld_abc) / std::log(2.0);
}

double expression_on_cov(const Eigen::MatrixXd& cov, const GaussianJoint& j,
                         const std::vector<MiTerm>& expr) {
    double total = 0.0;
    for (const auto& term : expr) {
        total += term.weight * plugin_from_cov(cov, j, term.a, term.b, term.c);
    }
    return total;
}

}  // namespace

Eigen::MatrixXd sample_joint(const GaussianJoint& j, long long n, std::uint64_t seed) {
    if (n < 1) {
        throw std::invalid_argument("sample_joint: n must be >= 1");
    }
    const int dim = j.dim();
    const Eigen::MatrixXd root = covariance_sqrt(j);
    NormalSource normals(seed);
    Eigen::MatrixXd z(n, dim);
    for (long long row = 0; row < n; ++row) {
        for (int col = 0; col < dim; ++col) {
            z(row, col) = normals.next();
        }
    }
    return z * root.transpose();
}

double plugin_conditional_mi(const Eigen::MatrixXd& samples, const GaussianJoint& j,
                             const LabelSet& a, const LabelSet& b, const LabelSet& c) {
    const Eigen::MatrixXd cov = sample_cov(samples, 0, samples.rows());
    return plugin_from_cov(cov, j, a, b, c);
}

McEstimate mc_conditional_mi(const GaussianJoint& j, const LabelSet& a, const LabelSet& b,
                             const LabelSet& c, long long n, std::uint64_t seed) {
    return mc_mi_expression(j, {MiTerm{1.0, a, b, c}}, n, seed);
}

McEstimate mc_mi_expression(const GaussianJoint& j, const std::vector<MiTerm>& expr, long long n,
                            std::uint64_t seed) {
    if (n < 10000) {
        throw std::invalid_argument("mc estimate: need n >= 10^4 samples");
    }
    const Eigen::MatrixXd samples = sample_joint(j, n, seed);
    const long long half = n / 2;

    McEstimate est;
    est.value = expression_on_cov(sample_cov(samples, 0, n), j, expr);
    const double first = expression_on_cov(sample_cov(samples, 0, half), j, expr);
    const double second = expression_on_cov(sample_cov(samples, half, n - half), j, expr);
    est.std_error_proxy = std::abs(first - second) / 2.0;
    est.n_samples = n;
    est.seed = seed;
    return est;
}

std::vector<RegressionTerm> mi_regression_set() {
    using namespace labels;

    // MI expressions for the four per-cut bounds and the three NNC rates.
    const std::vector<MiTerm> expr_c1 = {{1.0, {X}, {Y1, Y2, Y3}, {X1, X2}}};
    const std::vector<MiTerm> expr_c2 = {{1.0, {X, X1}, {Y2, Y3}, {X2}}};
    const std::vector<MiTerm> expr_c3 = {{1.0, {X, X1, X2}, {Y3}, {}}};
    const std::vector<MiTerm> expr_c4 = {{1.0, {X, X2}, {Y1, Y3}, {X1}}};
    const std::vector<MiTerm> expr_r1 = {{1.0, {X}, {Yh1, Yh2, Y3}, {X1, X2}}};
    const std::vector<MiTerm> expr_r2 = {{1.0, {X, X1}, {Yh2, Y3}, {X2}},
                                         {-1.0, {Y1}, {Yh1}, {X, X1, X2, Y3}}};
    const std::vector<MiTerm> expr_r3 = {{1.0, {X, X1, X2}, {Y3}, {}},
                                         {-1.0, {Y1, Y2}, {Yh1, Yh2}, {X, X1, X2, Y3}}};

    // Point A: moderate gains, fully mixed correlations.
    ChainParams mixed;
    mixed.h1 = 2.0;
    mixed.h2 = 1.5;
    mixed.h3 = 3.0;
    mixed.rho12 = 0.3;
    mixed.rho13 = -0.2;
    mixed.rho23 = 0.4;
    const QuantLevels q_mixed{0.7, 1.3};

    // Point B: the strong-correlation special configuration.
    const ChainParams strong = scenario_params(100.0, std::sqrt(0.75));
    const QuantLevels q_strong{0.25, 1.0};

    // Point C: a single correlated pair.
    ChainParams pair;
    pair.h1 = 10.0;
    pair.h2 = 1.0;
    pair.h3 = 1.0;
    pair.rho12 = 0.5;
    const QuantLevels q_pair{1.0, 1.0};

    auto make = [](std::string name, const ChainParams& p, const QuantLevels& q,
                   double closed, std::vector<MiTerm> expr) {
        return RegressionTerm{std::move(name), p, q, closed, std::move(expr)};
    };

    const CutsetBounds cs_mixed = cutset_bound(mixed);
    const NncRates nnc_mixed = nnc_rates_closed(mixed, q_mixed);
    const CutsetBounds cs_strong = cutset_bound(strong);
    const NncRates nnc_strong = nnc_rates_closed(strong, q_strong);
    const NncRates nnc_pair = nnc_rates_closed(pair, q_pair);

    return {
        make("c1@mixed", mixed, q_mixed, cs_mixed.c1, expr_c1),
        make("c2@mixed", mixed, q_mixed, cs_mixed.c2, expr_c2),
        make("c3@mixed", mixed, q_mixed, cs_mixed.c3, expr_c3),
        make("c4@mixed", mixed, q_mixed, cs_mixed.c4, expr_c4),
        make("r1@mixed", mixed, q_mixed, nnc_mixed.r1, expr_r1),
        make("r2@mixed", mixed, q_mixed, nnc_mixed.r2, expr_r2),
        make("r3@mixed", mixed, q_mixed, nnc_mixed.r3, expr_r3),
        make("c1@strong", strong, q_strong, cs_strong.c1, expr_c1),
        make("r1@strong", strong, q_strong, nnc_strong.r1, expr_r1),
        make("r1@pair", pair, q_pair, nnc_pair.r1, expr_r1),
    };
}

}  // namespace relaychain
