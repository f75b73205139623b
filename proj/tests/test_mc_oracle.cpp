#include <cmath>

#include "doctest.h"
#include "relaychain/mc_oracle.hpp"
#include "relaychain/nnc_rates.hpp"
#include "test_support.hpp"

using namespace relaychain;

namespace {

GaussianJoint pair_joint(double rho) {
    Eigen::Matrix2d k;
    k << 1.0, rho, rho, 1.0;
    return GaussianJoint({"A", "B"}, SymMatrix(k));
}

}  // namespace

TEST_CASE("sample_joint statistics and determinism") {
    SUBCASE("identity covariance variances land near one") {
        GaussianJoint j({"A", "B", "C"}, SymMatrix(Eigen::MatrixXd::Identity(3, 3)));
        const Eigen::MatrixXd s = sample_joint(j, 100000, 7);
        for (int col = 0; col < 3; ++col) {
            const double mean = s.col(col).mean();
            const double var = (s.col(col).array() - mean).square().sum() / (s.rows() - 1);
            CHECK(var > 0.98);
            CHECK(var < 1.02);
        }
    }
    SUBCASE("correlated pair reproduces its correlation") {
        const Eigen::MatrixXd s = sample_joint(pair_joint(0.9), 1000000, 99);
        const double ma = s.col(0).mean(), mb = s.col(1).mean();
        const double cov = ((s.col(0).array() - ma) * (s.col(1).array() - mb)).sum() /
                           (s.rows() - 1);
        const double va = (s.col(0).array() - ma).square().sum() / (s.rows() - 1);
        const double vb = (s.col(1).array() - mb).square().sum() / (s.rows() - 1);
        CHECK(std::abs(cov / std::sqrt(va * vb) - 0.9) < 0.01);
    }
    SUBCASE("fixed seed reproduces the matrix bit for bit") {
        GaussianJoint j = assemble_joint(scenario_params(10.0, 0.5), {1.0, 1.0});
        const Eigen::MatrixXd a = sample_joint(j, 5000, 1234);
        const Eigen::MatrixXd b = sample_joint(j, 5000, 1234);
        CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
        const Eigen::MatrixXd c = sample_joint(j, 5000, 1235);
        CHECK((a - c).cwiseAbs().maxCoeff() > 0.0);
    }
    SUBCASE("rank-deficient joints sample fine") {
        const Eigen::MatrixXd s = sample_joint(pair_joint(1.0), 20000, 5);
        CHECK((s.col(0) - s.col(1)).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("mc_conditional_mi against known values") {
    SUBCASE("independent blocks estimate zero") {
        Eigen::Matrix4d k = Eigen::Matrix4d::Identity();
        k(0, 1) = k(1, 0) = 0.7;
        k(2, 3) = k(3, 2) = -0.4;
        GaussianJoint j({"A", "B", "C", "D"}, SymMatrix(k));
        const McEstimate est = mc_conditional_mi(j, {"A", "B"}, {"C", "D"}, {}, 1000000, 11);
        CHECK(std::abs(est.value) < 0.02);
    }
    SUBCASE("scalar pair at rho = 0.5") {
        const McEstimate est = mc_conditional_mi(pair_joint(0.5), {"A"}, {"B"}, {}, 1000000, 22);
        CHECK(std::abs(est.value - 0.5 * std::log2(4.0 / 3.0)) < 0.02);
        CHECK(est.n_samples == 1000000);
        CHECK(est.std_error_proxy >= 0.0);
    }
    SUBCASE("first-cut NNC rate in the strong-correlation configuration") {
        const ChainParams p = scenario_params(100.0, std::sqrt(0.75));
        const QuantLevels q{0.25, 1.0};
        const GaussianJoint j = assemble_joint(p, q);
        using namespace labels;
        const McEstimate est =
            mc_conditional_mi(j, {X}, {Yh1, Yh2, Y3}, {X1, X2}, 1000000, 33);
        CHECK(std::abs(est.value - nnc_rates_closed(p, q).r1) < 0.02);
    }
    SUBCASE("sample-size floor is enforced") {
        CHECK_THROWS_AS(mc_conditional_mi(pair_joint(0.0), {"A"}, {"B"}, {}, 5000, 1),
                        std::invalid_argument);
    }
}

TEST_CASE("regression set validates every closed-form term") {
    const auto terms = mi_regression_set();
    REQUIRE(terms.size() == 10);
    for (const auto& term : terms) {
        CAPTURE(term.name);
        const GaussianJoint j = assemble_joint(term.params, term.quant);
        const McEstimate est = mc_mi_expression(j, term.expression, 1000000, 77001);
        const double tol = std::max(0.02, 3.0 * est.std_error_proxy);
        CHECK(std::abs(est.value - term.closed_form) < tol);
    }
}

TEST_CASE("regression estimates are stable across seeds") {
    const auto terms = mi_regression_set();
    for (const auto& term : terms) {
        CAPTURE(term.name);
        const GaussianJoint j = assemble_joint(term.params, term.quant);
        const McEstimate a = mc_mi_expression(j, term.expression, 250000, 501);
        const McEstimate b = mc_mi_expression(j, term.expression, 250000, 502);
        CHECK(std::abs(a.value - b.value) < 4.0 * (a.std_error_proxy + b.std_error_proxy));
    }
}
