#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "sparsefolio/path_solvers.hpp"
#include "test_support.hpp"

using namespace sparsefolio;
using test_support::orthonormal_centered_design;
using test_support::random_matrix;
using test_support::random_vector;

namespace {
const SolverOptions kRaw{false};
}

TEST_CASE("lars_path on an orthonormal design matches soft thresholding") {
    Rng rng(101);
    const Eigen::MatrixXd X = orthonormal_centered_design(rng, 40, 6);
    const Eigen::VectorXd y = random_vector(rng, 40);
    const Eigen::VectorXd corr = X.transpose() * y;

    const SelectionPath path = lars_path(X, y);

    // entry order sorts |X'y| in decreasing magnitude
    std::vector<int> expected(6);
    std::iota(expected.begin(), expected.end(), 0);
    std::sort(expected.begin(), expected.end(),
              [&](int a, int b) { return std::abs(corr(a)) > std::abs(corr(b)); });
    CHECK(path.entry_order == expected);

    // knot penalties are the sorted correlation magnitudes, then zero
    REQUIRE(path.knots.size() == 7);
    for (int m = 0; m < 6; ++m)
        CHECK(path.knots[static_cast<std::size_t>(m)].lambda ==
              doctest::Approx(std::abs(corr(expected[static_cast<std::size_t>(m)]))).epsilon(1e-10));
    CHECK(path.knots.back().lambda == 0.0);

    // coefficients at each knot are soft-thresholded correlations
    for (const auto& knot : path.knots) {
        const Eigen::VectorXd oracle = oracles::soft_threshold_fit(X, y, knot.lambda);
        CHECK((knot.coeffs - oracle).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("lars_path on a zero target is a single all-zero knot") {
    Rng rng(102);
    const Eigen::MatrixXd X = random_matrix(rng, 20, 5);
    const SelectionPath path = lars_path(X, Eigen::VectorXd::Zero(20));
    REQUIRE(path.knots.size() == 1);
    CHECK(path.knots[0].lambda == 0.0);
    CHECK(path.knots[0].coeffs.cwiseAbs().maxCoeff() == 0.0);
    CHECK(path.entry_order.empty());
}

TEST_CASE("lars_path knots satisfy the KKT certificate") {
    Rng rng(103);
    for (int rep = 0; rep < 20; ++rep) {
        const Eigen::MatrixXd X = random_matrix(rng, 60, 8);
        const Eigen::VectorXd beta_true = random_vector(rng, 8).unaryExpr([](double v) {
            return std::abs(v) > 1.0 ? v : 0.0;
        });
        const Eigen::VectorXd y = X * beta_true + 0.5 * random_vector(rng, 60);
        const SelectionPath path = lars_path(X, y);
        CHECK(kkt_max_violation(path, X, y) < 1e-8);

        // penalties strictly decreasing
        for (std::size_t m = 1; m < path.knots.size(); ++m)
            CHECK(path.knots[m].lambda < path.knots[m - 1].lambda);
    }
}

TEST_CASE("lars_path final knot is the least-squares fit when T > k") {
    Rng rng(104);
    const Eigen::MatrixXd X = random_matrix(rng, 50, 7);
    const Eigen::VectorXd y = random_vector(rng, 50);
    const SelectionPath path = lars_path(X, y, kRaw);
    const Eigen::VectorXd ls = X.colPivHouseholderQr().solve(y);
    CHECK((path.final_knot().coeffs - ls).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("lasso drop handling keeps the certificate valid") {
    // scan a few correlated instances until one produces a drop event
    Rng rng(105);
    bool found_drop = false;
    for (int rep = 0; rep < 300 && !found_drop; ++rep) {
        Eigen::MatrixXd X = random_matrix(rng, 25, 6);
        X.col(0) = 0.9 * X.col(1) + 0.4 * X.col(2) + 0.1 * X.col(0);
        const Eigen::VectorXd y = X * random_vector(rng, 6) + random_vector(rng, 25);
        const SelectionPath path = lars_path(X, y);
        for (std::size_t m = 1; m < path.knots.size(); ++m) {
            if (path.knots[m].active.size() < path.knots[m - 1].active.size()) {
                found_drop = true;
                CHECK(kkt_max_violation(path, X, y) < 1e-8);
                // the dropped coordinate is exactly zero at the drop knot
                for (const int j : path.knots[m - 1].active) {
                    const bool still =
                        std::find(path.knots[m].active.begin(), path.knots[m].active.end(), j) !=
                        path.knots[m].active.end();
                    if (!still) CHECK(path.knots[m].coeffs(j) == 0.0);
                }
                break;
            }
        }
    }
    CHECK(found_drop);
}

TEST_CASE("plain LARS never removes variables") {
    Rng rng(106);
    for (int rep = 0; rep < 50; ++rep) {
        Eigen::MatrixXd X = random_matrix(rng, 25, 6);
        X.col(0) = 0.9 * X.col(1) + 0.4 * X.col(2) + 0.1 * X.col(0);
        const Eigen::VectorXd y = X * random_vector(rng, 6) + random_vector(rng, 25);
        const SelectionPath path = lars_path(X, y, {}, false);
        for (std::size_t m = 1; m < path.knots.size(); ++m)
            CHECK(path.knots[m].active.size() >= path.knots[m - 1].active.size());
    }
}

TEST_CASE("lars_path rejects degenerate columns") {
    Eigen::MatrixXd X = Eigen::MatrixXd::Random(10, 3);
    X.col(2).setConstant(4.2);  // zero variance column
    CHECK_THROWS_AS(lars_path(X, Eigen::VectorXd::Random(10)), DegenerateDesign);
}

TEST_CASE("coord_descent at lambda=0 solves least squares") {
    Rng rng(111);
    const Eigen::MatrixXd X = random_matrix(rng, 40, 6);
    const Eigen::VectorXd y = random_vector(rng, 40);
    const CdResult r = coord_descent(X, y, 0.0, kRaw);
    CHECK(r.converged);
    const Eigen::VectorXd ls = X.colPivHouseholderQr().solve(y);
    CHECK((r.coeffs - ls).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("coord_descent zeroes out above lambda_max") {
    Rng rng(112);
    const Eigen::MatrixXd X = random_matrix(rng, 30, 5);
    const Eigen::VectorXd y = random_vector(rng, 30);
    const double lambda_max = (X.transpose() * y).cwiseAbs().maxCoeff() / 30.0;
    const CdResult r = coord_descent(X, y, lambda_max * 1.0000001, kRaw);
    CHECK(r.coeffs.cwiseAbs().maxCoeff() == 0.0);

    const CdResult below = coord_descent(X, y, lambda_max * 0.99, kRaw);
    CHECK(below.coeffs.cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("coord_descent agrees with lars knots at matched penalties") {
    Rng rng(113);
    for (int rep = 0; rep < 10; ++rep) {
        const Eigen::MatrixXd X = random_matrix(rng, 50, 8);
        const Eigen::VectorXd y = X * random_vector(rng, 8) + random_vector(rng, 50);
        const SelectionPath path = lars_path(X, y);
        for (const auto& knot : path.knots) {
            const CdResult cd = coord_descent(X, y, knot.lambda / 50.0);
            CHECK((cd.coeffs - knot.coeffs).cwiseAbs().maxCoeff() < 1e-6);
        }
    }
}

TEST_CASE("path interpolation matches coord_descent between knots") {
    Rng rng(114);
    const Eigen::MatrixXd X = random_matrix(rng, 60, 10);
    const Eigen::VectorXd y = X * random_vector(rng, 10) + random_vector(rng, 60);
    const SelectionPath path = lars_path(X, y);
    const double lambda_hi = path.knots.front().lambda;
    for (int i = 1; i <= 5; ++i) {
        const double lambda = lambda_hi * i / 6.0;
        const Eigen::VectorXd interp = path_coeffs_at(path, lambda);
        const CdResult cd = coord_descent(X, y, lambda / 60.0);
        CHECK((interp - cd.coeffs).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("elastic_net_solve reduces to coord_descent at lambda2=0") {
    Rng rng(121);
    const Eigen::MatrixXd X = random_matrix(rng, 30, 5);
    const Eigen::VectorXd y = random_vector(rng, 30);
    ElasticNetConfig config;
    config.lambda1 = 0.8;
    config.lambda2 = 0.0;
    const Eigen::VectorXd enet = elastic_net_solve(X, y, config);
    const Eigen::VectorXd cd = coord_descent(X, y, 0.8 / (2.0 * 30.0)).coeffs;
    CHECK((enet - cd).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("elastic_net_solve with lambda1=0 and identity omega is ridge") {
    Rng rng(122);
    const Eigen::MatrixXd X = random_matrix(rng, 30, 5);
    const Eigen::VectorXd y = random_vector(rng, 30);
    ElasticNetConfig config;
    config.lambda1 = 0.0;
    config.lambda2 = 2.5;
    const Eigen::VectorXd enet = elastic_net_solve(X, y, config, kRaw);
    const Eigen::VectorXd oracle = oracles::ridge(X, y, 2.5);
    CHECK((enet - oracle).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("elastic_net_solve with a general omega matches the normal equations") {
    Rng rng(123);
    const Eigen::MatrixXd X = random_matrix(rng, 40, 5);
    const Eigen::VectorXd y = random_vector(rng, 40);
    const Eigen::MatrixXd A = random_matrix(rng, 5, 5);
    ElasticNetConfig config;
    config.lambda1 = 0.0;
    config.lambda2 = 1.7;
    config.omega = A * A.transpose() + 0.5 * Eigen::MatrixXd::Identity(5, 5);

    // augmented normal equations: (X'X + l2 * omega) b = X'y
    const Eigen::MatrixXd lhs = X.transpose() * X + config.lambda2 * config.omega;
    const Eigen::VectorXd oracle = lhs.inverse() * (X.transpose() * y);

    const Eigen::VectorXd enet = elastic_net_solve(X, y, config, kRaw);
    CHECK((enet - oracle).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("elastic_net_solve rejects a non-SPD omega") {
    ElasticNetConfig config;
    config.lambda1 = 0.0;
    config.lambda2 = 1.0;
    config.omega = -Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(
        elastic_net_solve(Eigen::MatrixXd::Random(10, 3), Eigen::VectorXd::Random(10), config),
        BadOmega);
}

TEST_CASE("sbr_select with an overwhelming penalty returns the empty support") {
    Rng rng(131);
    const Eigen::MatrixXd X = random_matrix(rng, 20, 6);
    const Eigen::VectorXd y = random_vector(rng, 20);
    SpikeSlabConfig config;
    config.a = 1e-8;
    config.sigma2 = 1.0;
    config.sigma_e2 = y.squaredNorm();
    const SbrResult r = sbr_select(X, y, config, kRaw);
    CHECK(r.support.empty());
    CHECK(r.coeffs.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sbr_select at a=1/2 is the full-support ridge") {
    Rng rng(132);
    const Eigen::MatrixXd X = random_matrix(rng, 30, 5);
    const Eigen::VectorXd y = X * random_vector(rng, 5) + 0.1 * random_vector(rng, 30);
    SpikeSlabConfig config;
    config.a = 0.5;
    config.sigma2 = 2.0;
    config.sigma_e2 = 0.5;
    const SbrResult r = sbr_select(X, y, config, kRaw);
    CHECK(r.support.size() == 5);
    const Eigen::VectorXd oracle = oracles::ridge(X, y, config.sigma_e2 / config.sigma2);
    CHECK((r.coeffs - oracle).cwiseAbs().maxCoeff() < 1e-9);
    CHECK_FALSE(r.negative_penalty);
}

TEST_CASE("sbr_select flags the inclusion-rewarding regime") {
    Rng rng(133);
    const Eigen::MatrixXd X = random_matrix(rng, 20, 4);
    const Eigen::VectorXd y = random_vector(rng, 20);
    SpikeSlabConfig config;
    config.a = 0.7;
    const SbrResult r = sbr_select(X, y, config, kRaw);
    CHECK(r.negative_penalty);
    CHECK(r.support.size() == 4);  // every inclusion is rewarded
}

TEST_CASE("sbr_select matches exhaustive search on k=8 instances") {
    Rng rng(134);
    int exact = 0;
    const int reps = 25;
    for (int rep = 0; rep < reps; ++rep) {
        const Eigen::MatrixXd X = random_matrix(rng, 25, 8);
        Eigen::VectorXd beta = Eigen::VectorXd::Zero(8);
        for (int j = 0; j < 3; ++j) beta(static_cast<int>(rng.raw() % 8)) = 2.0 * rng.normal();
        const Eigen::VectorXd y = X * beta + 0.5 * random_vector(rng, 25);
        SpikeSlabConfig config;
        config.a = 0.15;
        config.sigma2 = 4.0;
        config.sigma_e2 = 0.25 * y.squaredNorm() / 25.0;

        const SbrResult r = sbr_select(X, y, config, kRaw);
        const auto best = oracles::exhaustive_subset(X, y, config.sigma_e2 / config.sigma2,
                                                     2.0 * config.sigma_e2 *
                                                         std::log((1.0 - config.a) / config.a));
        CHECK(r.objective >= best.objective - 1e-9 * std::max(1.0, best.objective));
        if (std::abs(r.objective - best.objective) <= 1e-9 * std::max(1.0, best.objective)) ++exact;
    }
    CHECK(exact >= reps - 1);  // local optima are rare at this size
}

TEST_CASE("sbr_select support is monotone in the sparsity penalty") {
    Rng rng(135);
    const Eigen::MatrixXd X = random_matrix(rng, 40, 10);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(10);
    beta(1) = 2.0;
    beta(4) = -1.5;
    beta(7) = 1.0;
    const Eigen::VectorXd y = X * beta + 0.3 * random_vector(rng, 40);

    std::size_t prev = 11;
    for (const double a : {0.45, 0.3, 0.2, 0.1, 0.05, 0.01, 0.001}) {
        SpikeSlabConfig config;
        config.a = a;
        config.sigma2 = 4.0;
        config.sigma_e2 = 0.09;
        const SbrResult r = sbr_select(X, y, config, kRaw);
        CHECK(r.support.size() <= prev);
        prev = r.support.size();
    }
}

TEST_CASE("sbr_select validates its configuration") {
    const Eigen::MatrixXd X = Eigen::MatrixXd::Random(10, 3);
    const Eigen::VectorXd y = Eigen::VectorXd::Random(10);
    SpikeSlabConfig config;
    config.a = 0.0;
    CHECK_THROWS_AS(sbr_select(X, y, config), BadConfig);
    config.a = 0.2;
    config.sigma2 = -1.0;
    CHECK_THROWS_AS(sbr_select(X, y, config), BadConfig);
}

TEST_CASE("markowitz_qp two-asset symmetric case") {
    Moments m;
    m.mu = Eigen::Vector2d(0.1, 0.2);
    m.sigma = Eigen::Matrix2d::Identity();
    const PortfolioWeights w = markowitz_qp(m, 0.15, false, {"X", "Y"});
    CHECK(w.weights(0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(w.weights(1) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("markowitz_qp long-only boundary target concentrates on the argmax") {
    Moments m;
    m.mu = Eigen::Vector3d(0.05, 0.2, 0.1);
    m.sigma = Eigen::Matrix3d::Identity() * 0.5;
    const PortfolioWeights w = markowitz_qp(m, 0.2, true, {"A", "B", "C"});
    CHECK(w.weights(1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(w.weights(0)) < 1e-9);
    CHECK(std::abs(w.weights(2)) < 1e-9);
}

TEST_CASE("markowitz_qp equality case satisfies constraints and stationarity") {
    Rng rng(141);
    for (int rep = 0; rep < 20; ++rep) {
        const int p = 5;
        const Eigen::MatrixXd A = random_matrix(rng, p, p);
        Moments m;
        m.sigma = A * A.transpose() + 0.5 * Eigen::MatrixXd::Identity(p, p);
        m.mu = random_vector(rng, p);
        const double rho = m.mu.mean();
        const PortfolioWeights w = markowitz_qp(m, rho, false, {});

        CHECK(std::abs(w.weights.sum() - 1.0) < 1e-10);
        CHECK(std::abs(m.mu.dot(w.weights) - rho) < 1e-10);

        // Sigma w must lie in span{mu, 1}
        Eigen::MatrixXd basis(p, 2);
        basis.col(0) = m.mu;
        basis.col(1).setOnes();
        const Eigen::VectorXd g = m.sigma * w.weights;
        const Eigen::VectorXd proj = basis * (basis.transpose() * basis).ldlt().solve(
                                                 basis.transpose() * g);
        CHECK((g - proj).cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, g.norm()));
    }
}

TEST_CASE("markowitz_qp long-only matches the projected-gradient oracle") {
    Rng rng(142);
    for (int rep = 0; rep < 3; ++rep) {
        const int p = 4;
        const Eigen::MatrixXd A = random_matrix(rng, p, p);
        Moments m;
        m.sigma = A * A.transpose() + 0.5 * Eigen::MatrixXd::Identity(p, p);
        m.mu = random_vector(rng, p).cwiseAbs();
        const double rho = 0.6 * m.mu.minCoeff() + 0.4 * m.mu.maxCoeff();

        const PortfolioWeights w = markowitz_qp(m, rho, true, {});
        CHECK((w.weights.array() >= -1e-10).all());
        CHECK(std::abs(w.weights.sum() - 1.0) < 1e-8);
        CHECK(std::abs(m.mu.dot(w.weights) - rho) < 1e-8);

        const double objective = w.weights.transpose() * m.sigma * w.weights;
        const double oracle = oracles::projected_gradient_qp_objective(m.sigma, m.mu, rho);
        CHECK(objective <= oracle + 1e-6);
        CHECK(oracle <= objective + 1e-4);
    }
}

TEST_CASE("markowitz_qp rejects unreachable long-only targets") {
    Moments m;
    m.mu = Eigen::Vector2d(0.1, 0.2);
    m.sigma = Eigen::Matrix2d::Identity();
    CHECK_THROWS_AS(markowitz_qp(m, 0.5, true, {}), InfeasibleTarget);
    CHECK_THROWS_AS(markowitz_qp(m, -0.5, true, {}), InfeasibleTarget);
}

TEST_CASE("knot_by_cardinality picks the first matching knot") {
    Rng rng(151);
    const Eigen::MatrixXd X = random_matrix(rng, 50, 8);
    const Eigen::VectorXd y = X * random_vector(rng, 8) + random_vector(rng, 50);
    const SelectionPath path = lars_path(X, y);
    const int idx = knot_by_cardinality(path, 3);
    REQUIRE(idx >= 0);
    CHECK(path.knots[static_cast<std::size_t>(idx)].active.size() == 3);
}
