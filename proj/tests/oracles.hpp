#pragma once

// Independent reference implementations used only by tests. These solve the
// same problems through different routes (dense inverses, enumeration,
// projected gradient) than the library code they check.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace oracles {

// Ridge estimate via explicit dense inverse.
inline Eigen::VectorXd ridge(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda2) {
    const Eigen::Index k = X.cols();
    Eigen::MatrixXd gram = X.transpose() * X + lambda2 * Eigen::MatrixXd::Identity(k, k);
    return gram.inverse() * (X.transpose() * y);
}

// Soft-threshold solution for an orthonormal design:
// beta_j(lambda) = sign(c_j) * max(|c_j| - lambda, 0) with c = X'y.
inline Eigen::VectorXd soft_threshold_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                          double lambda) {
    const Eigen::VectorXd c = X.transpose() * y;
    Eigen::VectorXd beta(c.size());
    for (Eigen::Index j = 0; j < c.size(); ++j) {
        const double mag = std::max(0.0, std::abs(c(j)) - lambda);
        beta(j) = c(j) >= 0.0 ? mag : -mag;
    }
    return beta;
}

struct SubsetSearch {
    double objective = std::numeric_limits<double>::infinity();
    std::vector<int> support;
};

// Exhaustive minimization of
//   ||y - X_S a||^2 + kappa ||a||^2 + theta |S|
// over all 2^k supports, with the ridge fit per support done by dense solve.
inline SubsetSearch exhaustive_subset(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                      double kappa, double theta) {
    const int k = static_cast<int>(X.cols());
    SubsetSearch best;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        std::vector<int> support;
        for (int j = 0; j < k; ++j)
            if (mask & (1u << j)) support.push_back(j);
        double obj;
        if (support.empty()) {
            obj = y.squaredNorm();
        } else {
            const Eigen::Index s = static_cast<Eigen::Index>(support.size());
            Eigen::MatrixXd Xs(X.rows(), s);
            for (Eigen::Index i = 0; i < s; ++i) Xs.col(i) = X.col(support[static_cast<std::size_t>(i)]);
            const Eigen::MatrixXd gram =
                Xs.transpose() * Xs + kappa * Eigen::MatrixXd::Identity(s, s);
            const Eigen::VectorXd alpha = gram.inverse() * (Xs.transpose() * y);
            obj = (y - Xs * alpha).squaredNorm() + kappa * alpha.squaredNorm() +
                  theta * static_cast<double>(s);
        }
        if (obj < best.objective) {
            best.objective = obj;
            best.support = support;
        }
    }
    return best;
}

// Projected-gradient minimization of w' Sigma w over the constraint set
// {mu'w = rho, 1'w = 1, w >= 0}, with projection onto the affine part and
// clipping plus renormalized feasibility repair steps.
inline double projected_gradient_qp_objective(const Eigen::MatrixXd& sigma,
                                              const Eigen::VectorXd& mu, double rho,
                                              int iters = 200000, double step = 1e-2) {
    const Eigen::Index p = mu.size();
    Eigen::MatrixXd A(2, p);
    A.row(0) = mu.transpose();
    A.row(1).setOnes();
    Eigen::Vector2d b(rho, 1.0);
    const Eigen::MatrixXd AAt_inv = (A * A.transpose()).inverse();
    auto project_affine = [&](const Eigen::VectorXd& w) -> Eigen::VectorXd {
        return w - A.transpose() * (AAt_inv * (A * w - b));
    };

    Eigen::VectorXd w = project_affine(Eigen::VectorXd::Constant(p, 1.0 / double(p)));
    w = w.cwiseMax(0.0);
    double best = std::numeric_limits<double>::infinity();
    for (int it = 0; it < iters; ++it) {
        const Eigen::VectorXd grad = 2.0 * (sigma * w);
        w -= step * grad;
        // alternate projections onto the affine set and the positive orthant
        for (int rep = 0; rep < 50; ++rep) {
            w = project_affine(w);
            if ((w.array() >= -1e-12).all()) break;
            w = w.cwiseMax(0.0);
        }
        const double viol = (A * w - b).cwiseAbs().maxCoeff();
        if (viol < 1e-8 && (w.array() >= -1e-10).all()) {
            best = std::min(best, double(w.transpose() * sigma * w));
        }
    }
    return best;
}

// Interpolation-free quantile of a copy of the data (type-7).
inline double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 1) return v[0];
    const double h = q * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, n - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace oracles
