#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "sparsefolio/errors.hpp"
#include "sparsefolio/market_data.hpp"

namespace sparsefolio {

struct Moments {
    Eigen::VectorXd mu;     // per-period mean returns, length p
    Eigen::MatrixXd sigma;  // p x p sample covariance (divisor T-1)
};

// p asset weights summing to one. Shorts are permitted.
struct PortfolioWeights {
    Eigen::VectorXd weights;
    std::vector<std::string> assets;
    std::string solver_tag;
    std::map<std::string, std::string> hyperparams;
};

// Regression form of the allocation problem after budget-constraint
// elimination and the expected-return tilt. Column j of `design` is
// R_asset(j) - R_numeraire where asset(j) runs over the non-numeraire
// assets in panel order; solved coefficients are their weights and the
// numeraire weight is recovered as 1 - sum.
struct ReducedProblem {
    Eigen::MatrixXd design;      // T x (p-1)
    Eigen::VectorXd target;      // tilted target, length T
    Eigen::VectorXd mu_reduced;  // mu_i - mu_numeraire over design columns
    std::vector<std::string> assets;  // full list, length p
    int numeraire = 0;
    double lambda = 0.0;  // return-constraint dual weight
    double rho = 0.0;     // target per-period portfolio return
};

// Column/target affine rescaling used by the solvers: columns centered and
// scaled to unit l2 norm, target centered. Coefficients of the scaled
// problem map back to raw scale by beta_raw = beta_std / col_scale (no
// intercept is carried).
struct Standardizer {
    Eigen::VectorXd col_mean;
    Eigen::VectorXd col_scale;
    double target_mean = 0.0;

    static Standardizer identity(Eigen::Index k);
    static Standardizer fit(const Eigen::MatrixXd& design, const Eigen::VectorXd& target);

    Eigen::MatrixXd apply_design(const Eigen::MatrixXd& design) const;
    Eigen::VectorXd apply_target(const Eigen::VectorXd& target) const;
    Eigen::VectorXd to_raw(const Eigen::VectorXd& std_coeffs) const;
    Eigen::VectorXd to_std(const Eigen::VectorXd& raw_coeffs) const;
    bool has_degenerate_column() const;
};

Moments sample_moments(const ReturnPanel& panel);

// rho_tilde = X (X^T X)^{-1} (X^T y - lambda * mu_reduced), computed through
// a column-pivoted QR of X; ridge jitter is applied to the normal equations
// when the triangular factor's condition estimate exceeds 1e12.
Eigen::VectorXd conjugate_tilt(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                               const Eigen::VectorXd& mu_reduced, double lambda);

ReducedProblem reduce_problem(const ReturnPanel& panel, double rho, double lambda,
                              int numeraire = 0);

PortfolioWeights recover_weights(const Eigen::VectorXd& coeffs, int numeraire,
                                 const std::vector<std::string>& assets);

// Plain-text matrix dump of a ReducedProblem for debugging.
std::string dump_problem(const ReducedProblem& problem);

}  // namespace sparsefolio
