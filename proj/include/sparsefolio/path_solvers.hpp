#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sparsefolio/errors.hpp"
#include "sparsefolio/transform.hpp"

namespace sparsefolio {

struct SolverOptions {
    // Center columns / target and scale columns to unit norm before solving;
    // coefficients are mapped back to the raw scale of the inputs.
    bool standardize = true;
};

// One point of the l1 path: the penalty, the equicorrelation set, and the
// coefficients (raw input scale) at that penalty.
struct PathKnot {
    double lambda = 0.0;
    std::vector<int> active;
    Eigen::VectorXd coeffs;
};

// Ordered lasso path. Penalties are strictly decreasing; `lambda` lives in
// the solver's working coordinates (standardized when options say so, with
// the scaler recorded here).
struct SelectionPath {
    std::vector<PathKnot> knots;
    std::vector<int> entry_order;  // column indices by first activation
    Standardizer scaler;

    const PathKnot& final_knot() const { return knots.back(); }
};

// Full lasso-LARS path with drop handling. `lasso_mode = false` gives plain
// LARS (variables never leave the active set).
SelectionPath lars_path(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                        const SolverOptions& options = {}, bool lasso_mode = true);

// Max violation of the per-knot stationarity conditions
// |X_j^T (y - X beta)| = lambda (active) / <= lambda (inactive),
// evaluated in the path's working coordinates.
double kkt_max_violation(const SelectionPath& path, const Eigen::MatrixXd& design,
                         const Eigen::VectorXd& target);

// Piecewise-linear interpolation of coefficients at an arbitrary penalty.
Eigen::VectorXd path_coeffs_at(const SelectionPath& path, double lambda);

// First knot whose active-set size equals `cardinality`; if none matches
// exactly, the earliest knot with the closest size. -1 when the path is empty.
int knot_by_cardinality(const SelectionPath& path, int cardinality);

struct CdResult {
    Eigen::VectorXd coeffs;
    bool converged = true;
    int sweeps = 0;
};

// Cyclic coordinate descent for min ||y - X b||^2 / (2T) + lambda ||b||_1.
// Stops at max coordinate change < 1e-10 or 1e5 sweeps (converged=false).
CdResult coord_descent(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                       double lambda, const SolverOptions& options = {});

// Quadratic belief penalty plus l1. `omega` is the SPD penalty kernel in
// coefficient space (empty means identity): the objective is
// ||y - X b||^2 + lambda2 * b^T omega b + lambda1 * ||b||_1.
struct ElasticNetConfig {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    Eigen::MatrixXd omega;
};

Eigen::VectorXd elastic_net_solve(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                                  const ElasticNetConfig& config,
                                  const SolverOptions& options = {});

struct SpikeSlabConfig {
    double a = 0.1;         // prior inclusion probability, in (0,1)
    double sigma2 = 1.0;    // slab variance
    double sigma_e2 = 1.0;  // noise variance
};

struct SbrResult {
    std::vector<int> support;
    Eigen::VectorXd coeffs;  // ridge solution on the support, zero elsewhere (raw scale)
    double objective = 0.0;  // achieved value in working coordinates
    bool negative_penalty = false;  // a > 1/2: inclusion is rewarded
};

// Single Best Replacement descent on
// ||y - X_S a_S||^2 + (sigma_e2/sigma2)||a||^2 + 2 sigma_e2 log((1-a)/a)|S|,
// from the empty support; stops when no single toggle lowers the objective.
// Equal improvements break toward the lower column index.
SbrResult sbr_select(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                     const SpikeSlabConfig& config, const SolverOptions& options = {});

// Markowitz baseline: min w' Sigma w  s.t.  mu' w = rho, 1' w = 1, and
// w >= 0 when long_only. Equality-only case is the closed-form
// two-multiplier KKT solve; bounds are handled by active-set iteration.
PortfolioWeights markowitz_qp(const Moments& moments, double rho, bool long_only,
                              const std::vector<std::string>& assets);

}  // namespace sparsefolio
