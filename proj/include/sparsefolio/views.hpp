#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sparsefolio/errors.hpp"
#include "sparsefolio/path_solvers.hpp"

namespace sparsefolio {

// Linear beliefs about expected returns: P * pi_new ~ N(q, tau * omega).
struct ViewSet {
    Eigen::MatrixXd pick;   // m x p, one view per row
    Eigen::VectorXd q;      // m
    Eigen::MatrixXd omega;  // m x m SPD view uncertainty
    double tau = 1.0;       // prior strength on the equilibrium
};

struct Equilibrium {
    Eigen::VectorXd pi;
    double market_sharpe = 0.0;
    Eigen::VectorXd market_weights;
};

struct BlPosterior {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
};

// pi = market_sharpe * sigma * market_weights.
Equilibrium implied_returns(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& market_weights,
                            double market_sharpe);

// Posterior over expected returns:
//   cov  = ((tau sigma)^{-1} + P' omega^{-1} P)^{-1}
//   mean = cov ((tau sigma)^{-1} pi + P' omega^{-1} q)
BlPosterior bl_update(const Equilibrium& equilibrium, const Eigen::MatrixXd& sigma,
                      const ViewSet& views);

// Projects the view-space uncertainty into a coefficient-space penalty
// kernel P' omega^{-1} P, completed to SPD with a trace-scaled jitter.
ElasticNetConfig views_to_penalty(const ViewSet& views, double strength);

// CSV rows `type,assets,value,confidence`; type is `absolute` (one ticker)
// or `relative` (TICKER_A:TICKER_B, A outperforms B). confidence is the
// view variance and fills the omega diagonal.
ViewSet load_views(const std::string& path, const std::vector<std::string>& assets, double tau);

}  // namespace sparsefolio
