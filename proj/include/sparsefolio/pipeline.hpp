#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "sparsefolio/backtest.hpp"
#include "sparsefolio/market_data.hpp"
#include "sparsefolio/mcmc_solvers.hpp"
#include "sparsefolio/path_solvers.hpp"
#include "sparsefolio/transform.hpp"

namespace sparsefolio {

enum class SolverChoice { kLars, kCd, kEnet, kSbr, kLassoGibbs, kHorseshoe, kQp, kNaive };

SolverChoice parse_solver(const std::string& name);
std::string solver_name(SolverChoice solver);

// Everything needed to turn a training panel into one portfolio.
struct FitSpec {
    SolverChoice solver = SolverChoice::kLars;
    double rho = std::numeric_limits<double>::quiet_NaN();  // NaN: grand mean of the panel
    double lambda = 0.0;  // return-constraint tilt weight
    int numeraire = 0;

    int cardinality = 5;      // lars: knot picked by active-set size
    bool plain_lars = false;  // lars: disable the drop rule

    double cd_lambda = 0.0;  // cd: l1 penalty in the 1/(2T) objective

    double lambda1 = 0.0;  // enet
    double lambda2 = 0.0;
    Eigen::MatrixXd omega;

    SpikeSlabConfig spike_slab{};   // sbr
    bool sigma_e2_auto = true;      // sbr: derive sigma_e2 from the target variance

    ChainConfig chain{};            // mcmc solvers
    SparsifyRule rule = SparsifyRule::kInterval;
    double threshold = 0.0;

    bool long_only = true;  // qp
};

PortfolioWeights fit_portfolio(const ReturnPanel& train, const FitSpec& spec);

// K-fold selection of the tilt weight over a log grid: score is the
// held-out mean squared deviation of the portfolio return from rho.
// Empty grid uses {0} plus seven decades around a correlation-scaled base.
double cross_validate_lambda(const ReturnPanel& train, const FitSpec& spec,
                             std::vector<double> grid = {}, int folds = 5);

// Resolved rho used by fit_portfolio for a given spec (grand panel mean
// when the spec leaves it NaN).
double resolve_rho(const ReturnPanel& train, const FitSpec& spec);

}  // namespace sparsefolio
