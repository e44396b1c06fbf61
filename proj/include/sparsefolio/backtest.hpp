#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "sparsefolio/errors.hpp"
#include "sparsefolio/market_data.hpp"
#include "sparsefolio/transform.hpp"

namespace sparsefolio {

// Annualization convention for daily statistics. kPaper multiplies both the
// mean and the standard deviation by 252; kStandard uses 252 for the mean
// and sqrt(252) for the standard deviation.
enum class Convention { kPaper, kStandard };

struct BacktestReport {
    std::string label;
    double mu_ann = 0.0;
    double sigma_ann = 0.0;
    double sharpe = 0.0;
    int cardinality = 0;  // count of |w_i| > 1e-8
    std::vector<std::string> dates;
    Eigen::VectorXd daily;       // per-period portfolio returns
    Eigen::VectorXd cumulative;  // growth of 1 after each period
    Convention convention = Convention::kPaper;
};

// Evaluates a static weight vector on the test panel. Default mode re-targets
// the weights each day; `drift` lets positions compound (true buy-and-hold).
BacktestReport evaluate_portfolio(const PortfolioWeights& weights, const ReturnPanel& test,
                                  Convention convention = Convention::kPaper, bool drift = false);

PortfolioWeights equal_weight(const std::vector<std::string>& assets);

std::string comparison_table_csv(const std::vector<BacktestReport>& reports);
std::string comparison_table_text(const std::vector<BacktestReport>& reports);

using FitFn = std::function<PortfolioWeights(const ReturnPanel&)>;

// Rolling re-fit: starting after `boundary`, re-fit on the trailing `window`
// rows every `stride` test days and chain the resulting daily returns.
BacktestReport rolling_backtest(const ReturnPanel& panel, const std::string& boundary, int window,
                                int stride, const FitFn& fit, Convention convention,
                                const std::string& label);

}  // namespace sparsefolio
