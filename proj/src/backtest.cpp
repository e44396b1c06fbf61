#include "sparsefolio/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sparsefolio {

namespace {

constexpr double kTradingDays = 252.0;
constexpr double kCardinalityTol = 1e-8;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
}

BacktestReport finish_report(std::string label, std::vector<std::string> dates,
                             Eigen::VectorXd daily, const Eigen::VectorXd& weights,
                             Convention convention) {
    BacktestReport r;
    r.label = std::move(label);
    r.dates = std::move(dates);
    r.daily = std::move(daily);
    r.convention = convention;

    const Eigen::Index T = r.daily.size();
    r.cumulative.resize(T);
    double growth = 1.0;
    for (Eigen::Index t = 0; t < T; ++t) {
        growth *= 1.0 + r.daily(t);
        r.cumulative(t) = growth;
    }

    const double mean = r.daily.mean();
    double sd = 0.0;
    if (T > 1) sd = std::sqrt((r.daily.array() - mean).square().sum() / static_cast<double>(T - 1));
    r.mu_ann = kTradingDays * mean;
    r.sigma_ann = (convention == Convention::kPaper ? kTradingDays : std::sqrt(kTradingDays)) * sd;
    r.sharpe = r.sigma_ann > 0.0 ? r.mu_ann / r.sigma_ann : 0.0;
    r.cardinality = static_cast<int>((weights.array().abs() > kCardinalityTol).count());
    return r;
}

}  // namespace

BacktestReport evaluate_portfolio(const PortfolioWeights& weights, const ReturnPanel& test,
                                  Convention convention, bool drift) {
    if (test.rows() == 0) throw EmptyTestPanel("test panel has no rows");
    if (weights.assets.empty() || weights.weights.size() == 0)
        throw EmptyAssetList("portfolio has no assets");
    if (static_cast<Eigen::Index>(weights.assets.size()) != weights.weights.size())
        throw BadConfig("weights/assets length mismatch");

    // Reorder weight entries onto the test panel's columns by ticker.
    Eigen::VectorXd w = Eigen::VectorXd::Zero(test.cols());
    for (std::size_t i = 0; i < weights.assets.size(); ++i) {
        const auto it = std::find(test.assets.begin(), test.assets.end(), weights.assets[i]);
        if (it == test.assets.end())
            throw AssetMismatch("asset " + weights.assets[i] + " missing from test panel");
        w(static_cast<Eigen::Index>(it - test.assets.begin())) = weights.weights(
            static_cast<Eigen::Index>(i));
    }

    const Eigen::Index T = test.rows();
    Eigen::VectorXd daily(T);
    if (!drift) {
        daily = test.returns * w;
    } else {
        // Positions compound: v_i holds the per-asset stake value.
        Eigen::VectorXd v = w;
        for (Eigen::Index t = 0; t < T; ++t) {
            const double total = v.sum();
            const double gain = v.dot(test.returns.row(t).transpose());
            daily(t) = gain / total;
            v.array() *= (1.0 + test.returns.row(t).transpose().array());
        }
    }
    return finish_report(weights.solver_tag.empty() ? "portfolio" : weights.solver_tag, test.dates,
                         std::move(daily), w, convention);
}

PortfolioWeights equal_weight(const std::vector<std::string>& assets) {
    if (assets.empty()) throw EmptyAssetList("equal-weight portfolio needs >= 1 asset");
    PortfolioWeights w;
    w.assets = assets;
    w.weights = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(assets.size()),
                                          1.0 / static_cast<double>(assets.size()));
    w.solver_tag = "naive";
    return w;
}

std::string comparison_table_csv(const std::vector<BacktestReport>& reports) {
    if (reports.empty()) throw BadConfig("comparison table needs >= 1 report");
    std::ostringstream os;
    os << "metric";
    for (const auto& r : reports) os << "," << r.label;
    os << "\nmu";
    for (const auto& r : reports) os << "," << fmt(r.mu_ann);
    os << "\nsigma";
    for (const auto& r : reports) os << "," << fmt(r.sigma_ann);
    os << "\nsharpe";
    for (const auto& r : reports) os << "," << fmt(r.sharpe);
    os << "\ncardinality";
    for (const auto& r : reports) os << "," << r.cardinality;
    os << "\n";
    return os.str();
}

std::string comparison_table_text(const std::vector<BacktestReport>& reports) {
    if (reports.empty()) throw BadConfig("comparison table needs >= 1 report");
    const std::vector<std::string> row_names = {"mu", "sigma", "sharpe", "cardinality"};
    std::vector<std::vector<std::string>> cells(4);
    for (const auto& r : reports) {
        cells[0].push_back(fmt(r.mu_ann));
        cells[1].push_back(fmt(r.sigma_ann));
        cells[2].push_back(fmt(r.sharpe));
        cells[3].push_back(std::to_string(r.cardinality));
    }
    std::size_t label_w = 11;
    std::vector<std::size_t> col_w;
    for (std::size_t c = 0; c < reports.size(); ++c) {
        std::size_t w = reports[c].label.size();
        for (const auto& row : cells) w = std::max(w, row[c].size());
        col_w.push_back(w);
    }
    std::ostringstream os;
    os << std::string(label_w, ' ');
    for (std::size_t c = 0; c < reports.size(); ++c) {
        os << "  ";
        os << std::string(col_w[c] - reports[c].label.size(), ' ') << reports[c].label;
    }
    os << "\n";
    for (std::size_t rix = 0; rix < row_names.size(); ++rix) {
        os << row_names[rix] << std::string(label_w - row_names[rix].size(), ' ');
        for (std::size_t c = 0; c < reports.size(); ++c) {
            os << "  " << std::string(col_w[c] - cells[rix][c].size(), ' ') << cells[rix][c];
        }
        os << "\n";
    }
    return os.str();
}

BacktestReport rolling_backtest(const ReturnPanel& panel, const std::string& boundary, int window,
                                int stride, const FitFn& fit, Convention convention,
                                const std::string& label) {
    if (window < 2) throw BadConfig("rolling window must be >= 2 rows");
    if (stride < 1) throw BadConfig("rolling stride must be >= 1");
    const auto [train0, test] = split_panel(panel, boundary);
    const Eigen::Index first_test = train0.rows();

    Eigen::VectorXd daily(test.rows());
    Eigen::VectorXd last_w;
    int last_card = 0;
    for (Eigen::Index t = 0; t < test.rows(); t += stride) {
        const Eigen::Index end = first_test + t;  // exclusive end of the training slice
        const Eigen::Index begin = std::max<Eigen::Index>(0, end - window);
        ReturnPanel slice{{panel.dates.begin() + begin, panel.dates.begin() + end},
                          panel.assets,
                          panel.returns.middleRows(begin, end - begin)};
        const PortfolioWeights w = fit(slice);
        Eigen::VectorXd wv = Eigen::VectorXd::Zero(panel.cols());
        for (std::size_t i = 0; i < w.assets.size(); ++i) {
            const auto it = std::find(panel.assets.begin(), panel.assets.end(), w.assets[i]);
            if (it == panel.assets.end())
                throw AssetMismatch("asset " + w.assets[i] + " missing from panel");
            wv(static_cast<Eigen::Index>(it - panel.assets.begin())) =
                w.weights(static_cast<Eigen::Index>(i));
        }
        const Eigen::Index hold = std::min<Eigen::Index>(stride, test.rows() - t);
        daily.segment(t, hold) = test.returns.middleRows(t, hold) * wv;
        last_w = wv;
        last_card = static_cast<int>((wv.array().abs() > kCardinalityTol).count());
    }
    BacktestReport r = finish_report(label, test.dates, std::move(daily),
                                     last_w.size() ? last_w : Eigen::VectorXd::Zero(panel.cols()),
                                     convention);
    r.cardinality = last_card;
    return r;
}

}  // namespace sparsefolio
