#include "sparsefolio/views.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sparsefolio {

namespace {

void validate_views(const ViewSet& views, Eigen::Index p) {
    const Eigen::Index m = views.pick.rows();
    if (m < 1) throw BadConfig("need at least one view");
    if (views.pick.cols() != p) throw BadConfig("pick matrix columns must match asset count");
    if (views.q.size() != m) throw BadConfig("q length must match view count");
    if (views.omega.rows() != m || views.omega.cols() != m)
        throw BadConfig("omega must be m x m");
    if (!(views.tau > 0.0)) throw BadConfig("tau must be positive");
    if ((views.omega - views.omega.transpose()).cwiseAbs().maxCoeff() >
        1e-8 * std::max(1.0, views.omega.cwiseAbs().maxCoeff()))
        throw BadConfig("omega must be symmetric");
}

Eigen::LLT<Eigen::MatrixXd> spd_factor(const Eigen::MatrixXd& m, const char* what) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) throw SingularSystem(std::string(what) + " not positive definite");
    return llt;
}

}  // namespace

Equilibrium implied_returns(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& market_weights,
                            double market_sharpe) {
    if (sigma.rows() != sigma.cols()) throw BadConfig("sigma must be square");
    if (market_weights.size() != sigma.rows())
        throw BadConfig("market weights length must match sigma");
    if (!(market_sharpe > 0.0)) throw BadConfig("market sharpe must be positive");
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw SingularCovariance("sigma must be positive definite");

    Equilibrium eq;
    eq.market_sharpe = market_sharpe;
    eq.market_weights = market_weights;
    eq.pi = market_sharpe * sigma * market_weights;
    return eq;
}

BlPosterior bl_update(const Equilibrium& equilibrium, const Eigen::MatrixXd& sigma,
                      const ViewSet& views) {
    const Eigen::Index p = sigma.rows();
    if (sigma.cols() != p) throw BadConfig("sigma must be square");
    if (equilibrium.pi.size() != p) throw BadConfig("equilibrium size must match sigma");
    validate_views(views, p);

    const auto prior_llt = spd_factor(views.tau * sigma, "tau*sigma");
    const auto omega_llt = spd_factor(views.omega, "view omega");

    // (tau sigma)^{-1} and P' omega^{-1} P via factorized solves.
    const Eigen::MatrixXd prior_prec = prior_llt.solve(Eigen::MatrixXd::Identity(p, p));
    const Eigen::MatrixXd omega_inv_p = omega_llt.solve(views.pick);
    Eigen::MatrixXd posterior_prec = prior_prec + views.pick.transpose() * omega_inv_p;
    posterior_prec = 0.5 * (posterior_prec + posterior_prec.transpose()).eval();

    const auto post_llt = spd_factor(posterior_prec, "posterior precision");
    BlPosterior out;
    out.cov = post_llt.solve(Eigen::MatrixXd::Identity(p, p));
    out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
    out.mean = post_llt.solve(prior_prec * equilibrium.pi +
                              views.pick.transpose() * omega_llt.solve(views.q));
    if (!out.mean.allFinite()) throw SingularSystem("posterior mean is non-finite");
    return out;
}

ElasticNetConfig views_to_penalty(const ViewSet& views, double strength) {
    if (!(strength >= 0.0)) throw BadConfig("strength must be >= 0");
    const Eigen::Index p = views.pick.cols();
    validate_views(views, p);

    ElasticNetConfig config;
    config.lambda1 = 0.0;
    config.lambda2 = strength;
    if (strength == 0.0) return config;  // penalty-free: plain l1 fallback

    const auto omega_llt = spd_factor(views.omega, "view omega");
    Eigen::MatrixXd kernel = views.pick.transpose() * omega_llt.solve(views.pick);
    kernel = 0.5 * (kernel + kernel.transpose()).eval();
    const double eps = 1e-8 * kernel.trace() / static_cast<double>(p);
    kernel.diagonal().array() += std::max(eps, 1e-300);
    config.omega = std::move(kernel);
    return config;
}

ViewSet load_views(const std::string& path, const std::vector<std::string>& assets, double tau) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);
    const Eigen::Index p = static_cast<Eigen::Index>(assets.size());

    auto asset_index = [&](const std::string& name, long line) {
        const auto it = std::find(assets.begin(), assets.end(), name);
        if (it == assets.end())
            throw MalformedRow(line, "unknown ticker '" + name + "' in views file");
        return static_cast<Eigen::Index>(it - assets.begin());
    };

    std::vector<Eigen::VectorXd> rows;
    std::vector<double> values;
    std::vector<double> confidences;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string type, names, value_s, conf_s;
        if (!std::getline(ss, type, ',') || !std::getline(ss, names, ',') ||
            !std::getline(ss, value_s, ',') || !std::getline(ss, conf_s))
            throw MalformedRow(line_no, "expected type,assets,value,confidence");

        double value = 0.0;
        double conf = 0.0;
        try {
            value = std::stod(value_s);
            conf = std::stod(conf_s);
        } catch (const std::exception&) {
            throw MalformedRow(line_no, "non-numeric value or confidence");
        }
        if (!(conf > 0.0)) throw MalformedRow(line_no, "confidence (variance) must be positive");

        Eigen::VectorXd pick = Eigen::VectorXd::Zero(p);
        if (type == "absolute") {
            pick(asset_index(names, line_no)) = 1.0;
        } else if (type == "relative") {
            const auto sep = names.find(':');
            if (sep == std::string::npos)
                throw MalformedRow(line_no, "relative view needs TICKER_A:TICKER_B");
            pick(asset_index(names.substr(0, sep), line_no)) = 1.0;
            pick(asset_index(names.substr(sep + 1), line_no)) = -1.0;
        } else {
            throw MalformedRow(line_no, "view type must be absolute or relative");
        }
        rows.push_back(std::move(pick));
        values.push_back(value);
        confidences.push_back(conf);
    }
    if (rows.empty()) throw EmptyPanel(path + " contains no views");

    ViewSet views;
    const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
    views.pick.resize(m, p);
    views.q.resize(m);
    views.omega = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        views.pick.row(i) = rows[static_cast<std::size_t>(i)].transpose();
        views.q(i) = values[static_cast<std::size_t>(i)];
        views.omega(i, i) = confidences[static_cast<std::size_t>(i)];
    }
    views.tau = tau;
    return views;
}

}  // namespace sparsefolio
