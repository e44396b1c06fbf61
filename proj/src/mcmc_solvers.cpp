#include "sparsefolio/mcmc_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sparsefolio/rng.hpp"

namespace sparsefolio {

namespace {

constexpr double kScaleFloor = 1e-12;
constexpr double kScaleCeil = 1e12;

double clamp_scale(double v) { return std::min(kScaleCeil, std::max(kScaleFloor, v)); }

void validate_chain(const ChainConfig& config) {
    if (config.n_iter <= 0) throw BadConfig("n_iter must be positive");
    if (config.burn_in < 0 || config.burn_in >= config.n_iter)
        throw BadConfig("burn_in must lie in [0, n_iter)");
    if (config.thin < 1) throw BadConfig("thin must be >= 1");
}

struct GibbsProblem {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    Standardizer scaler;
    Eigen::MatrixXd xtx;
    Eigen::VectorXd xty;
    Eigen::Index n = 0;
    Eigen::Index p = 0;
};

GibbsProblem prepare(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                     const GibbsOptions& options) {
    if (design.rows() != target.size()) throw BadConfig("design rows must match target length");
    if (design.rows() < 2) throw TooFewRows("samplers need T >= 2");
    GibbsProblem g;
    if (options.standardize) {
        g.scaler = Standardizer::fit(design, target);
        if (g.scaler.has_degenerate_column())
            throw DegenerateDesign("zero-norm column after standardization");
        g.X = g.scaler.apply_design(design);
        g.y = g.scaler.apply_target(target);
    } else {
        g.scaler = Standardizer::identity(design.cols());
        g.X = design;
        g.y = target;
    }
    g.n = g.X.rows();
    g.p = g.X.cols();
    g.xtx = g.X.transpose() * g.X;
    g.xty = g.X.transpose() * g.y;
    return g;
}

// w | . ~ N(A^{-1} X'y, sigma2 A^{-1}) with A = X'X + diag(prior_precision).
Eigen::VectorXd draw_coefficients(const GibbsProblem& g, const Eigen::VectorXd& prior_precision,
                                  double sigma2, Rng& rng) {
    Eigen::MatrixXd A = g.xtx;
    A.diagonal() += prior_precision;
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
        throw NumericalOverflow("coefficient conditional not positive definite");
    const Eigen::VectorXd mean = llt.solve(g.xty);
    Eigen::VectorXd z(g.p);
    for (Eigen::Index j = 0; j < g.p; ++j) z(j) = rng.normal();
    const Eigen::VectorXd noise =
        llt.matrixU().solve(z) * std::sqrt(sigma2);
    return mean + noise;
}

[[noreturn]] void overflow(const std::string& sampler, int sweep, double sigma2,
                           const Eigen::VectorXd& w) {
    std::ostringstream os;
    os << sampler << " sweep " << sweep << ": non-finite state (sigma2=" << sigma2
       << ", max|w|=" << w.cwiseAbs().maxCoeff() << ")";
    throw NumericalOverflow(os.str());
}

int retained_count(const ChainConfig& c) {
    return (c.n_iter - c.burn_in + c.thin - 1) / c.thin;
}

}  // namespace

PosteriorDraws bayesian_lasso_gibbs(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                                    const ChainConfig& config, const GibbsOptions& options) {
    validate_chain(config);
    const GibbsProblem g = prepare(design, target, options);
    const Eigen::Index n = g.n;
    const Eigen::Index p = g.p;
    Rng rng(config.seed);

    // Ridge-based initialization: w = (X'X + I)^{-1} X'y, sigma2 = ||q||^2/n,
    // tau_j^2 = w_j^2, lambda = p * sqrt(sigma2) / ||w||_1.
    Eigen::MatrixXd init_gram = g.xtx;
    init_gram.diagonal().array() += 1.0;
    Eigen::VectorXd w = init_gram.ldlt().solve(g.xty);
    const Eigen::VectorXd q = g.y - g.X * w;
    double sigma2 = options.freeze_sigma2 ? options.sigma2_value
                                          : q.squaredNorm() / static_cast<double>(n);
    Eigen::VectorXd tau2 = w.array().square();
    double lambda = options.fixed_lambda > 0.0
                        ? options.fixed_lambda
                        : static_cast<double>(p) * std::sqrt(sigma2) / w.cwiseAbs().sum();
    if (options.freeze_local_scales) tau2.setConstant(options.frozen_scale);
    if (!w.allFinite() || !std::isfinite(sigma2) || !std::isfinite(lambda) || !tau2.allFinite())
        throw NumericalOverflow("lasso sampler initialization is non-finite (degenerate target?)");

    const int n_keep = retained_count(config);
    PosteriorDraws draws;
    draws.seed = config.seed;
    draws.burn_in = config.burn_in;
    draws.thin = config.thin;
    draws.samples.resize(n_keep, p);
    draws.sigma2_draws.resize(n_keep);
    Eigen::MatrixXd tau2_chain(n_keep, p);
    Eigen::MatrixXd lambda_chain(n_keep, 1);

    int kept = 0;
    for (int sweep = 0; sweep < config.n_iter; ++sweep) {
        const Eigen::VectorXd precision = tau2.cwiseMax(kScaleFloor * kScaleFloor).cwiseInverse();
        w = draw_coefficients(g, precision, sigma2, rng);

        if (!options.freeze_sigma2) {
            const double shape = static_cast<double>(n - 1) / 2.0 + static_cast<double>(p) / 2.0;
            const double rate = (g.y - g.X * w).squaredNorm() / 2.0 +
                                w.cwiseProduct(precision.cwiseProduct(w)).sum() / 2.0;
            sigma2 = rng.inv_gamma(shape, rate);
        }

        if (!options.freeze_local_scales) {
            for (Eigen::Index j = 0; j < p; ++j) {
                const double mean = std::sqrt(lambda * lambda * sigma2 / (w(j) * w(j)));
                if (!std::isfinite(mean)) overflow("bayesian_lasso_gibbs", sweep, sigma2, w);
                const double inv_tau2 = rng.inv_gaussian(mean, lambda * lambda);
                tau2(j) = 1.0 / inv_tau2;
            }
            if (options.fixed_lambda <= 0.0) {
                const double shape = static_cast<double>(p) + options.gamma_r;
                const double rate = tau2.sum() / 2.0 + options.gamma_delta;
                lambda = std::sqrt(rng.gamma(shape, rate));
            }
        }

        if (!w.allFinite() || !std::isfinite(sigma2) || !std::isfinite(lambda))
            overflow("bayesian_lasso_gibbs", sweep, sigma2, w);

        if (sweep >= config.burn_in && (sweep - config.burn_in) % config.thin == 0) {
            draws.samples.row(kept) = g.scaler.to_raw(w).transpose();
            draws.sigma2_draws(kept) = sigma2;
            tau2_chain.row(kept) = tau2.transpose();
            lambda_chain(kept, 0) = lambda;
            ++kept;
        }
    }
    draws.hyper_draws["tau2"] = std::move(tau2_chain);
    draws.hyper_draws["lambda"] = std::move(lambda_chain);
    return draws;
}

PosteriorDraws horseshoe_gibbs(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                               const ChainConfig& config, const GibbsOptions& options) {
    validate_chain(config);
    const GibbsProblem g = prepare(design, target, options);
    const Eigen::Index n = g.n;
    const Eigen::Index p = g.p;
    Rng rng(config.seed);

    Eigen::MatrixXd init_gram = g.xtx;
    init_gram.diagonal().array() += 1.0;
    Eigen::VectorXd w = init_gram.ldlt().solve(g.xty);
    double sigma2 = options.freeze_sigma2
                        ? options.sigma2_value
                        : (g.y - g.X * w).squaredNorm() / static_cast<double>(n);
    Eigen::VectorXd lambda2 = Eigen::VectorXd::Ones(p);  // local scales
    Eigen::VectorXd nu = Eigen::VectorXd::Ones(p);       // their auxiliaries
    double tau2 = 1.0;                                   // global scale
    double xi = 1.0;                                     // its auxiliary
    if (options.freeze_local_scales) {
        lambda2.setConstant(options.frozen_scale);
        tau2 = 1.0;
    }
    if (!w.allFinite() || !std::isfinite(sigma2))
        throw NumericalOverflow("horseshoe sampler initialization is non-finite");

    const int n_keep = retained_count(config);
    PosteriorDraws draws;
    draws.seed = config.seed;
    draws.burn_in = config.burn_in;
    draws.thin = config.thin;
    draws.samples.resize(n_keep, p);
    draws.sigma2_draws.resize(n_keep);
    Eigen::MatrixXd local_chain(n_keep, p);
    Eigen::MatrixXd global_chain(n_keep, 1);

    int kept = 0;
    for (int sweep = 0; sweep < config.n_iter; ++sweep) {
        const Eigen::VectorXd scale = (tau2 * lambda2.array()).matrix();
        const Eigen::VectorXd precision = scale.cwiseMax(kScaleFloor * kScaleFloor).cwiseInverse();
        w = draw_coefficients(g, precision, sigma2, rng);

        if (!options.freeze_sigma2) {
            const double shape = static_cast<double>(n + p) / 2.0;
            const double rate = (g.y - g.X * w).squaredNorm() / 2.0 +
                                w.cwiseProduct(precision.cwiseProduct(w)).sum() / 2.0;
            sigma2 = rng.inv_gamma(shape, rate);
        }

        if (!options.freeze_local_scales) {
            for (Eigen::Index j = 0; j < p; ++j) {
                lambda2(j) = clamp_scale(
                    rng.inv_gamma(1.0, 1.0 / nu(j) + w(j) * w(j) / (2.0 * tau2 * sigma2)));
                nu(j) = clamp_scale(rng.inv_gamma(1.0, 1.0 + 1.0 / lambda2(j)));
            }
            const double tau_rate =
                1.0 / xi + (w.array().square() / lambda2.array()).sum() / (2.0 * sigma2);
            tau2 = clamp_scale(rng.inv_gamma((static_cast<double>(p) + 1.0) / 2.0, tau_rate));
            xi = clamp_scale(rng.inv_gamma(1.0, 1.0 + 1.0 / tau2));
        }

        if (!w.allFinite() || !std::isfinite(sigma2))
            overflow("horseshoe_gibbs", sweep, sigma2, w);

        if (sweep >= config.burn_in && (sweep - config.burn_in) % config.thin == 0) {
            draws.samples.row(kept) = g.scaler.to_raw(w).transpose();
            draws.sigma2_draws(kept) = sigma2;
            local_chain.row(kept) = lambda2.transpose();
            global_chain(kept, 0) = tau2;
            ++kept;
        }
    }
    draws.hyper_draws["lambda2"] = std::move(local_chain);
    draws.hyper_draws["tau2"] = std::move(global_chain);
    return draws;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = q * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

DrawSummary summarize_draws(const PosteriorDraws& draws, SparsifyRule rule, double threshold) {
    const Eigen::Index N = draws.samples.rows();
    const Eigen::Index k = draws.samples.cols();
    if (N < 1) throw EmptyDraws("no retained draws to summarize");

    DrawSummary out;
    out.coeffs = draws.samples.colwise().mean();
    for (Eigen::Index j = 0; j < k; ++j) {
        bool keep = false;
        if (rule == SparsifyRule::kThreshold) {
            keep = std::abs(out.coeffs(j)) > threshold;
        } else {
            std::vector<double> col(draws.samples.col(j).data(),
                                    draws.samples.col(j).data() + N);
            std::sort(col.begin(), col.end());
            const double lo = quantile_sorted(col, 0.25);
            const double hi = quantile_sorted(col, 0.75);
            keep = !(lo <= 0.0 && 0.0 <= hi);
        }
        if (keep)
            out.support.push_back(static_cast<int>(j));
        else
            out.coeffs(j) = 0.0;
    }
    return out;
}

}  // namespace sparsefolio
