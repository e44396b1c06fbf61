#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sparsefolio/errors.hpp"
#include "sparsefolio/transform.hpp"

namespace sparsefolio {

struct ChainConfig {
    int n_iter = 12000;
    int burn_in = 2000;
    int thin = 1;
    std::uint64_t seed = 42;
};

struct GibbsOptions {
    bool standardize = true;

    // Debug / oracle modes: pin the local scale hierarchy (and optionally the
    // noise variance) so the coefficient conditional is a fixed Gaussian.
    bool freeze_local_scales = false;
    double frozen_scale = 1.0;
    bool freeze_sigma2 = false;
    double sigma2_value = 1.0;

    // Laplace-prior sampler only: conjugate Gamma(r, delta) hyperprior update
    // for lambda^2; set fixed_lambda > 0 to disable the update.
    double gamma_r = 1.0;
    double gamma_delta = 1.78;
    double fixed_lambda = -1.0;
};

// Retained coefficient draws (raw input scale) with chain metadata.
struct PosteriorDraws {
    Eigen::MatrixXd samples;       // N x k
    Eigen::VectorXd sigma2_draws;  // N
    std::uint64_t seed = 0;
    int burn_in = 0;
    int thin = 1;
    std::map<std::string, Eigen::MatrixXd> hyper_draws;
};

// Scale-mixture Gibbs sampler for the Laplace coefficient prior.
// Per-sweep draw order: coefficients, noise variance, local scales,
// penalty hyperparameter.
PosteriorDraws bayesian_lasso_gibbs(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                                    const ChainConfig& config, const GibbsOptions& options = {});

// Gibbs sampler for the horseshoe prior; the half-Cauchy scales are expanded
// through auxiliary inverse-gamma variables so every conditional is standard.
// Scale draws are clamped to [1e-12, 1e12].
PosteriorDraws horseshoe_gibbs(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                               const ChainConfig& config, const GibbsOptions& options = {});

enum class SparsifyRule { kInterval, kThreshold };

struct DrawSummary {
    Eigen::VectorXd coeffs;    // posterior means, excluded coordinates zeroed
    std::vector<int> support;
};

// rule=kInterval keeps coordinates whose central 50% credible interval
// excludes zero; rule=kThreshold keeps |posterior mean| > threshold.
DrawSummary summarize_draws(const PosteriorDraws& draws, SparsifyRule rule = SparsifyRule::kInterval,
                            double threshold = 0.0);

}  // namespace sparsefolio
