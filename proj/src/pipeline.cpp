#include "sparsefolio/pipeline.hpp"

#include <cmath>
#include <limits>

#include "sparsefolio/io.hpp"

namespace sparsefolio {

SolverChoice parse_solver(const std::string& name) {
    if (name == "lars") return SolverChoice::kLars;
    if (name == "cd") return SolverChoice::kCd;
    if (name == "enet") return SolverChoice::kEnet;
    if (name == "sbr") return SolverChoice::kSbr;
    if (name == "lasso-gibbs") return SolverChoice::kLassoGibbs;
    if (name == "horseshoe") return SolverChoice::kHorseshoe;
    if (name == "qp") return SolverChoice::kQp;
    if (name == "naive") return SolverChoice::kNaive;
    throw BadConfig("unknown solver '" + name + "'");
}

std::string solver_name(SolverChoice solver) {
    switch (solver) {
        case SolverChoice::kLars: return "lars";
        case SolverChoice::kCd: return "cd";
        case SolverChoice::kEnet: return "enet";
        case SolverChoice::kSbr: return "sbr";
        case SolverChoice::kLassoGibbs: return "lasso-gibbs";
        case SolverChoice::kHorseshoe: return "horseshoe";
        case SolverChoice::kQp: return "qp";
        case SolverChoice::kNaive: return "naive";
    }
    throw BadConfig("unknown solver enum value");
}

double resolve_rho(const ReturnPanel& train, const FitSpec& spec) {
    if (std::isfinite(spec.rho)) return spec.rho;
    return train.returns.mean();
}

namespace {

SpikeSlabConfig resolve_spike_slab(const FitSpec& spec, const Eigen::VectorXd& target) {
    SpikeSlabConfig config = spec.spike_slab;
    if (spec.sigma_e2_auto) {
        const double mean = target.mean();
        config.sigma_e2 = (target.array() - mean).square().sum() /
                          static_cast<double>(target.size());
        if (!(config.sigma_e2 > 0.0)) config.sigma_e2 = 1e-12;
    }
    return config;
}

}  // namespace

PortfolioWeights fit_portfolio(const ReturnPanel& train, const FitSpec& spec) {
    const double rho = resolve_rho(train, spec);

    PortfolioWeights out;
    if (spec.solver == SolverChoice::kNaive) {
        out = equal_weight(train.assets);
        return out;
    }
    if (spec.solver == SolverChoice::kQp) {
        const Moments m = sample_moments(train);
        out = markowitz_qp(m, rho, spec.long_only, train.assets);
        return out;
    }

    const ReducedProblem problem = reduce_problem(train, rho, spec.lambda, spec.numeraire);
    Eigen::VectorXd coeffs;
    std::map<std::string, std::string> params;
    std::string tag = solver_name(spec.solver);

    switch (spec.solver) {
        case SolverChoice::kLars: {
            const SelectionPath path =
                lars_path(problem.design, problem.target, {}, !spec.plain_lars);
            const int knot = knot_by_cardinality(path, spec.cardinality);
            if (knot < 0) throw BadConfig("empty selection path");
            coeffs = path.knots[static_cast<std::size_t>(knot)].coeffs;
            params["cardinality"] = std::to_string(spec.cardinality);
            params["knot"] = std::to_string(knot);
            params["knot_lambda"] = format_double(path.knots[static_cast<std::size_t>(knot)].lambda);
            break;
        }
        case SolverChoice::kCd: {
            const CdResult r = coord_descent(problem.design, problem.target, spec.cd_lambda);
            coeffs = r.coeffs;
            params["l1"] = format_double(spec.cd_lambda);
            if (!r.converged) params["warning"] = "sweep cap hit before convergence";
            break;
        }
        case SolverChoice::kEnet: {
            ElasticNetConfig config;
            config.lambda1 = spec.lambda1;
            config.lambda2 = spec.lambda2;
            config.omega = spec.omega;
            coeffs = elastic_net_solve(problem.design, problem.target, config);
            params["lambda1"] = format_double(spec.lambda1);
            params["lambda2"] = format_double(spec.lambda2);
            break;
        }
        case SolverChoice::kSbr: {
            const SpikeSlabConfig config = resolve_spike_slab(spec, problem.target);
            const SbrResult r = sbr_select(problem.design, problem.target, config);
            coeffs = r.coeffs;
            params["a"] = format_double(config.a);
            params["sigma2"] = format_double(config.sigma2);
            params["sigma_e2"] = format_double(config.sigma_e2);
            if (r.negative_penalty) params["warning"] = "a > 1/2 rewards inclusion";
            break;
        }
        case SolverChoice::kLassoGibbs:
        case SolverChoice::kHorseshoe: {
            const PosteriorDraws draws =
                spec.solver == SolverChoice::kLassoGibbs
                    ? bayesian_lasso_gibbs(problem.design, problem.target, spec.chain)
                    : horseshoe_gibbs(problem.design, problem.target, spec.chain);
            const DrawSummary summary = summarize_draws(draws, spec.rule, spec.threshold);
            coeffs = summary.coeffs;
            params["n_iter"] = std::to_string(spec.chain.n_iter);
            params["burn_in"] = std::to_string(spec.chain.burn_in);
            params["thin"] = std::to_string(spec.chain.thin);
            params["chain_seed"] = std::to_string(spec.chain.seed);
            params["rule"] = spec.rule == SparsifyRule::kInterval ? "interval" : "threshold";
            if (spec.rule == SparsifyRule::kThreshold)
                params["threshold"] = format_double(spec.threshold);
            break;
        }
        default:
            throw BadConfig("unhandled solver");
    }

    out = recover_weights(coeffs, spec.numeraire, problem.assets);
    const double total = out.weights.sum();
    if (std::abs(total) > 1e-12) out.weights /= total;  // guard against rounding drift
    out.solver_tag = tag;
    out.hyperparams = std::move(params);
    out.hyperparams["rho"] = format_double(rho);
    out.hyperparams["lambda"] = format_double(spec.lambda);
    out.hyperparams["numeraire"] = problem.assets[static_cast<std::size_t>(spec.numeraire)];
    return out;
}

double cross_validate_lambda(const ReturnPanel& train, const FitSpec& spec,
                             std::vector<double> grid, int folds) {
    if (folds < 2) throw BadConfig("cross-validation needs >= 2 folds");
    const Eigen::Index T = train.rows();
    if (T < 2 * folds) throw TooFewRows("panel too short for " + std::to_string(folds) + " folds");
    const double rho = resolve_rho(train, spec);

    if (grid.empty()) {
        // Scale the decades to the size of the correlation term the tilt offsets.
        const ReducedProblem base = reduce_problem(train, rho, 0.0, spec.numeraire);
        const Eigen::VectorXd pre =
            Eigen::VectorXd::Constant(T, rho) - train.returns.col(spec.numeraire);
        const double corr = (base.design.transpose() * pre).cwiseAbs().maxCoeff();
        const double mu_scale = std::max(base.mu_reduced.cwiseAbs().maxCoeff(), 1e-12);
        const double center = corr / mu_scale;
        grid.push_back(0.0);
        for (int e = -3; e <= 3; ++e) grid.push_back(center * std::pow(10.0, e));
    }

    double best_lambda = grid.front();
    double best_score = std::numeric_limits<double>::infinity();
    for (const double lambda : grid) {
        FitSpec fold_spec = spec;
        fold_spec.lambda = lambda;
        fold_spec.rho = rho;
        double score = 0.0;
        bool feasible = true;
        for (int f = 0; f < folds && feasible; ++f) {
            const Eigen::Index lo = f * T / folds;
            const Eigen::Index hi = (f + 1) * T / folds;
            std::vector<std::string> fit_dates;
            std::vector<Eigen::Index> fit_rows;
            for (Eigen::Index t = 0; t < T; ++t) {
                if (t >= lo && t < hi) continue;
                fit_rows.push_back(t);
                fit_dates.push_back(train.dates[static_cast<std::size_t>(t)]);
            }
            ReturnPanel fit_panel;
            fit_panel.assets = train.assets;
            fit_panel.dates = std::move(fit_dates);
            fit_panel.returns.resize(static_cast<Eigen::Index>(fit_rows.size()), train.cols());
            for (std::size_t i = 0; i < fit_rows.size(); ++i)
                fit_panel.returns.row(static_cast<Eigen::Index>(i)) = train.returns.row(fit_rows[i]);

            try {
                const PortfolioWeights w = fit_portfolio(fit_panel, fold_spec);
                const Eigen::VectorXd val =
                    train.returns.middleRows(lo, hi - lo) * w.weights;
                score += (val.array() - rho).square().sum();
            } catch (const Error&) {
                feasible = false;
            }
        }
        if (feasible && score < best_score - 1e-15) {
            best_score = score;
            best_lambda = lambda;
        }
    }
    return best_lambda;
}

}  // namespace sparsefolio
