#include "sparsefolio/path_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sparsefolio {

namespace {

constexpr double kEventTol = 1e-12;

struct WorkingProblem {
    Eigen::MatrixXd design;
    Eigen::VectorXd target;
    Standardizer scaler;
};

WorkingProblem make_working(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                            const SolverOptions& options) {
    if (design.rows() != target.size()) throw BadConfig("design rows must match target length");
    if (design.cols() < 1) throw BadConfig("design needs at least one column");
    WorkingProblem w;
    if (options.standardize) {
        w.scaler = Standardizer::fit(design, target);
        if (w.scaler.has_degenerate_column())
            throw DegenerateDesign("zero-norm column after standardization");
        w.design = w.scaler.apply_design(design);
        w.target = w.scaler.apply_target(target);
    } else {
        w.scaler = Standardizer::identity(design.cols());
        for (Eigen::Index j = 0; j < design.cols(); ++j) {
            if (design.col(j).norm() <= 1e-300)
                throw DegenerateDesign("zero-norm column " + std::to_string(j));
        }
        w.design = design;
        w.target = target;
    }
    return w;
}

Eigen::VectorXd solve_gram(const Eigen::MatrixXd& X, const std::vector<int>& idx,
                           const Eigen::VectorXd& rhs, double ridge, bool& ok) {
    const int s = static_cast<int>(idx.size());
    Eigen::MatrixXd gram(s, s);
    for (int a = 0; a < s; ++a)
        for (int b = 0; b <= a; ++b) {
            const double v = X.col(idx[a]).dot(X.col(idx[b]));
            gram(a, b) = v;
            gram(b, a) = v;
        }
    gram.diagonal().array() += ridge;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    Eigen::VectorXd sol = ldlt.solve(rhs);
    ok = ldlt.info() == Eigen::Success && sol.allFinite() &&
         (gram * sol - rhs).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, rhs.cwiseAbs().maxCoeff());
    return sol;
}

}  // namespace

SelectionPath lars_path(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                        const SolverOptions& options, bool lasso_mode) {
    const auto w = make_working(design, target, options);
    const Eigen::MatrixXd& X = w.design;
    const Eigen::VectorXd& y = w.target;
    const int k = static_cast<int>(X.cols());

    SelectionPath path;
    path.scaler = w.scaler;

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd c = X.transpose() * y;
    double lambda = c.cwiseAbs().maxCoeff();

    const double scale = std::max(1.0, lambda);
    if (lambda <= 1e-14 * std::max(1.0, y.norm())) {
        path.knots.push_back({0.0, {}, path.scaler.to_raw(beta)});
        return path;
    }

    std::vector<bool> in_active(k, false);
    std::vector<int> active;
    auto activate = [&](int j) {
        in_active[j] = true;
        active.push_back(j);
        std::sort(active.begin(), active.end());
        if (std::find(path.entry_order.begin(), path.entry_order.end(), j) ==
            path.entry_order.end())
            path.entry_order.push_back(j);
    };
    auto deactivate = [&](int j) {
        in_active[j] = false;
        active.erase(std::find(active.begin(), active.end(), j));
    };

    for (int j = 0; j < k; ++j) {
        if (std::abs(c(j)) >= lambda - kEventTol * scale) activate(j);
    }
    path.knots.push_back({lambda, active, path.scaler.to_raw(beta)});

    const int max_knots = 8 * k + 16;
    while (static_cast<int>(path.knots.size()) < max_knots) {
        Eigen::VectorXd sign_a(active.size());
        for (std::size_t i = 0; i < active.size(); ++i)
            sign_a(static_cast<Eigen::Index>(i)) = c(active[i]) >= 0.0 ? 1.0 : -1.0;

        bool ok = false;
        const Eigen::VectorXd dir = solve_gram(X, active, sign_a, 0.0, ok);
        if (!ok) break;  // active gram singular; path cannot continue

        Eigen::VectorXd xd = Eigen::VectorXd::Zero(X.rows());
        for (std::size_t i = 0; i < active.size(); ++i)
            xd += dir(static_cast<Eigen::Index>(i)) * X.col(active[i]);
        const Eigen::VectorXd corr_rate = X.transpose() * xd;  // a_j

        // Largest lambda' < lambda at which an inactive correlation catches
        // up or (lasso mode) an active coefficient hits zero.
        double next = 0.0;
        std::vector<int> entering;
        std::vector<int> dropping;
        for (int j = 0; j < k; ++j) {
            if (in_active[j]) continue;
            const double aj = corr_rate(j);
            for (const double cand : {(c(j) - lambda * aj) / (1.0 - aj),
                                      (lambda * aj - c(j)) / (1.0 + aj)}) {
                if (!std::isfinite(cand)) continue;
                if (cand <= kEventTol * scale || cand >= lambda - kEventTol * scale) continue;
                if (cand > next + kEventTol * scale) {
                    next = cand;
                    entering.assign(1, j);
                    dropping.clear();
                } else if (std::abs(cand - next) <= kEventTol * scale &&
                           (entering.empty() || entering.back() != j)) {
                    entering.push_back(j);
                }
            }
        }
        if (lasso_mode) {
            for (std::size_t i = 0; i < active.size(); ++i) {
                const int j = active[i];
                const double dj = dir(static_cast<Eigen::Index>(i));
                if (dj == 0.0) continue;
                const double cand = lambda + beta(j) / dj;
                if (cand <= kEventTol * scale || cand >= lambda - kEventTol * scale) continue;
                if (cand > next + kEventTol * scale) {
                    next = cand;
                    dropping.assign(1, j);
                    entering.clear();
                } else if (std::abs(cand - next) <= kEventTol * scale) {
                    dropping.push_back(j);
                }
            }
        }

        for (std::size_t i = 0; i < active.size(); ++i)
            beta(active[i]) += (lambda - next) * dir(static_cast<Eigen::Index>(i));
        lambda = next;
        c = X.transpose() * (y - X * beta);

        if (lambda <= 0.0) {
            path.knots.push_back({0.0, active, path.scaler.to_raw(beta)});
            break;
        }
        for (const int j : dropping) {
            beta(j) = 0.0;
            deactivate(j);
        }
        for (const int j : entering) activate(j);
        path.knots.push_back({lambda, active, path.scaler.to_raw(beta)});
        if (active.empty()) break;
    }
    return path;
}

double kkt_max_violation(const SelectionPath& path, const Eigen::MatrixXd& design,
                         const Eigen::VectorXd& target) {
    const Eigen::MatrixXd X = path.scaler.apply_design(design);
    const Eigen::VectorXd y = path.scaler.apply_target(target);
    double worst = 0.0;
    for (const auto& knot : path.knots) {
        const Eigen::VectorXd beta = path.scaler.to_std(knot.coeffs);
        const Eigen::VectorXd c = X.transpose() * (y - X * beta);
        std::vector<bool> active(static_cast<std::size_t>(X.cols()), false);
        for (const int j : knot.active) active[static_cast<std::size_t>(j)] = true;
        for (Eigen::Index j = 0; j < X.cols(); ++j) {
            const double mag = std::abs(c(j));
            const double v = active[static_cast<std::size_t>(j)]
                                 ? std::abs(mag - knot.lambda)
                                 : std::max(0.0, mag - knot.lambda);
            worst = std::max(worst, v);
        }
    }
    return worst;
}

Eigen::VectorXd path_coeffs_at(const SelectionPath& path, double lambda) {
    if (path.knots.empty()) throw BadConfig("empty path");
    const auto& knots = path.knots;
    if (lambda >= knots.front().lambda) return knots.front().coeffs;
    for (std::size_t m = 0; m + 1 < knots.size(); ++m) {
        const double hi = knots[m].lambda;
        const double lo = knots[m + 1].lambda;
        if (lambda <= hi && lambda >= lo) {
            if (hi - lo <= 0.0) return knots[m + 1].coeffs;
            const double t = (hi - lambda) / (hi - lo);
            return knots[m].coeffs + t * (knots[m + 1].coeffs - knots[m].coeffs);
        }
    }
    return knots.back().coeffs;
}

int knot_by_cardinality(const SelectionPath& path, int cardinality) {
    int best = -1;
    int best_gap = std::numeric_limits<int>::max();
    for (std::size_t m = 0; m < path.knots.size(); ++m) {
        const int gap = std::abs(static_cast<int>(path.knots[m].active.size()) - cardinality);
        if (gap < best_gap) {
            best_gap = gap;
            best = static_cast<int>(m);
            if (gap == 0) break;
        }
    }
    return best;
}

CdResult coord_descent(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                       double lambda, const SolverOptions& options) {
    if (!(lambda >= 0.0)) throw BadConfig("lambda must be >= 0");
    const auto w = make_working(design, target, options);
    const Eigen::MatrixXd& X = w.design;
    const Eigen::VectorXd& y = w.target;
    const int k = static_cast<int>(X.cols());
    const double T = static_cast<double>(X.rows());

    Eigen::VectorXd col_sq(k);
    for (int j = 0; j < k; ++j) col_sq(j) = X.col(j).squaredNorm() / T;

    constexpr int kMaxSweeps = 100000;
    constexpr double kTol = 1e-10;

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd residual = y;
    CdResult result;
    for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
        double max_change = 0.0;
        for (int j = 0; j < k; ++j) {
            const double rho = X.col(j).dot(residual) / T + col_sq(j) * beta(j);
            double next = 0.0;
            if (rho > lambda)
                next = (rho - lambda) / col_sq(j);
            else if (rho < -lambda)
                next = (rho + lambda) / col_sq(j);
            const double change = next - beta(j);
            if (change != 0.0) {
                residual -= change * X.col(j);
                beta(j) = next;
                max_change = std::max(max_change, std::abs(change));
            }
        }
        residual = y - X * beta;  // refresh against incremental drift
        result.sweeps = sweep;
        if (max_change < kTol) {
            result.converged = true;
            result.coeffs = w.scaler.to_raw(beta);
            return result;
        }
    }
    result.converged = false;
    result.coeffs = w.scaler.to_raw(beta);
    return result;
}

Eigen::VectorXd elastic_net_solve(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                                  const ElasticNetConfig& config, const SolverOptions& options) {
    if (!(config.lambda1 >= 0.0) || !(config.lambda2 >= 0.0))
        throw BadConfig("elastic net weights must be nonnegative");
    const Eigen::Index k = design.cols();
    const double T = static_cast<double>(design.rows());

    if (config.lambda2 == 0.0) {
        return coord_descent(design, target, config.lambda1 / (2.0 * T), options).coeffs;
    }

    Eigen::MatrixXd omega = config.omega;
    if (omega.size() == 0) omega = Eigen::MatrixXd::Identity(k, k);
    if (omega.rows() != k || omega.cols() != k) throw BadOmega("omega must be k x k");
    if ((omega - omega.transpose()).cwiseAbs().maxCoeff() >
        1e-8 * std::max(1.0, omega.cwiseAbs().maxCoeff()))
        throw BadOmega("omega must be symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(omega);
    if (llt.info() != Eigen::Success) throw BadOmega("omega must be positive definite");

    const auto w = make_working(design, target, options);

    // Quadratic term folds into extra rows: with omega = C C^T,
    // ||sqrt(l2) C^T b||^2 = l2 * b' omega b.
    const Eigen::MatrixXd croot = llt.matrixL();
    const Eigen::Index Ta = w.design.rows() + k;
    Eigen::MatrixXd aug(Ta, k);
    aug.topRows(w.design.rows()) = w.design;
    aug.bottomRows(k) = std::sqrt(config.lambda2) * croot.transpose();
    Eigen::VectorXd aug_y = Eigen::VectorXd::Zero(Ta);
    aug_y.head(w.design.rows()) = w.target;

    SolverOptions raw;
    raw.standardize = false;
    const double cd_lambda = config.lambda1 / (2.0 * static_cast<double>(Ta));
    const CdResult inner = coord_descent(aug, aug_y, cd_lambda, raw);
    return w.scaler.to_raw(inner.coeffs);
}

namespace {

// Ridge fit restricted to a support; returns the penalized objective.
double support_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const std::vector<int>& support, double kappa, double theta,
                         Eigen::VectorXd* coeffs_out) {
    if (support.empty()) {
        if (coeffs_out) coeffs_out->setZero();
        return y.squaredNorm();
    }
    Eigen::VectorXd rhs(support.size());
    for (std::size_t i = 0; i < support.size(); ++i)
        rhs(static_cast<Eigen::Index>(i)) = X.col(support[i]).dot(y);
    bool ok = false;
    const Eigen::VectorXd alpha = solve_gram(X, support, rhs, kappa, ok);
    if (!ok) return std::numeric_limits<double>::infinity();
    Eigen::VectorXd fitted = Eigen::VectorXd::Zero(X.rows());
    for (std::size_t i = 0; i < support.size(); ++i)
        fitted += alpha(static_cast<Eigen::Index>(i)) * X.col(support[i]);
    if (coeffs_out) {
        coeffs_out->setZero();
        for (std::size_t i = 0; i < support.size(); ++i)
            (*coeffs_out)(support[i]) = alpha(static_cast<Eigen::Index>(i));
    }
    return (y - fitted).squaredNorm() + kappa * alpha.squaredNorm() +
           theta * static_cast<double>(support.size());
}

}  // namespace

SbrResult sbr_select(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                     const SpikeSlabConfig& config, const SolverOptions& options) {
    if (!(config.a > 0.0 && config.a < 1.0))
        throw BadConfig("spike-and-slab a must lie strictly in (0,1)");
    if (!(config.sigma2 > 0.0) || !(config.sigma_e2 > 0.0))
        throw BadConfig("spike-and-slab variances must be positive");

    const auto w = make_working(design, target, options);
    const Eigen::MatrixXd& X = w.design;
    const Eigen::VectorXd& y = w.target;
    const int k = static_cast<int>(X.cols());

    const double kappa = config.sigma_e2 / config.sigma2;
    const double theta = 2.0 * config.sigma_e2 * std::log((1.0 - config.a) / config.a);

    SbrResult result;
    result.negative_penalty = theta < 0.0;

    std::vector<bool> in_support(k, false);
    std::vector<int> support;
    double current = y.squaredNorm();

    const int max_moves = 4 * k * (k + 1);
    for (int move = 0; move < max_moves; ++move) {
        int best_idx = -1;
        double best_obj = current;
        for (int i = 0; i < k; ++i) {
            std::vector<int> candidate = support;
            if (in_support[i])
                candidate.erase(std::find(candidate.begin(), candidate.end(), i));
            else
                candidate.insert(std::lower_bound(candidate.begin(), candidate.end(), i), i);
            const double obj = support_objective(X, y, candidate, kappa, theta, nullptr);
            if (obj < best_obj - 1e-12 * std::max(1.0, std::abs(current))) {
                best_obj = obj;
                best_idx = i;
            }
        }
        if (best_idx < 0) break;
        if (in_support[best_idx]) {
            in_support[best_idx] = false;
            support.erase(std::find(support.begin(), support.end(), best_idx));
        } else {
            in_support[best_idx] = true;
            support.insert(std::lower_bound(support.begin(), support.end(), best_idx), best_idx);
        }
        current = best_obj;
    }

    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(k);
    result.objective = support_objective(X, y, support, kappa, theta, &coeffs);
    result.support = support;
    result.coeffs = w.scaler.to_raw(coeffs);
    return result;
}

namespace {

Eigen::LDLT<Eigen::MatrixXd> factor_covariance(const Eigen::MatrixXd& sigma) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(sigma);
    if (ldlt.info() == Eigen::Success && (ldlt.vectorD().array() > 0.0).all()) return ldlt;
    Eigen::MatrixXd jittered = sigma;
    jittered.diagonal().array() += 1e-10 * std::max(1.0, sigma.trace() / sigma.rows());
    ldlt.compute(jittered);
    if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().array() > 0.0).all())
        throw SingularCovariance("covariance not positive definite after jitter");
    return ldlt;
}

// Equality-constrained minimum-variance weights on the index set `free`.
Eigen::VectorXd solve_equality_qp(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& mu,
                                  double rho, const std::vector<int>& free, double* l1_out,
                                  double* l2_out) {
    const int s = static_cast<int>(free.size());
    Eigen::MatrixXd sig(s, s);
    Eigen::VectorXd m(s);
    for (int a = 0; a < s; ++a) {
        m(a) = mu(free[a]);
        for (int b = 0; b < s; ++b) sig(a, b) = sigma(free[a], free[b]);
    }
    const auto ldlt = factor_covariance(sig);
    const Eigen::VectorXd s1 = ldlt.solve(m);
    const Eigen::VectorXd s2 = ldlt.solve(Eigen::VectorXd::Ones(s));

    Eigen::Matrix2d M;
    M << m.dot(s1), m.dot(s2), s1.sum(), s2.sum();
    const Eigen::Vector2d rhs(2.0 * rho, 2.0);
    const double det = M.determinant();
    const double scale = M.cwiseAbs().maxCoeff();

    Eigen::VectorXd wf(s);
    double l1 = 0.0;
    double l2 = 0.0;
    if (std::abs(det) <= 1e-12 * std::max(1.0, scale * scale)) {
        // Means on the free set are constant: the return constraint is either
        // redundant or impossible, and the minimum-variance point decides.
        const double mean_level = m.sum() / s;
        if (std::abs(mean_level - rho) > 1e-9 * std::max(1.0, std::abs(rho)))
            throw InfeasibleTarget("target return " + std::to_string(rho) +
                                   " unreachable on the current asset set");
        wf = s2 / s2.sum();
        l2 = 2.0 / s2.sum();
    } else {
        const Eigen::Vector2d lam = M.inverse() * rhs;
        l1 = lam(0);
        l2 = lam(1);
        wf = 0.5 * (l1 * s1 + l2 * s2);
    }
    if (l1_out) *l1_out = l1;
    if (l2_out) *l2_out = l2;
    return wf;
}

}  // namespace

PortfolioWeights markowitz_qp(const Moments& moments, double rho, bool long_only,
                              const std::vector<std::string>& assets) {
    const Eigen::Index p = moments.mu.size();
    if (p < 1) throw BadConfig("need at least one asset");
    if (moments.sigma.rows() != p || moments.sigma.cols() != p)
        throw BadConfig("covariance dimensions must match mu");
    if (!std::isfinite(rho)) throw BadConfig("rho must be finite");
    if (!assets.empty() && static_cast<Eigen::Index>(assets.size()) != p)
        throw BadConfig("asset list length must match mu");

    const double mu_min = moments.mu.minCoeff();
    const double mu_max = moments.mu.maxCoeff();
    const double feas_tol = 1e-9 * std::max(1.0, std::abs(rho));
    if (long_only && (rho < mu_min - feas_tol || rho > mu_max + feas_tol))
        throw InfeasibleTarget("long-only target " + std::to_string(rho) + " outside [" +
                               std::to_string(mu_min) + ", " + std::to_string(mu_max) + "]");

    std::vector<int> free;
    for (int i = 0; i < p; ++i) free.push_back(i);
    Eigen::VectorXd weights = Eigen::VectorXd::Zero(p);
    double l1 = 0.0;
    double l2 = 0.0;

    if (p == 1) {
        if (std::abs(moments.mu(0) - rho) > feas_tol)
            throw InfeasibleTarget("single asset cannot hit the target return");
        weights(0) = 1.0;
    } else if (!long_only) {
        const Eigen::VectorXd wf = solve_equality_qp(moments.sigma, moments.mu, rho, free, &l1, &l2);
        for (std::size_t i = 0; i < free.size(); ++i) weights(free[i]) = wf(static_cast<Eigen::Index>(i));
    } else {
        std::vector<bool> bound(p, false);
        const int max_iter = 10 * static_cast<int>(p) + 50;
        int iter = 0;
        for (;; ++iter) {
            if (iter >= max_iter)
                throw InfeasibleTarget("active-set iteration failed to settle");
            if (free.size() == 1) {
                weights.setZero();
                weights(free[0]) = 1.0;
                if (std::abs(moments.mu(free[0]) - rho) > 1e-6 * std::max(1.0, std::abs(rho)))
                    throw InfeasibleTarget("bound constraints force an unreachable return");
                break;
            }
            const Eigen::VectorXd wf =
                solve_equality_qp(moments.sigma, moments.mu, rho, free, &l1, &l2);

            int worst = -1;
            double worst_w = -1e-12;
            for (std::size_t i = 0; i < free.size(); ++i) {
                const double v = wf(static_cast<Eigen::Index>(i));
                if (v < worst_w) {
                    worst_w = v;
                    worst = free[i];
                }
            }
            if (worst >= 0) {
                bound[worst] = true;
                free.erase(std::find(free.begin(), free.end(), worst));
                continue;
            }

            weights.setZero();
            for (std::size_t i = 0; i < free.size(); ++i)
                weights(free[i]) = std::max(0.0, wf(static_cast<Eigen::Index>(i)));

            // Multipliers of the released bounds must be nonnegative.
            int release = -1;
            double most_negative = -1e-10 * std::max(1.0, moments.sigma.trace() / p);
            const Eigen::VectorXd grad = 2.0 * (moments.sigma * weights);
            for (int i = 0; i < p; ++i) {
                if (!bound[i]) continue;
                const double nu = grad(i) - l1 * moments.mu(i) - l2;
                if (nu < most_negative) {
                    most_negative = nu;
                    release = i;
                }
            }
            if (release < 0) break;
            bound[release] = false;
            free.insert(std::lower_bound(free.begin(), free.end(), release), release);
        }
    }

    PortfolioWeights out;
    out.weights = weights;
    out.assets = assets;
    if (out.assets.empty()) {
        for (Eigen::Index i = 0; i < p; ++i) out.assets.push_back("asset_" + std::to_string(i));
    }
    out.solver_tag = "qp";
    out.hyperparams["rho"] = std::to_string(rho);
    out.hyperparams["long_only"] = long_only ? "true" : "false";
    return out;
}

}  // namespace sparsefolio
