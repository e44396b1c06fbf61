#include "sparsefolio/transform.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sparsefolio {

namespace {
constexpr double kConditionLimit = 1e12;
}

Standardizer Standardizer::identity(Eigen::Index k) {
    Standardizer s;
    s.col_mean = Eigen::VectorXd::Zero(k);
    s.col_scale = Eigen::VectorXd::Ones(k);
    s.target_mean = 0.0;
    return s;
}

Standardizer Standardizer::fit(const Eigen::MatrixXd& design, const Eigen::VectorXd& target) {
    Standardizer s;
    s.col_mean = design.colwise().mean();
    s.col_scale.resize(design.cols());
    for (Eigen::Index j = 0; j < design.cols(); ++j) {
        s.col_scale(j) = (design.col(j).array() - s.col_mean(j)).matrix().norm();
    }
    s.target_mean = target.size() > 0 ? target.mean() : 0.0;
    return s;
}

Eigen::MatrixXd Standardizer::apply_design(const Eigen::MatrixXd& design) const {
    Eigen::MatrixXd out = design;
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
        out.col(j).array() -= col_mean(j);
        out.col(j) /= col_scale(j);
    }
    return out;
}

Eigen::VectorXd Standardizer::apply_target(const Eigen::VectorXd& target) const {
    return target.array() - target_mean;
}

Eigen::VectorXd Standardizer::to_raw(const Eigen::VectorXd& std_coeffs) const {
    return std_coeffs.array() / col_scale.array();
}

Eigen::VectorXd Standardizer::to_std(const Eigen::VectorXd& raw_coeffs) const {
    return raw_coeffs.array() * col_scale.array();
}

bool Standardizer::has_degenerate_column() const {
    const double floor = 1e-12 * std::max(1.0, col_mean.cwiseAbs().maxCoeff());
    return (col_scale.array() <= floor).any();
}

Moments sample_moments(const ReturnPanel& panel) {
    const Eigen::Index T = panel.rows();
    if (T < 2) throw TooFewRows("sample moments need T >= 2, got " + std::to_string(T));
    Moments m;
    m.mu = panel.returns.colwise().mean();
    const Eigen::MatrixXd centered = panel.returns.rowwise() - m.mu.transpose();
    m.sigma = centered.transpose() * centered / static_cast<double>(T - 1);
    m.sigma = 0.5 * (m.sigma + m.sigma.transpose()).eval();
    return m;
}

Eigen::VectorXd conjugate_tilt(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                               const Eigen::VectorXd& mu_reduced, double lambda) {
    const Eigen::Index k = design.cols();
    if (design.rows() != y.size())
        throw BadConfig("design rows must match target length");
    if (mu_reduced.size() != k)
        throw BadConfig("mu_reduced length must match design columns");
    if (!(lambda >= 0.0)) throw BadConfig("lambda must be >= 0");

    const Eigen::VectorXd rhs = design.transpose() * y - lambda * mu_reduced;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    const Eigen::VectorXd rdiag = qr.matrixR().diagonal().head(k).cwiseAbs();
    const double rmax = rdiag.maxCoeff();
    const double rmin = rdiag.minCoeff();

    Eigen::VectorXd coeffs;
    if (rmin > 0.0 && rmax / rmin <= kConditionLimit) {
        // X P = Q R  =>  X^T X = P R^T R P^T; two triangular solves.
        const auto R = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
        Eigen::VectorXd u = qr.colsPermutation().transpose() * rhs;
        u = R.transpose().solve(u);
        u = R.solve(u);
        coeffs = qr.colsPermutation() * u;
    } else {
        const Eigen::MatrixXd gram = design.transpose() * design;
        const double delta = 1e-8 * gram.trace() / static_cast<double>(k);
        Eigen::MatrixXd jittered = gram;
        jittered.diagonal().array() += delta;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(jittered);
        if (ldlt.info() != Eigen::Success)
            throw RankDeficient("normal equations not positive definite after jitter");
        coeffs = ldlt.solve(rhs);
        const double resid = (jittered * coeffs - rhs).norm();
        if (!coeffs.allFinite() || resid > 1e-6 * std::max(1.0, rhs.norm()))
            throw RankDeficient("jitter failed to restore conditioning");
    }
    return design * coeffs;
}

ReducedProblem reduce_problem(const ReturnPanel& panel, double rho, double lambda,
                              int numeraire) {
    const Eigen::Index T = panel.rows();
    const Eigen::Index p = panel.cols();
    if (p < 2) throw BadConfig("need >= 2 assets to reduce, got " + std::to_string(p));
    if (T < 2) throw TooFewRows("need >= 2 return rows, got " + std::to_string(T));
    if (!std::isfinite(rho)) throw BadConfig("rho must be finite");
    if (!(lambda >= 0.0)) throw BadConfig("lambda must be >= 0");
    if (numeraire < 0 || numeraire >= p)
        throw BadNumeraire("index " + std::to_string(numeraire) + " outside [0, " +
                           std::to_string(p - 1) + "]");

    const Moments m = sample_moments(panel);

    ReducedProblem out;
    out.assets = panel.assets;
    out.numeraire = numeraire;
    out.lambda = lambda;
    out.rho = rho;
    out.design.resize(T, p - 1);
    out.mu_reduced.resize(p - 1);

    const Eigen::VectorXd base = panel.returns.col(numeraire);
    Eigen::Index col = 0;
    for (Eigen::Index j = 0; j < p; ++j) {
        if (j == numeraire) continue;
        out.design.col(col) = panel.returns.col(j) - base;
        out.mu_reduced(col) = m.mu(j) - m.mu(numeraire);
        ++col;
    }

    for (Eigen::Index j = 0; j < out.design.cols(); ++j) {
        if (out.design.col(j).norm() <= 1e-12 * std::max(1.0, base.norm()))
            throw SingularDesign("asset " + out.assets[static_cast<std::size_t>(
                                     j < numeraire ? j : j + 1)] +
                                 " is numerically identical to the numeraire");
    }

    // Budget constraint is exact by construction: y = rho*1 - R_numeraire.
    const Eigen::VectorXd y = Eigen::VectorXd::Constant(T, rho) - base;
    out.target = conjugate_tilt(out.design, y, out.mu_reduced, lambda);
    return out;
}

PortfolioWeights recover_weights(const Eigen::VectorXd& coeffs, int numeraire,
                                 const std::vector<std::string>& assets) {
    const Eigen::Index p = static_cast<Eigen::Index>(assets.size());
    if (coeffs.size() != p - 1)
        throw BadConfig("expected " + std::to_string(p - 1) + " coefficients, got " +
                        std::to_string(coeffs.size()));
    if (numeraire < 0 || numeraire >= p)
        throw BadNumeraire("index " + std::to_string(numeraire) + " outside [0, " +
                           std::to_string(p - 1) + "]");
    if (!coeffs.allFinite()) throw NonFiniteCoefficient("solver returned a non-finite weight");

    PortfolioWeights w;
    w.assets = assets;
    w.weights.resize(p);
    Eigen::Index col = 0;
    for (Eigen::Index j = 0; j < p; ++j) {
        if (j == numeraire) continue;
        w.weights(j) = coeffs(col++);
    }
    w.weights(numeraire) = 1.0 - coeffs.sum();
    return w;
}

std::string dump_problem(const ReducedProblem& problem) {
    std::ostringstream os;
    os.precision(17);
    os << "# reduced problem: T=" << problem.design.rows() << " k=" << problem.design.cols()
       << " numeraire=" << problem.assets[static_cast<std::size_t>(problem.numeraire)]
       << " rho=" << problem.rho << " lambda=" << problem.lambda << "\n";
    os << "# columns: ";
    for (std::size_t j = 0; j < problem.assets.size(); ++j) {
        if (static_cast<int>(j) == problem.numeraire) continue;
        os << problem.assets[j] << (j + 1 < problem.assets.size() ? " " : "");
    }
    os << "\n# design (one row per period):\n";
    for (Eigen::Index i = 0; i < problem.design.rows(); ++i) {
        for (Eigen::Index j = 0; j < problem.design.cols(); ++j) {
            os << problem.design(i, j) << (j + 1 < problem.design.cols() ? "," : "");
        }
        os << "\n";
    }
    os << "# target:\n";
    for (Eigen::Index i = 0; i < problem.target.size(); ++i) os << problem.target(i) << "\n";
    os << "# mu_reduced:\n";
    for (Eigen::Index i = 0; i < problem.mu_reduced.size(); ++i) os << problem.mu_reduced(i) << "\n";
    return os.str();
}

}  // namespace sparsefolio
