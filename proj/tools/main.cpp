// sparsefolio: sparse Bayesian portfolio selection from the command line.
//
// Subcommands: returns, select, path, sample, bl, backtest, compare.
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sparsefolio/backtest.hpp"
#include "sparsefolio/io.hpp"
#include "sparsefolio/market_data.hpp"
#include "sparsefolio/pipeline.hpp"
#include "sparsefolio/views.hpp"

namespace sf = sparsefolio;

namespace {

struct CommonArgs {
    std::string data;
    bool already_returns = false;
    std::string policy = "drop";
    std::string split;
    std::string out_dir = ".";
    std::uint64_t seed = 42;
};

struct FitArgs {
    std::string solver = "lars";
    double rho = std::numeric_limits<double>::quiet_NaN();
    std::string lambda = "0";  // tilt weight; "cv" selects over a log grid
    std::string numeraire = "0";
    int cardinality = 5;
    bool plain_lars = false;
    double l1 = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    std::string omega_file;
    double ss_a = 0.1;
    double ss_sigma2 = 1.0;
    double ss_sigma_e2 = -1.0;  // <0: derived from the target variance
    int iters = 12000;
    int burn_in = 2000;
    int thin = 1;
    std::string rule = "interval";
    double threshold = 1e-4;
    bool allow_shorts = false;
};

sf::MissingPolicy parse_policy(const std::string& policy) {
    if (policy == "drop") return sf::MissingPolicy::kDrop;
    if (policy == "strict") return sf::MissingPolicy::kStrict;
    throw sf::BadConfig("policy must be drop or strict");
}

sf::ReturnPanel load_panel(const CommonArgs& common) {
    const sf::MissingPolicy policy = parse_policy(common.policy);
    if (common.already_returns) return sf::load_returns(common.data, policy);
    return sf::to_returns(sf::load_prices(common.data, policy));
}

sf::ReturnPanel training_slice(const CommonArgs& common, const sf::ReturnPanel& panel) {
    if (common.split.empty()) return panel;
    return sf::split_panel(panel, common.split).first;
}

int resolve_numeraire(const std::string& numeraire, const std::vector<std::string>& assets) {
    const auto it = std::find(assets.begin(), assets.end(), numeraire);
    if (it != assets.end()) return static_cast<int>(it - assets.begin());
    try {
        std::size_t pos = 0;
        const int idx = std::stoi(numeraire, &pos);
        if (pos == numeraire.size()) return idx;
    } catch (const std::exception&) {
    }
    throw sf::BadNumeraire("'" + numeraire + "' is neither an index nor a known ticker");
}

Eigen::MatrixXd load_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sf::FileNotFound(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::istringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw sf::MalformedRow(line_no, "non-numeric matrix entry '" + cell + "'");
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw sf::EmptyPanel(path + " holds no matrix rows");
    Eigen::MatrixXd m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw sf::MalformedRow(static_cast<long>(i + 1), "ragged matrix row");
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return m;
}

sf::FitSpec build_fit_spec(const FitArgs& fit, const CommonArgs& common,
                           const sf::ReturnPanel& train) {
    sf::FitSpec spec;
    spec.solver = sf::parse_solver(fit.solver);
    spec.rho = fit.rho;
    spec.numeraire = resolve_numeraire(fit.numeraire, train.assets);
    spec.cardinality = fit.cardinality;
    spec.plain_lars = fit.plain_lars;
    spec.cd_lambda = fit.l1;
    spec.lambda1 = fit.lambda1;
    spec.lambda2 = fit.lambda2;
    if (!fit.omega_file.empty()) spec.omega = load_matrix_csv(fit.omega_file);
    spec.spike_slab.a = fit.ss_a;
    spec.spike_slab.sigma2 = fit.ss_sigma2;
    if (fit.ss_sigma_e2 > 0.0) {
        spec.spike_slab.sigma_e2 = fit.ss_sigma_e2;
        spec.sigma_e2_auto = false;
    }
    spec.chain.n_iter = fit.iters;
    spec.chain.burn_in = fit.burn_in;
    spec.chain.thin = fit.thin;
    spec.chain.seed = common.seed;
    if (fit.rule == "interval")
        spec.rule = sf::SparsifyRule::kInterval;
    else if (fit.rule == "threshold")
        spec.rule = sf::SparsifyRule::kThreshold;
    else
        throw sf::BadConfig("rule must be interval or threshold");
    spec.threshold = fit.threshold;
    spec.long_only = !fit.allow_shorts;

    if (fit.lambda == "cv") {
        spec.lambda = sf::cross_validate_lambda(train, spec);
    } else {
        try {
            std::size_t pos = 0;
            spec.lambda = std::stod(fit.lambda, &pos);
            if (pos != fit.lambda.size()) throw std::invalid_argument(fit.lambda);
        } catch (const std::exception&) {
            throw sf::BadConfig("--lambda expects a number or 'cv'");
        }
    }
    return spec;
}

void add_common_options(CLI::App* cmd, CommonArgs& common, bool needs_split) {
    cmd->add_option("--data", common.data, "price (or return) panel CSV")->required();
    cmd->add_flag("--returns", common.already_returns,
                  "input already holds returns; skip the price conversion");
    cmd->add_option("--policy", common.policy, "missing-data policy: drop|strict")
        ->check(CLI::IsMember({"drop", "strict"}));
    auto* split = cmd->add_option("--split", common.split,
                                  "last training date (ISO-8601); later rows form the test set");
    if (needs_split) split->required();
    cmd->add_option("--out", common.out_dir, "output directory");
    cmd->add_option("--seed", common.seed, "global RNG seed")->envname("SPARSEFOLIO_SEED");
    cmd->set_config("--config", "", "flat key=value configuration file");
}

void add_fit_options(CLI::App* cmd, FitArgs& fit, bool with_solver_choice) {
    if (with_solver_choice) {
        cmd->add_option("--solver", fit.solver,
                        "lars|cd|enet|sbr|lasso-gibbs|horseshoe|qp|naive")
            ->required()
            ->check(CLI::IsMember(
                {"lars", "cd", "enet", "sbr", "lasso-gibbs", "horseshoe", "qp", "naive"}));
    }
    cmd->add_option("--rho", fit.rho, "target per-period portfolio return (default: panel mean)");
    cmd->add_option("--lambda", fit.lambda, "return-constraint tilt weight, or 'cv'");
    cmd->add_option("--numeraire", fit.numeraire, "eliminated asset (index or ticker)");
    cmd->add_option("--cardinality", fit.cardinality, "lars: target active-set size");
    cmd->add_flag("--plain-lars", fit.plain_lars, "lars: disable the lasso drop rule");
    cmd->add_option("--l1", fit.l1, "cd: l1 penalty weight");
    cmd->add_option("--lambda1", fit.lambda1, "enet: l1 weight");
    cmd->add_option("--lambda2", fit.lambda2, "enet: quadratic belief weight");
    cmd->add_option("--omega", fit.omega_file, "enet: penalty kernel CSV (from `bl`)");
    cmd->add_option("--a", fit.ss_a, "sbr: prior inclusion probability");
    cmd->add_option("--sigma2", fit.ss_sigma2, "sbr: slab variance");
    cmd->add_option("--sigma-e2", fit.ss_sigma_e2, "sbr: noise variance (default: auto)");
    cmd->add_option("--iters", fit.iters, "mcmc: total iterations");
    cmd->add_option("--burn-in", fit.burn_in, "mcmc: discarded prefix");
    cmd->add_option("--thin", fit.thin, "mcmc: keep-every stride");
    cmd->add_option("--rule", fit.rule, "mcmc: sparsification rule interval|threshold")
        ->check(CLI::IsMember({"interval", "threshold"}));
    cmd->add_option("--threshold", fit.threshold, "mcmc: threshold-rule cutoff");
    cmd->add_flag("--allow-shorts", fit.allow_shorts, "qp: drop the long-only constraint");
}

std::string out_path(const CommonArgs& common, const std::string& name) {
    return (std::filesystem::path(common.out_dir) / name).string();
}

// ---- subcommand bodies ----

int run_returns(const CommonArgs& common) {
    const sf::ReturnPanel panel = load_panel(common);
    sf::atomic_write(out_path(common, "returns.csv"), sf::returns_to_csv(panel, common.seed));
    return 0;
}

int run_select(const CommonArgs& common, const FitArgs& fit, const std::string& dump_file) {
    const sf::ReturnPanel panel = load_panel(common);
    const sf::ReturnPanel train = training_slice(common, panel);
    const sf::FitSpec spec = build_fit_spec(fit, common, train);
    if (!dump_file.empty()) {
        const sf::ReducedProblem problem =
            sf::reduce_problem(train, sf::resolve_rho(train, spec), spec.lambda, spec.numeraire);
        sf::atomic_write(dump_file, sf::dump_problem(problem));
    }
    const sf::PortfolioWeights weights = sf::fit_portfolio(train, spec);
    sf::atomic_write(out_path(common, "weights.csv"), sf::weights_to_csv(weights, common.seed));
    return 0;
}

int run_path(const CommonArgs& common, const FitArgs& fit) {
    const sf::ReturnPanel panel = load_panel(common);
    const sf::ReturnPanel train = training_slice(common, panel);
    sf::FitSpec spec = build_fit_spec(fit, common, train);
    const sf::ReducedProblem problem =
        sf::reduce_problem(train, sf::resolve_rho(train, spec), spec.lambda, spec.numeraire);
    const sf::SelectionPath path =
        sf::lars_path(problem.design, problem.target, {}, !spec.plain_lars);
    sf::atomic_write(out_path(common, "path.csv"),
                     sf::path_to_csv(path, spec.numeraire, problem.assets, common.seed));
    return 0;
}

int run_sample(const CommonArgs& common, const FitArgs& fit, bool dump_draws) {
    const sf::ReturnPanel panel = load_panel(common);
    const sf::ReturnPanel train = training_slice(common, panel);
    sf::FitSpec spec = build_fit_spec(fit, common, train);
    if (spec.solver != sf::SolverChoice::kLassoGibbs &&
        spec.solver != sf::SolverChoice::kHorseshoe)
        throw sf::BadConfig("sample requires --solver lasso-gibbs or horseshoe");

    if (dump_draws) {
        const sf::ReducedProblem problem =
            sf::reduce_problem(train, sf::resolve_rho(train, spec), spec.lambda, spec.numeraire);
        const sf::PosteriorDraws draws =
            spec.solver == sf::SolverChoice::kLassoGibbs
                ? sf::bayesian_lasso_gibbs(problem.design, problem.target, spec.chain)
                : sf::horseshoe_gibbs(problem.design, problem.target, spec.chain);
        sf::atomic_write(out_path(common, "draws.csv"), sf::draws_to_csv(draws));
    }
    const sf::PortfolioWeights weights = sf::fit_portfolio(train, spec);
    sf::atomic_write(out_path(common, "weights.csv"), sf::weights_to_csv(weights, common.seed));
    return 0;
}

int run_bl(const CommonArgs& common, const std::string& views_file, double tau, double sharpe,
           const std::string& market_weights_file, double strength) {
    const sf::ReturnPanel panel = load_panel(common);
    const sf::ReturnPanel train = training_slice(common, panel);
    const sf::Moments moments = sf::sample_moments(train);

    Eigen::VectorXd mw;
    if (market_weights_file.empty()) {
        mw = Eigen::VectorXd::Constant(train.cols(), 1.0 / static_cast<double>(train.cols()));
    } else {
        const sf::PortfolioWeights loaded = sf::weights_from_csv(market_weights_file);
        const sf::PortfolioWeights aligned = loaded;  // align by ticker below
        mw = Eigen::VectorXd::Zero(train.cols());
        for (std::size_t i = 0; i < aligned.assets.size(); ++i) {
            const auto it =
                std::find(train.assets.begin(), train.assets.end(), aligned.assets[i]);
            if (it == train.assets.end())
                throw sf::AssetMismatch("market-weight asset " + aligned.assets[i] +
                                        " missing from the panel");
            mw(static_cast<Eigen::Index>(it - train.assets.begin())) =
                aligned.weights(static_cast<Eigen::Index>(i));
        }
    }

    const sf::ViewSet views = sf::load_views(views_file, train.assets, tau);
    const sf::Equilibrium eq = sf::implied_returns(moments.sigma, mw, sharpe);
    const sf::BlPosterior posterior = sf::bl_update(eq, moments.sigma, views);

    std::ostringstream os;
    os << "# seed=" << common.seed << "\n";
    os << "asset,pi,posterior_mean\n";
    for (Eigen::Index i = 0; i < train.cols(); ++i) {
        os << train.assets[static_cast<std::size_t>(i)] << "," << sf::format_double(eq.pi(i)) << ","
           << sf::format_double(posterior.mean(i)) << "\n";
    }
    sf::atomic_write(out_path(common, "bl_posterior.csv"), os.str());

    const sf::ElasticNetConfig penalty = sf::views_to_penalty(views, strength);
    std::ostringstream pen;
    pen << "# seed=" << common.seed << "\n";
    pen << "# lambda2=" << sf::format_double(penalty.lambda2) << "\n";
    if (penalty.omega.size() > 0) {
        for (Eigen::Index i = 0; i < penalty.omega.rows(); ++i) {
            for (Eigen::Index j = 0; j < penalty.omega.cols(); ++j) {
                pen << (j ? "," : "") << sf::format_double(penalty.omega(i, j));
            }
            pen << "\n";
        }
    }
    sf::atomic_write(out_path(common, "enet_penalty.csv"), pen.str());
    return 0;
}

std::vector<sf::BacktestReport> evaluate_weight_files(const std::vector<std::string>& files,
                                                      const sf::ReturnPanel& test,
                                                      sf::Convention convention, bool drift) {
    std::vector<sf::BacktestReport> reports;
    std::vector<std::string> used;
    for (const auto& file : files) {
        const sf::PortfolioWeights w = sf::weights_from_csv(file);
        sf::BacktestReport r = sf::evaluate_portfolio(w, test, convention, drift);
        std::string label =
            !w.solver_tag.empty() ? w.solver_tag : std::filesystem::path(file).stem().string();
        while (std::find(used.begin(), used.end(), label) != used.end()) label += "_";
        used.push_back(label);
        r.label = label;
        reports.push_back(std::move(r));
    }
    return reports;
}

int run_backtest(const CommonArgs& common, const std::vector<std::string>& weight_files,
                 const std::string& convention_name, bool drift, const std::string& path_file,
                 const FitArgs& refit, const std::string& refit_solver, int refit_window,
                 int refit_stride) {
    const sf::ReturnPanel panel = load_panel(common);
    const auto [train, test] = sf::split_panel(panel, common.split);
    const sf::Convention convention =
        convention_name == "standard" ? sf::Convention::kStandard : sf::Convention::kPaper;

    std::vector<sf::BacktestReport> reports =
        evaluate_weight_files(weight_files, test, convention, drift);

    if (!path_file.empty()) {
        // evaluate every knot of a serialized selection path out of sample
        std::ifstream in(path_file);
        if (!in) throw sf::FileNotFound(path_file);
        std::map<int, std::pair<double, sf::PortfolioWeights>> steps;
        std::string line;
        long line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#' || line.rfind("step,", 0) == 0) continue;
            std::istringstream ss(line);
            std::string step_s, lambda_s, asset, weight_s;
            if (!std::getline(ss, step_s, ',') || !std::getline(ss, lambda_s, ',') ||
                !std::getline(ss, asset, ',') || !std::getline(ss, weight_s))
                throw sf::MalformedRow(line_no, "expected step,lambda,asset,weight");
            const int step = std::stoi(step_s);
            auto& entry = steps[step];
            entry.first = std::stod(lambda_s);
            entry.second.assets.push_back(asset);
            const Eigen::Index n = entry.second.weights.size();
            entry.second.weights.conservativeResize(n + 1);
            entry.second.weights(n) = std::stod(weight_s);
        }
        std::ostringstream os;
        os << "# seed=" << common.seed << "\n";
        os << "step,lambda,cardinality,mu,sigma,sharpe,final_growth\n";
        for (auto& [step, entry] : steps) {
            entry.second.solver_tag = "step" + std::to_string(step);
            const sf::BacktestReport r =
                sf::evaluate_portfolio(entry.second, test, convention, drift);
            os << step << "," << sf::format_double(entry.first) << "," << r.cardinality << ","
               << sf::format_double(r.mu_ann) << "," << sf::format_double(r.sigma_ann) << ","
               << sf::format_double(r.sharpe) << ","
               << sf::format_double(r.cumulative(r.cumulative.size() - 1)) << "\n";
        }
        sf::atomic_write(out_path(common, "path_oos.csv"), os.str());
    }

    if (!refit_solver.empty()) {
        FitArgs args = refit;
        args.solver = refit_solver;
        const sf::FitSpec spec = build_fit_spec(args, common, train);
        const sf::FitFn fit = [&spec](const sf::ReturnPanel& window) {
            return sf::fit_portfolio(window, spec);
        };
        reports.push_back(sf::rolling_backtest(panel, common.split, refit_window, refit_stride,
                                               fit, convention, refit_solver + "-rolling"));
    }

    if (reports.empty()) throw sf::BadConfig("nothing to backtest: give --weights, --path, or --refit-solver");

    sf::atomic_write(out_path(common, "report.csv"),
                     "# seed=" + std::to_string(common.seed) + "\n" +
                         sf::comparison_table_csv(reports));
    for (const auto& r : reports) {
        sf::atomic_write(out_path(common, "cumulative_" + r.label + ".csv"),
                         sf::cumulative_to_csv(r, common.seed));
    }
    std::cout << sf::comparison_table_text(reports);
    return 0;
}

int run_compare(const CommonArgs& common, const std::vector<std::string>& weight_files,
                const std::string& convention_name, bool drift) {
    const sf::ReturnPanel panel = load_panel(common);
    const auto [train, test] = sf::split_panel(panel, common.split);
    const sf::Convention convention =
        convention_name == "standard" ? sf::Convention::kStandard : sf::Convention::kPaper;
    const std::vector<sf::BacktestReport> reports =
        evaluate_weight_files(weight_files, test, convention, drift);
    sf::atomic_write(out_path(common, "report.csv"),
                     "# seed=" + std::to_string(common.seed) + "\n" +
                         sf::comparison_table_csv(reports));
    std::cout << sf::comparison_table_text(reports);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse Bayesian portfolio selection"};
    app.require_subcommand(1);

    // returns
    CommonArgs returns_common;
    auto* cmd_returns = app.add_subcommand("returns", "convert a price file to net returns");
    add_common_options(cmd_returns, returns_common, false);

    // select
    CommonArgs select_common;
    FitArgs select_fit;
    std::string dump_file;
    auto* cmd_select = app.add_subcommand("select", "fit one solver and write weights.csv");
    add_common_options(cmd_select, select_common, false);
    add_fit_options(cmd_select, select_fit, true);
    cmd_select->add_option("--dump-problem", dump_file, "also dump the reduced problem");

    // path
    CommonArgs path_common;
    FitArgs path_fit;
    auto* cmd_path = app.add_subcommand("path", "full l1 selection path as path.csv");
    add_common_options(cmd_path, path_common, false);
    add_fit_options(cmd_path, path_fit, false);

    // sample
    CommonArgs sample_common;
    FitArgs sample_fit;
    sample_fit.solver = "lasso-gibbs";
    bool dump_draws = false;
    auto* cmd_sample = app.add_subcommand("sample", "posterior draws plus summarized weights");
    add_common_options(cmd_sample, sample_common, false);
    add_fit_options(cmd_sample, sample_fit, true);
    cmd_sample->add_flag("--dump-draws", dump_draws, "write draws.csv (iteration,coordinate,value)");

    // bl
    CommonArgs bl_common;
    std::string views_file;
    std::string market_weights_file;
    double bl_tau = 0.05;
    double bl_sharpe = 0.5;
    double bl_strength = 1.0;
    auto* cmd_bl = app.add_subcommand("bl", "views file to posterior means and an enet penalty");
    add_common_options(cmd_bl, bl_common, false);
    cmd_bl->add_option("--views", views_file, "views CSV: type,assets,value,confidence")->required();
    cmd_bl->add_option("--tau", bl_tau, "prior strength on the equilibrium");
    cmd_bl->add_option("--sharpe", bl_sharpe, "market Sharpe ratio");
    cmd_bl->add_option("--market-weights", market_weights_file,
                       "market weight CSV (default: equal weights)");
    cmd_bl->add_option("--strength", bl_strength, "belief strength for the enet penalty");

    // backtest
    CommonArgs backtest_common;
    std::vector<std::string> backtest_weights;
    std::string backtest_convention = "paper";
    bool backtest_drift = false;
    std::string backtest_path_file;
    FitArgs refit_fit;
    std::string refit_solver;
    int refit_window = 500;
    int refit_stride = 21;
    auto* cmd_backtest =
        app.add_subcommand("backtest", "out-of-sample evaluation of stored weights");
    add_common_options(cmd_backtest, backtest_common, true);
    cmd_backtest->add_option("--weights", backtest_weights, "weights.csv files to evaluate");
    cmd_backtest->add_option("--convention", backtest_convention, "paper|standard")
        ->check(CLI::IsMember({"paper", "standard"}));
    cmd_backtest->add_flag("--drift", backtest_drift, "buy-and-hold drifting weights");
    cmd_backtest->add_option("--path", backtest_path_file,
                             "path.csv whose knots are each evaluated out of sample");
    cmd_backtest->add_option("--refit-solver", refit_solver,
                             "rolling re-fit with this solver (off by default)");
    cmd_backtest->add_option("--refit-window", refit_window, "rolling window length in rows");
    cmd_backtest->add_option("--refit-stride", refit_stride, "days held between re-fits");
    add_fit_options(cmd_backtest, refit_fit, false);

    // compare
    CommonArgs compare_common;
    std::vector<std::string> compare_weights;
    std::string compare_convention = "paper";
    bool compare_drift = false;
    auto* cmd_compare = app.add_subcommand("compare", "side-by-side table for many portfolios");
    add_common_options(cmd_compare, compare_common, true);
    cmd_compare->add_option("--weights", compare_weights, "weights.csv files to compare")
        ->required();
    cmd_compare->add_option("--convention", compare_convention, "paper|standard")
        ->check(CLI::IsMember({"paper", "standard"}));
    cmd_compare->add_flag("--drift", compare_drift, "buy-and-hold drifting weights");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_returns->parsed()) return run_returns(returns_common);
        if (cmd_select->parsed()) return run_select(select_common, select_fit, dump_file);
        if (cmd_path->parsed()) return run_path(path_common, path_fit);
        if (cmd_sample->parsed()) return run_sample(sample_common, sample_fit, dump_draws);
        if (cmd_bl->parsed())
            return run_bl(bl_common, views_file, bl_tau, bl_sharpe, market_weights_file,
                          bl_strength);
        if (cmd_backtest->parsed())
            return run_backtest(backtest_common, backtest_weights, backtest_convention,
                                backtest_drift, backtest_path_file, refit_fit, refit_solver,
                                refit_window, refit_stride);
        if (cmd_compare->parsed())
            return run_compare(compare_common, compare_weights, compare_convention, compare_drift);
    } catch (const sf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
