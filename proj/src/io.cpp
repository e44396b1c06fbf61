#include "sparsefolio/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sparsefolio {

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FileNotFound("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.good()) throw FileNotFound("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
}

std::string weights_to_csv(const PortfolioWeights& weights, std::uint64_t seed) {
    std::ostringstream os;
    os << "# seed=" << seed << "\n";
    os << "# solver=" << weights.solver_tag << "\n";
    for (const auto& [key, value] : weights.hyperparams) os << "# " << key << "=" << value << "\n";
    os << "asset,weight\n";
    for (std::size_t i = 0; i < weights.assets.size(); ++i) {
        os << weights.assets[i] << "," << format_double(weights.weights(static_cast<Eigen::Index>(i)))
           << "\n";
    }
    return os.str();
}

PortfolioWeights weights_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);
    PortfolioWeights w;
    std::vector<double> vals;
    std::string line;
    long line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (line.rfind("# solver", 0) == 0 && eq != std::string::npos)
                w.solver_tag = line.substr(eq + 1);
            continue;
        }
        if (!header_seen) {
            if (line != "asset,weight") throw MalformedRow(line_no, "expected header asset,weight");
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw MalformedRow(line_no, "expected asset,weight");
        w.assets.push_back(line.substr(0, comma));
        try {
            vals.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw MalformedRow(line_no, "non-numeric weight");
        }
    }
    if (vals.empty()) throw EmptyPanel(path + " contains no weights");
    w.weights = Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    return w;
}

std::string path_to_csv(const SelectionPath& path, int numeraire,
                        const std::vector<std::string>& assets, std::uint64_t seed) {
    std::ostringstream os;
    os << "# seed=" << seed << "\n";
    os << "step,lambda,asset,weight\n";
    for (std::size_t step = 0; step < path.knots.size(); ++step) {
        const auto& knot = path.knots[step];
        const PortfolioWeights w = recover_weights(knot.coeffs, numeraire, assets);
        for (std::size_t i = 0; i < assets.size(); ++i) {
            os << step << "," << format_double(knot.lambda) << "," << assets[i] << ","
               << format_double(w.weights(static_cast<Eigen::Index>(i))) << "\n";
        }
    }
    return os.str();
}

std::string returns_to_csv(const ReturnPanel& panel, std::uint64_t seed) {
    std::ostringstream os;
    os << "# seed=" << seed << "\n";
    os << "date";
    for (const auto& a : panel.assets) os << "," << a;
    os << "\n";
    for (Eigen::Index t = 0; t < panel.rows(); ++t) {
        os << panel.dates[static_cast<std::size_t>(t)];
        for (Eigen::Index j = 0; j < panel.cols(); ++j)
            os << "," << format_double(panel.returns(t, j));
        os << "\n";
    }
    return os.str();
}

std::string cumulative_to_csv(const BacktestReport& report, std::uint64_t seed) {
    std::ostringstream os;
    os << "# seed=" << seed << "\n";
    os << "date,value\n";
    for (Eigen::Index t = 0; t < report.cumulative.size(); ++t) {
        os << report.dates[static_cast<std::size_t>(t)] << ","
           << format_double(report.cumulative(t)) << "\n";
    }
    return os.str();
}

std::string draws_to_csv(const PosteriorDraws& draws) {
    std::ostringstream os;
    os << "# seed=" << draws.seed << "\n";
    os << "iteration,coordinate,value\n";
    for (Eigen::Index i = 0; i < draws.samples.rows(); ++i) {
        for (Eigen::Index j = 0; j < draws.samples.cols(); ++j) {
            os << i << "," << j << "," << format_double(draws.samples(i, j)) << "\n";
        }
    }
    return os.str();
}

}  // namespace sparsefolio
