#pragma once

#include <Eigen/Dense>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "sparsefolio/market_data.hpp"
#include "sparsefolio/rng.hpp"

namespace test_support {

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        dir_ = std::filesystem::temp_directory_path() /
               ("sparsefolio_" + tag + "_" + std::to_string(counter_++));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    const std::filesystem::path& dir() const { return dir_; }

private:
    static inline int counter_ = 0;
    std::filesystem::path dir_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline Eigen::MatrixXd random_matrix(sparsefolio::Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
    return m;
}

inline Eigen::VectorXd random_vector(sparsefolio::Rng& rng, Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.normal();
    return v;
}

// T x k design with zero-mean, unit-norm, mutually orthogonal columns.
// Zero column means survive the QR because the centered column space is
// orthogonal to the all-ones vector.
inline Eigen::MatrixXd orthonormal_centered_design(sparsefolio::Rng& rng, Eigen::Index rows,
                                                   Eigen::Index cols) {
    Eigen::MatrixXd m = random_matrix(rng, rows, cols);
    m.rowwise() -= m.colwise().mean();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
}

inline std::string iso_date(int serial) {
    // Maps 0,1,2,... onto a synthetic trading calendar (12 x 28-day months).
    const int year = 2016 + serial / 336;
    const int month = 1 + (serial % 336) / 28;
    const int day = 1 + (serial % 336) % 28;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return std::string(buf);
}

inline std::vector<std::string> date_range(int n, int start_serial = 0) {
    std::vector<std::string> dates;
    dates.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) dates.push_back(iso_date(start_serial + i));
    return dates;
}

inline sparsefolio::ReturnPanel make_panel(const Eigen::MatrixXd& returns,
                                           int start_serial = 0) {
    sparsefolio::ReturnPanel panel;
    panel.returns = returns;
    panel.dates = date_range(static_cast<int>(returns.rows()), start_serial);
    for (Eigen::Index j = 0; j < returns.cols(); ++j)
        panel.assets.push_back("A" + std::to_string(j));
    return panel;
}

struct SyntheticMarket {
    sparsefolio::ReturnPanel panel;
    std::string boundary;  // split date: `train_rows` rows on the train side
};

// Factor-structure daily returns: r_t = mu + B f_t + eps_t with a handful of
// common factors, so groups of assets are strongly correlated.
inline SyntheticMarket synthetic_market(std::uint64_t seed, int assets, int train_rows,
                                        int test_rows, int factors = 5) {
    sparsefolio::Rng rng(seed);
    const int T = train_rows + test_rows;
    Eigen::MatrixXd loadings = random_matrix(rng, assets, factors) * 0.008;
    Eigen::VectorXd mu(assets);
    for (int i = 0; i < assets; ++i) mu(i) = 0.0002 + 0.0006 * rng.uniform();
    Eigen::MatrixXd returns(T, assets);
    for (int t = 0; t < T; ++t) {
        const Eigen::VectorXd f = random_vector(rng, factors);
        for (int i = 0; i < assets; ++i) {
            returns(t, i) = mu(i) + loadings.row(i).dot(f) + 0.004 * rng.normal();
        }
    }
    SyntheticMarket market;
    market.panel = make_panel(returns);
    market.boundary = market.panel.dates[static_cast<std::size_t>(train_rows - 1)];
    return market;
}

// Renders a return panel back into a price CSV (base price 100).
inline std::string prices_csv_from_returns(const sparsefolio::ReturnPanel& panel) {
    std::string out = "date";
    for (const auto& a : panel.assets) out += "," + a;
    out += "\n";
    Eigen::VectorXd level = Eigen::VectorXd::Constant(panel.cols(), 100.0);
    // base price row dated one day before the panel's first return date
    out += "2015-12-28";
    for (Eigen::Index j = 0; j < panel.cols(); ++j) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), ",%.10f", level(j));
        out += buf;
    }
    out += "\n";
    for (Eigen::Index t = 0; t < panel.rows(); ++t) {
        level.array() *= (1.0 + panel.returns.row(t).transpose().array());
        out += panel.dates[static_cast<std::size_t>(t)];
        for (Eigen::Index j = 0; j < panel.cols(); ++j) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), ",%.10f", level(j));
            out += buf;
        }
        out += "\n";
    }
    return out;
}

}  // namespace test_support
