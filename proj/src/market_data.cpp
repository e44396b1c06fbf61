#include "sparsefolio/market_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace sparsefolio {

namespace {

std::string trim(const std::string& s) {
    auto b = s.begin();
    auto e = s.end();
    while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
    while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
    return std::string(b, e);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::optional<double> parse_number(const std::string& cell) {
    if (cell.empty()) return std::nullopt;
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

struct RawTable {
    std::vector<std::string> dates;
    std::vector<std::string> assets;
    Eigen::MatrixXd values;
};

// Shared loader for both price and return files. `accept` decides whether a
// parsed value is admissible; rows failing it are dropped or rejected per
// policy with the supplied error thrower.
template <typename Accept, typename Reject>
RawTable load_table(const std::string& path, MissingPolicy policy, Accept accept, Reject reject) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);

    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw EmptyPanel(path + " has no header row");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_csv(line);
    if (header.size() < 2) throw MalformedRow(line_no, "header needs a date column plus >=1 ticker");
    if (header[0] != "date") throw MalformedRow(line_no, "first header column must be 'date'");

    RawTable t;
    t.assets.assign(header.begin() + 1, header.end());
    for (const auto& a : t.assets) {
        if (a.empty()) throw MalformedRow(line_no, "empty ticker name in header");
    }
    const std::size_t p = t.assets.size();

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != p + 1) {
            if (policy == MissingPolicy::kStrict)
                throw MalformedRow(line_no, "expected " + std::to_string(p + 1) + " cells, got " +
                                                std::to_string(cells.size()));
            continue;
        }
        const std::string& date = cells[0];
        if (!is_iso_date(date)) {
            if (policy == MissingPolicy::kStrict)
                throw MalformedRow(line_no, "bad date '" + date + "' (ISO-8601 required)");
            continue;
        }
        std::vector<double> vals(p);
        bool ok = true;
        for (std::size_t j = 0; j < p && ok; ++j) {
            const auto v = parse_number(cells[j + 1]);
            if (!v) {
                if (policy == MissingPolicy::kStrict)
                    throw MalformedRow(line_no, "missing or non-numeric value for " + t.assets[j]);
                ok = false;
            } else if (!accept(*v)) {
                if (policy == MissingPolicy::kStrict) reject(date, t.assets[j], line_no);
                ok = false;
            } else {
                vals[j] = *v;
            }
        }
        if (!ok) continue;
        if (!t.dates.empty() && date <= t.dates.back())
            throw MalformedRow(line_no, "dates must be strictly increasing (" + date + " after " +
                                            t.dates.back() + ")");
        t.dates.push_back(date);
        rows.push_back(std::move(vals));
    }

    if (rows.empty()) throw EmptyPanel(path + " has no usable data rows");
    t.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < p; ++j)
            t.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return t;
}

}  // namespace

bool is_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    const int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

PricePanel load_prices(const std::string& path, MissingPolicy policy) {
    auto t = load_table(
        path, policy, [](double v) { return v > 0.0; },
        [](const std::string& date, const std::string& asset, long) {
            throw NonPositivePrice(date, asset);
        });
    return PricePanel{std::move(t.dates), std::move(t.assets), std::move(t.values)};
}

ReturnPanel load_returns(const std::string& path, MissingPolicy policy) {
    auto t = load_table(
        path, policy, [](double v) { return v > -1.0; },
        [](const std::string& date, const std::string& asset, long line) {
            throw MalformedRow(line, "return <= -1 for " + asset + " on " + date);
        });
    return ReturnPanel{std::move(t.dates), std::move(t.assets), std::move(t.values)};
}

ReturnPanel to_returns(const PricePanel& panel) {
    const Eigen::Index T = panel.rows();
    if (T < 2) throw TooFewRows("need >= 2 price rows, got " + std::to_string(T));
    ReturnPanel out;
    out.assets = panel.assets;
    out.dates.assign(panel.dates.begin() + 1, panel.dates.end());
    out.returns = panel.prices.bottomRows(T - 1).array() / panel.prices.topRows(T - 1).array() - 1.0;
    return out;
}

std::pair<ReturnPanel, ReturnPanel> split_panel(const ReturnPanel& panel,
                                                const std::string& boundary) {
    if (panel.rows() == 0) throw EmptyPanel("cannot split an empty panel");
    if (!is_iso_date(boundary)) throw BoundaryOutOfRange("'" + boundary + "' is not an ISO date");
    if (boundary < panel.dates.front() || boundary > panel.dates.back())
        throw BoundaryOutOfRange(boundary + " outside [" + panel.dates.front() + ", " +
                                 panel.dates.back() + "]");

    const auto it = std::upper_bound(panel.dates.begin(), panel.dates.end(), boundary);
    const Eigen::Index n_train = static_cast<Eigen::Index>(it - panel.dates.begin());
    const Eigen::Index n_test = panel.rows() - n_train;
    if (n_train == 0 || n_test == 0)
        throw EmptySplit("boundary " + boundary + " leaves train=" + std::to_string(n_train) +
                         ", test=" + std::to_string(n_test));

    ReturnPanel train{{panel.dates.begin(), it}, panel.assets, panel.returns.topRows(n_train)};
    ReturnPanel test{{it, panel.dates.end()}, panel.assets, panel.returns.bottomRows(n_test)};
    return {std::move(train), std::move(test)};
}

}  // namespace sparsefolio
