#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "sparsefolio/errors.hpp"

namespace sparsefolio {

enum class MissingPolicy { kDrop, kStrict };

// Dated T x p matrix of positive prices. Dates are ISO-8601 strings and
// strictly increasing, so lexicographic order equals calendar order.
struct PricePanel {
    std::vector<std::string> dates;   // length T
    std::vector<std::string> assets;  // length p
    Eigen::MatrixXd prices;           // T x p

    Eigen::Index rows() const { return prices.rows(); }
    Eigen::Index cols() const { return prices.cols(); }
};

// Dated T x p matrix of per-period net returns (each entry > -1).
struct ReturnPanel {
    std::vector<std::string> dates;
    std::vector<std::string> assets;
    Eigen::MatrixXd returns;

    Eigen::Index rows() const { return returns.rows(); }
    Eigen::Index cols() const { return returns.cols(); }
};

bool is_iso_date(const std::string& s);

// CSV with header `date,TICKER1,...,TICKERp`. Under kDrop, rows with a
// missing, non-numeric, or non-positive cell are removed; under kStrict
// they raise MalformedRow / NonPositivePrice.
PricePanel load_prices(const std::string& path, MissingPolicy policy = MissingPolicy::kDrop);

// Same file schema with returns in place of prices.
ReturnPanel load_returns(const std::string& path, MissingPolicy policy = MissingPolicy::kDrop);

// Net returns p_t/p_{t-1} - 1; output row t is dated by the later day of the pair.
ReturnPanel to_returns(const PricePanel& panel);

// train = rows dated <= boundary, test = rows after.
std::pair<ReturnPanel, ReturnPanel> split_panel(const ReturnPanel& panel,
                                                const std::string& boundary);

}  // namespace sparsefolio
