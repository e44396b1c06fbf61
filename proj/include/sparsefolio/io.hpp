#pragma once

#include <cstdint>
#include <string>

#include "sparsefolio/backtest.hpp"
#include "sparsefolio/mcmc_solvers.hpp"
#include "sparsefolio/path_solvers.hpp"
#include "sparsefolio/transform.hpp"

namespace sparsefolio {

// Write-to-temp-then-rename in the target directory.
void atomic_write(const std::string& path, const std::string& content);

// Fixed %.12g rendering so identical doubles always serialize identically.
std::string format_double(double v);

std::string weights_to_csv(const PortfolioWeights& weights, std::uint64_t seed);
PortfolioWeights weights_from_csv(const std::string& path);

// One row per (knot, asset): step,lambda,asset,weight with weights recovered
// through the numeraire at every knot.
std::string path_to_csv(const SelectionPath& path, int numeraire,
                        const std::vector<std::string>& assets, std::uint64_t seed);

std::string returns_to_csv(const ReturnPanel& panel, std::uint64_t seed);

std::string cumulative_to_csv(const BacktestReport& report, std::uint64_t seed);

// iteration,coordinate,value rows for external chain diagnostics.
std::string draws_to_csv(const PosteriorDraws& draws);

}  // namespace sparsefolio
