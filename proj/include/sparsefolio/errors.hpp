#pragma once

#include <stdexcept>
#include <string>

namespace sparsefolio {

// Base for all domain errors. `name()` is stable and machine-checkable;
// what() prepends it to the detail message.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// market_data
struct FileNotFound final : Error {
    explicit FileNotFound(const std::string& d) : Error("FileNotFound", d) {}
};
struct MalformedRow final : Error {
    MalformedRow(long line, const std::string& d)
        : Error("MalformedRow", "line " + std::to_string(line) + ": " + d), line(line) {}
    long line;
};
struct NonPositivePrice final : Error {
    NonPositivePrice(const std::string& date, const std::string& asset)
        : Error("NonPositivePrice", asset + " on " + date) {}
};
struct EmptyPanel final : Error {
    explicit EmptyPanel(const std::string& d) : Error("EmptyPanel", d) {}
};
struct TooFewRows final : Error {
    explicit TooFewRows(const std::string& d) : Error("TooFewRows", d) {}
};
struct BoundaryOutOfRange final : Error {
    explicit BoundaryOutOfRange(const std::string& d) : Error("BoundaryOutOfRange", d) {}
};
struct EmptySplit final : Error {
    explicit EmptySplit(const std::string& d) : Error("EmptySplit", d) {}
};

// transform
struct SingularDesign final : Error {
    explicit SingularDesign(const std::string& d) : Error("SingularDesign", d) {}
};
struct BadNumeraire final : Error {
    explicit BadNumeraire(const std::string& d) : Error("BadNumeraire", d) {}
};
struct RankDeficient final : Error {
    explicit RankDeficient(const std::string& d) : Error("RankDeficient", d) {}
};
struct NonFiniteCoefficient final : Error {
    explicit NonFiniteCoefficient(const std::string& d) : Error("NonFiniteCoefficient", d) {}
};

// path_solvers
struct DegenerateDesign final : Error {
    explicit DegenerateDesign(const std::string& d) : Error("DegenerateDesign", d) {}
};
struct BadOmega final : Error {
    explicit BadOmega(const std::string& d) : Error("BadOmega", d) {}
};
struct InfeasibleTarget final : Error {
    explicit InfeasibleTarget(const std::string& d) : Error("InfeasibleTarget", d) {}
};
struct SingularCovariance final : Error {
    explicit SingularCovariance(const std::string& d) : Error("SingularCovariance", d) {}
};

// mcmc_solvers
struct NumericalOverflow final : Error {
    explicit NumericalOverflow(const std::string& d) : Error("NumericalOverflow", d) {}
};
struct EmptyDraws final : Error {
    explicit EmptyDraws(const std::string& d) : Error("EmptyDraws", d) {}
};

// views
struct SingularSystem final : Error {
    explicit SingularSystem(const std::string& d) : Error("SingularSystem", d) {}
};

// backtest
struct AssetMismatch final : Error {
    explicit AssetMismatch(const std::string& d) : Error("AssetMismatch", d) {}
};
struct EmptyTestPanel final : Error {
    explicit EmptyTestPanel(const std::string& d) : Error("EmptyTestPanel", d) {}
};
struct EmptyAssetList final : Error {
    explicit EmptyAssetList(const std::string& d) : Error("EmptyAssetList", d) {}
};

// shared config validation
struct BadConfig final : Error {
    explicit BadConfig(const std::string& d) : Error("BadConfig", d) {}
};

}  // namespace sparsefolio
