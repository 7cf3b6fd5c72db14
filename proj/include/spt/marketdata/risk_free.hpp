#pragma once

#include "spt/marketdata/panel.hpp"

#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

namespace spt::marketdata {

/// One-year yields (annualized decimal fractions) by observation date.
class RiskFreeCurve
{
public:
    RiskFreeCurve() = default;
    /// Throws std::invalid_argument unless dates are strictly increasing.
    explicit RiskFreeCurve(std::vector<std::pair<TradingDay, double>> observations);

    /// Yield of the latest observation on or before `date`. Throws
    /// std::out_of_range naming the date if there is none.
    double yield_on(const TradingDay& date) const;

    const std::vector<std::pair<TradingDay, double>>& observations() const noexcept { return observations_; }
    bool empty() const noexcept { return observations_.empty(); }

private:
    std::vector<std::pair<TradingDay, double>> observations_;
};

/// Two columns with a header: date, yield. '#' lines are comments.
RiskFreeCurve read_risk_free_csv(std::istream& in, const std::string& source = "<stream>");
RiskFreeCurve read_risk_free_csv(const std::filesystem::path& path);
void write_risk_free_csv(const RiskFreeCurve& curve, std::ostream& out);

} // namespace spt::marketdata
