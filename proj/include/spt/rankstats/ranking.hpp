#pragma once

#include "spt/marketdata/panel.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace spt::rank {

struct RankEntry
{
    std::size_t rank = 0; // 1-based
    marketdata::SecurityIndex security = 0;
    double market_cap = 0.0;
    double log_return = 0.0; // log(1 + total return) for the day
};

/// One day's top-n securities by capitalization, largest first. Equal caps
/// are ordered by SecurityId ascending.
struct RankedDay
{
    marketdata::TradingDay date;
    std::vector<RankEntry> entries;
};

/// Raised when a day has fewer than n rankable securities.
class RankingError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Ranks the securities with both a cap and a return on `day_index`.
RankedDay rank_day(const marketdata::ReturnPanel& panel, std::size_t day_index, std::size_t n);
RankedDay rank_day(const marketdata::ReturnPanel& panel, const marketdata::TradingDay& date, std::size_t n);

/// Per-rank time statistics of daily log-returns, annualized.
struct RankStatistics
{
    std::vector<double> mean_log_return; // g_k: mean daily log-return x days_per_year
    std::vector<double> variance;        // v_k: sample variance (n - 1) x days_per_year
    std::size_t observation_count = 0;   // days ranked
    std::size_t days_per_year = 250;

    std::size_t ranks() const noexcept { return mean_log_return.size(); }
};

/// Ranks every day of the panel to depth n and accumulates per-rank means and
/// variances. Days are reduced in fixed-size chunks merged in date order, so
/// the result is identical for any worker count. Needs at least two days.
RankStatistics rank_log_return_means(const marketdata::ReturnPanel& panel, std::size_t n,
                                     std::size_t days_per_year = 250, unsigned workers = 0);

} // namespace spt::rank
