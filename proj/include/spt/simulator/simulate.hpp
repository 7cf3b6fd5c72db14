#pragma once

#include "spt/marketdata/panel.hpp"
#include "spt/simulator/market_config.hpp"

#include <cstddef>
#include <vector>

namespace spt::sim {

/// Trading dates for `n_days` days: `days_per_year` days per year spread
/// over the 12 months as evenly as possible, numbered 01, 02, ... within
/// each month. Only ordering and month membership matter downstream.
std::vector<marketdata::TradingDay> synthetic_calendar(std::size_t n_days, std::size_t days_per_year, int start_year);

/// Generates a panel by exact log-Euler stepping of the rank-parameterized
/// dynamics:
///
///     log X(t+dt) - log X(t) = growth[k] dt + vol[k] sqrt(dt) Z,   dt = 1 / days_per_year
///
/// where k is the stock's capitalization rank entering the day. Under the
/// one-factor model Z = sqrt(rho) F + sqrt(1 - rho) e with F shared by all
/// stocks that day. Shares are constant, so caps move with prices. Each
/// stock draws from its own seeded substream, which makes the output
/// bit-identical for any worker count.
marketdata::ReturnPanel simulate_market(const MarketConfig& config, unsigned workers = 0);

} // namespace spt::sim
