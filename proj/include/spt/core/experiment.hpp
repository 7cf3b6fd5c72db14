#pragma once

#include "spt/core/weights.hpp"
#include "spt/core/window.hpp"
#include "spt/marketdata/panel.hpp"
#include "spt/marketdata/risk_free.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spt::core {

struct ExperimentConfig
{
    std::size_t universe_size = 1000;
    std::size_t window_months = 12;
    std::size_t n_random_draws = 1000;
    unsigned workers = 0;
};

enum class Metric {
    total_log_return,
    average_growth,
    excess_growth,
    arithmetic_return,
    arithmetic_stdev,
    sharpe_ratio
};

inline constexpr std::array kAllMetrics = {Metric::total_log_return, Metric::average_growth, Metric::excess_growth,
                                           Metric::arithmetic_return, Metric::arithmetic_stdev, Metric::sharpe_ratio};

std::string_view metric_key(Metric metric) noexcept;

/// Experiment-level aggregates of one strategy. Window quantities are
/// already annual (one window = one year), so they are plain means over
/// windows. The standard deviation is taken across the raw overlapping
/// windows (n - 1). Sharpe = mean(arithmetic - risk-free at window start) / stdev.
struct MetricSet
{
    double total_log_return = 0.0;
    double average_growth = 0.0;
    double excess_growth = 0.0;
    double arithmetic_return = 0.0;
    double arithmetic_stdev = 0.0;
    double sharpe_ratio = 0.0;

    double get(Metric metric) const noexcept;
    double& get(Metric metric) noexcept;
    MetricSet operator-(const MetricSet& other) const noexcept;
};

/// Aggregates window results; `risk_free[i]` is matched to `windows[i]`.
MetricSet aggregate_windows(std::span<const WindowResult> windows, std::span<const double> risk_free);

/// Percentile with linear interpolation between order statistics
/// (p in [0, 1]; p = 0.5 is the median).
double percentile(std::vector<double> values, double p);

struct StrategySummary
{
    StrategySpec spec;
    MetricSet value; // the aggregate; median across draws for RW and IRW
    std::optional<MetricSet> p10;
    std::optional<MetricSet> p90;
    std::size_t draws = 1;
    /// Per-window results. For RW and IRW each field is the median across draws.
    std::vector<WindowResult> windows;
    /// RW and IRW only: the aggregate of every draw, in draw order.
    std::vector<MetricSet> draw_aggregates;
};

struct WindowInfo
{
    std::size_t start_month = 0;
    marketdata::TradingDay start_date;
    std::size_t first_day = 0;
    std::size_t day_count = 0;
    double risk_free = 0.0;
    std::size_t delistings = 0; // members of the universe that left mid-window
};

struct InvariantCheck
{
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

/// Table-shaped outcome of the overlapping-window experiment.
struct DecompositionReport
{
    std::size_t universe_size = 0;
    std::size_t window_months = 0;
    std::size_t n_random_draws = 0;
    std::vector<WindowInfo> windows;
    MetricSet cap_weighted; // baseline for the relative rows, always computed
    std::vector<StrategySummary> strategies;
    std::vector<InvariantCheck> checks;

    /// Strategy value minus the cap-weighted value.
    MetricSet relative(const StrategySummary& s) const noexcept { return s.value - cap_weighted; }
    bool all_checks_pass() const noexcept;
    const StrategySummary* find(StrategyKind kind) const noexcept;
};

/// Runs every strategy on every window: rank the top `universe_size`
/// securities on the window's first day, weight them, hold for
/// `window_months` months. RW and IRW are replicated `n_random_draws` times
/// with fresh weights for every (draw, window) from a seed derived from
/// (strategy seed, kind, draw, start month). Windows run in parallel;
/// results are reduced in window order, so the report does not depend on
/// the worker count. Risk-free lookups are checked before any window runs.
DecompositionReport run_experiment(const marketdata::ReturnPanel& panel, std::span<const StrategySpec> strategies,
                                   const marketdata::RiskFreeCurve& risk_free, const ExperimentConfig& config);

} // namespace spt::core
