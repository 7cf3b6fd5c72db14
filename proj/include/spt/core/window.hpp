#pragma once

#include "spt/core/weights.hpp"
#include "spt/marketdata/panel.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace spt::core {

/// A contiguous run of trading days starting on a month's first day.
struct WindowSpan
{
    std::size_t start_month = 0; // index into ReturnPanel::month_starts()
    std::size_t first_day = 0;
    std::size_t day_count = 0;
};

/// Every window of `window_months` consecutive calendar months in the panel,
/// one per starting month. The last window ends on the panel's last day.
std::vector<WindowSpan> window_spans(const marketdata::ReturnPanel& panel, std::size_t window_months);

/// Outcome of holding one weight vector through one window. All quantities
/// are per window (not annualized).
struct WindowResult
{
    std::size_t start_month = 0;
    double total_log_return = 0.0;  // log(Z_end / Z_start)
    double average_growth = 0.0;    // sum over days of sum_i w_i(t) log(1 + r_i(t))
    double excess_growth = 0.0;     // total_log_return - average_growth
    double arithmetic_return = 0.0; // Z_end / Z_start - 1
    std::size_t delistings = 0;     // members that left mid-window
};

/// Gross and log-gross returns of a fixed universe over a window, laid out
/// day-major. A member absent on some day is NaN from then on.
class WindowReturns
{
public:
    static WindowReturns extract(const marketdata::ReturnPanel& panel,
                                 std::span<const marketdata::SecurityIndex> universe, const WindowSpan& span);

    std::size_t days() const noexcept { return days_; }
    std::size_t members() const noexcept { return members_; }
    std::span<const double> gross(std::size_t day) const { return {gross_.data() + day * members_, members_}; }
    std::span<const double> log_gross(std::size_t day) const { return {log_gross_.data() + day * members_, members_}; }
    bool complete() const noexcept { return complete_; }

private:
    std::size_t days_ = 0;
    std::size_t members_ = 0;
    bool complete_ = true;
    std::vector<double> gross_;
    std::vector<double> log_gross_;
};

/// Buy-and-hold: the initial weights fix share counts and then drift with
/// prices, w_i(t+1) = w_i(t)(1 + r_i(t)) / sum_j w_j(t)(1 + r_j(t)). A member
/// that disappears keeps its last return; its value is then spread pro-rata
/// over the survivors. Throws std::runtime_error if every member leaves.
WindowResult evaluate_window(const WindowReturns& returns, std::span<const double> weights);

/// Extracts the window for `weights.universe` and evaluates it.
WindowResult run_window(const marketdata::ReturnPanel& panel, const WeightVector& weights, const WindowSpan& span);

} // namespace spt::core
