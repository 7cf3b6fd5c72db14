#include "spt/core/window.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace spt::core {

std::vector<WindowSpan> window_spans(const marketdata::ReturnPanel& panel, std::size_t window_months)
{
    if (window_months == 0)
        throw std::invalid_argument("window_months must be positive");
    const auto starts = panel.month_starts();
    std::vector<WindowSpan> spans;
    for (std::size_t m = 0; m + window_months <= starts.size(); ++m) {
        const std::size_t end = m + window_months < starts.size() ? starts[m + window_months] : panel.day_count();
        spans.push_back(WindowSpan{m, starts[m], end - starts[m]});
    }
    return spans;
}

WindowReturns WindowReturns::extract(const marketdata::ReturnPanel& panel,
                                     std::span<const marketdata::SecurityIndex> universe, const WindowSpan& span)
{
    if (span.day_count == 0 || span.first_day + span.day_count > panel.day_count())
        throw std::out_of_range("window span outside the panel");

    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    WindowReturns out;
    out.days_ = span.day_count;
    out.members_ = universe.size();
    out.gross_.assign(out.days_ * out.members_, nan);
    out.log_gross_.assign(out.days_ * out.members_, nan);

    std::vector<std::int32_t> slot(panel.securities().size(), -1);
    for (std::size_t m = 0; m < universe.size(); ++m) {
        if (universe[m] >= slot.size())
            throw std::out_of_range("universe references unknown security");
        slot[universe[m]] = static_cast<std::int32_t>(m);
    }
    std::vector<char> alive(out.members_, 1);

    for (std::size_t d = 0; d < out.days_; ++d) {
        double* gross = out.gross_.data() + d * out.members_;
        double* log_gross = out.log_gross_.data() + d * out.members_;
        for (const auto& rec : panel.day(span.first_day + d).records) {
            const std::int32_t m = slot[rec.security];
            if (m < 0 || !alive[static_cast<std::size_t>(m)] || !rec.has_return())
                continue;
            gross[m] = 1.0 + rec.total_return;
            log_gross[m] = std::log1p(rec.total_return);
        }
        // Once a member misses a day it stays out for the rest of the window.
        for (std::size_t m = 0; m < out.members_; ++m) {
            if (alive[m] && std::isnan(gross[m])) {
                alive[m] = 0;
                out.complete_ = false;
            }
        }
    }
    return out;
}

WindowResult evaluate_window(const WindowReturns& returns, std::span<const double> weights)
{
    if (weights.size() != returns.members())
        throw std::invalid_argument("evaluate_window: weights do not match the window universe");

    const std::size_t n = weights.size();
    std::vector<double> v(weights.begin(), weights.end());
    std::vector<char> alive(n, 1);
    WindowResult result;
    double log_value = 0.0;
    double average_growth = 0.0;

    for (std::size_t d = 0; d < returns.days(); ++d) {
        const auto gross = returns.gross(d);
        const auto log_gross = returns.log_gross(d);

        if (!returns.complete()) {
            bool exited = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (alive[i] && std::isnan(gross[i])) {
                    alive[i] = 0;
                    v[i] = 0.0;
                    exited = true;
                    ++result.delistings;
                }
            }
            if (exited) {
                double survivors = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    survivors += v[i];
                if (!(survivors > 0.0))
                    throw std::runtime_error("evaluate_window: every holding left the universe on day " +
                                             std::to_string(d) + " of the window");
                for (std::size_t i = 0; i < n; ++i)
                    v[i] /= survivors;
            }
        }

        double portfolio_gross = 0.0;
        double weighted_log = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i])
                continue;
            portfolio_gross += v[i] * gross[i];
            weighted_log += v[i] * log_gross[i];
        }
        log_value += std::log(portfolio_gross);
        average_growth += weighted_log;
        const double inv = 1.0 / portfolio_gross;
        for (std::size_t i = 0; i < n; ++i)
            if (alive[i])
                v[i] *= gross[i] * inv;
    }

    result.total_log_return = log_value;
    result.average_growth = average_growth;
    result.excess_growth = log_value - average_growth;
    result.arithmetic_return = std::expm1(log_value);
    return result;
}

WindowResult run_window(const marketdata::ReturnPanel& panel, const WeightVector& weights, const WindowSpan& span)
{
    const auto returns = WindowReturns::extract(panel, weights.universe, span);
    WindowResult result = evaluate_window(returns, weights.weights);
    result.start_month = span.start_month;
    return result;
}

} // namespace spt::core
