#include "spt/core/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spt/common/parallel.hpp"
#include "spt/common/rng.hpp"
#include "spt/rankstats/ranking.hpp"

namespace spt::core {

std::string_view metric_key(Metric metric) noexcept
{
    switch (metric) {
    case Metric::total_log_return: return "total_log_return";
    case Metric::average_growth: return "average_growth";
    case Metric::excess_growth: return "excess_growth";
    case Metric::arithmetic_return: return "arithmetic_return";
    case Metric::arithmetic_stdev: return "arithmetic_return_stdev";
    case Metric::sharpe_ratio: return "sharpe_ratio";
    }
    return "?";
}

double MetricSet::get(Metric metric) const noexcept
{
    return const_cast<MetricSet*>(this)->get(metric);
}

double& MetricSet::get(Metric metric) noexcept
{
    switch (metric) {
    case Metric::total_log_return: return total_log_return;
    case Metric::average_growth: return average_growth;
    case Metric::excess_growth: return excess_growth;
    case Metric::arithmetic_return: return arithmetic_return;
    case Metric::arithmetic_stdev: return arithmetic_stdev;
    case Metric::sharpe_ratio: break;
    }
    return sharpe_ratio;
}

MetricSet MetricSet::operator-(const MetricSet& other) const noexcept
{
    MetricSet out;
    for (auto m : kAllMetrics)
        out.get(m) = get(m) - other.get(m);
    return out;
}

MetricSet aggregate_windows(std::span<const WindowResult> windows, std::span<const double> risk_free)
{
    if (windows.empty())
        throw std::invalid_argument("aggregate_windows: no windows");
    if (risk_free.size() != windows.size())
        throw std::invalid_argument("aggregate_windows: one risk-free yield per window is required");
    const double n = static_cast<double>(windows.size());
    MetricSet m;
    double excess_sum = 0.0;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        m.total_log_return += windows[i].total_log_return;
        m.average_growth += windows[i].average_growth;
        m.excess_growth += windows[i].excess_growth;
        m.arithmetic_return += windows[i].arithmetic_return;
        excess_sum += windows[i].arithmetic_return - risk_free[i];
    }
    m.total_log_return /= n;
    m.average_growth /= n;
    m.excess_growth /= n;
    m.arithmetic_return /= n;

    if (windows.size() < 2) {
        m.arithmetic_stdev = std::numeric_limits<double>::quiet_NaN();
        m.sharpe_ratio = std::numeric_limits<double>::quiet_NaN();
        return m;
    }
    double ss = 0.0;
    for (const auto& w : windows) {
        const double d = w.arithmetic_return - m.arithmetic_return;
        ss += d * d;
    }
    m.arithmetic_stdev = std::sqrt(ss / (n - 1.0));
    m.sharpe_ratio = (excess_sum / n) / m.arithmetic_stdev;
    return m;
}

double percentile(std::vector<double> values, double p)
{
    if (values.empty())
        throw std::invalid_argument("percentile: no values");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("percentile: p must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

bool DecompositionReport::all_checks_pass() const noexcept
{
    return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.pass; });
}

const StrategySummary* DecompositionReport::find(StrategyKind kind) const noexcept
{
    for (const auto& s : strategies)
        if (s.spec.kind() == kind)
            return &s;
    return nullptr;
}

namespace {

struct WindowWork
{
    WindowResult cap_weighted;
    std::vector<WindowResult> deterministic;        // per deterministic strategy slot
    std::vector<std::vector<WindowResult>> draws;   // per randomized slot, per draw
    double max_weight_error = 0.0;
    std::size_t delistings = 0;
};

MetricSet metric_percentile(std::span<const MetricSet> sets, double p)
{
    MetricSet out;
    std::vector<double> column(sets.size());
    for (auto m : kAllMetrics) {
        for (std::size_t i = 0; i < sets.size(); ++i)
            column[i] = sets[i].get(m);
        out.get(m) = percentile(column, p);
    }
    return out;
}

double weight_error(const WeightVector& w)
{
    double sum = 0.0;
    for (double x : w.weights)
        sum += x;
    return std::abs(sum - 1.0);
}

} // namespace

DecompositionReport run_experiment(const marketdata::ReturnPanel& panel, std::span<const StrategySpec> strategies,
                                   const marketdata::RiskFreeCurve& risk_free, const ExperimentConfig& config)
{
    if (config.universe_size < 2)
        throw std::invalid_argument("universe_size must be at least 2");
    if (config.n_random_draws < 1)
        throw std::invalid_argument("n_random_draws must be at least 1");
    if (strategies.empty())
        throw std::invalid_argument("no strategies requested");
    for (std::size_t i = 0; i < strategies.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (strategies[i].kind() == strategies[j].kind())
                throw std::invalid_argument("strategy " + std::string(strategies[i].name()) + " requested twice");

    const auto spans = window_spans(panel, config.window_months);
    if (spans.empty())
        throw std::invalid_argument("panel spans fewer than " + std::to_string(config.window_months) +
                                    " months; no window fits");

    DecompositionReport report;
    report.universe_size = config.universe_size;
    report.window_months = config.window_months;
    report.n_random_draws = config.n_random_draws;
    std::vector<double> rf(spans.size());
    for (std::size_t w = 0; w < spans.size(); ++w) {
        WindowInfo info;
        info.start_month = spans[w].start_month;
        info.start_date = panel.day(spans[w].first_day).date;
        info.first_day = spans[w].first_day;
        info.day_count = spans[w].day_count;
        try {
            info.risk_free = risk_free.yield_on(info.start_date);
        } catch (const std::out_of_range&) {
            throw std::out_of_range("risk-free curve has no yield on or before window start " +
                                    info.start_date.iso());
        }
        rf[w] = info.risk_free;
        report.windows.push_back(info);
    }

    std::vector<std::size_t> deterministic_slots, randomized_slots;
    for (std::size_t s = 0; s < strategies.size(); ++s)
        (strategies[s].randomized() ? randomized_slots : deterministic_slots).push_back(s);

    const StrategySpec cw_spec(StrategyKind::cap_weighted);
    std::vector<WindowWork> work(spans.size());
    parallel_for(spans.size(), config.workers, [&](std::size_t w) {
        const WindowSpan& span = spans[w];
        const auto ranked = rank::rank_day(panel, span.first_day, config.universe_size);
        std::vector<marketdata::SecurityIndex> universe(ranked.entries.size());
        std::vector<double> caps(ranked.entries.size());
        for (std::size_t k = 0; k < ranked.entries.size(); ++k) {
            universe[k] = ranked.entries[k].security;
            caps[k] = ranked.entries[k].market_cap;
        }
        const auto returns = WindowReturns::extract(panel, universe, span);
        WindowWork& out = work[w];

        auto evaluate = [&](const StrategySpec& spec) {
            const auto weights = make_weights(spec, universe, caps);
            out.max_weight_error = std::max(out.max_weight_error, weight_error(weights));
            WindowResult r = evaluate_window(returns, weights.weights);
            r.start_month = span.start_month;
            out.delistings = r.delistings;
            return r;
        };

        out.cap_weighted = evaluate(cw_spec);
        for (std::size_t s : deterministic_slots)
            out.deterministic.push_back(evaluate(strategies[s]));
        for (std::size_t s : randomized_slots) {
            const StrategySpec& spec = strategies[s];
            std::vector<WindowResult> draws;
            draws.reserve(config.n_random_draws);
            for (std::size_t d = 0; d < config.n_random_draws; ++d) {
                const auto seed = derive_seed(*spec.seed(), {static_cast<std::uint64_t>(spec.kind()), d,
                                                              span.start_month});
                draws.push_back(evaluate(StrategySpec(spec.kind(), seed)));
            }
            out.draws.push_back(std::move(draws));
        }
    });

    for (std::size_t w = 0; w < spans.size(); ++w)
        report.windows[w].delistings = work[w].delistings;

    std::vector<WindowResult> series(spans.size());
    for (std::size_t w = 0; w < spans.size(); ++w)
        series[w] = work[w].cap_weighted;
    report.cap_weighted = aggregate_windows(series, rf);

    report.strategies.resize(strategies.size(), StrategySummary{cw_spec, {}, {}, {}, 1, {}, {}});
    for (std::size_t i = 0; i < deterministic_slots.size(); ++i) {
        StrategySummary& summary = report.strategies[deterministic_slots[i]];
        summary.spec = strategies[deterministic_slots[i]];
        for (std::size_t w = 0; w < spans.size(); ++w)
            series[w] = work[w].deterministic[i];
        summary.value = aggregate_windows(series, rf);
        summary.windows = series;
    }
    for (std::size_t i = 0; i < randomized_slots.size(); ++i) {
        StrategySummary& summary = report.strategies[randomized_slots[i]];
        summary.spec = strategies[randomized_slots[i]];
        summary.draws = config.n_random_draws;
        summary.draw_aggregates.resize(config.n_random_draws);
        for (std::size_t d = 0; d < config.n_random_draws; ++d) {
            for (std::size_t w = 0; w < spans.size(); ++w)
                series[w] = work[w].draws[i][d];
            summary.draw_aggregates[d] = aggregate_windows(series, rf);
        }
        summary.value = metric_percentile(summary.draw_aggregates, 0.5);
        summary.p10 = metric_percentile(summary.draw_aggregates, 0.1);
        summary.p90 = metric_percentile(summary.draw_aggregates, 0.9);

        summary.windows.resize(spans.size());
        std::vector<double> column(config.n_random_draws);
        for (std::size_t w = 0; w < spans.size(); ++w) {
            const auto& draws = work[w].draws[i];
            auto median_of = [&](double WindowResult::*field) {
                for (std::size_t d = 0; d < draws.size(); ++d)
                    column[d] = draws[d].*field;
                return percentile(column, 0.5);
            };
            WindowResult& m = summary.windows[w];
            m.start_month = spans[w].start_month;
            m.total_log_return = median_of(&WindowResult::total_log_return);
            m.average_growth = median_of(&WindowResult::average_growth);
            m.excess_growth = median_of(&WindowResult::excess_growth);
            m.arithmetic_return = median_of(&WindowResult::arithmetic_return);
            m.delistings = draws.front().delistings;
        }
    }

    // Invariants over every evaluated window, draws included.
    double identity_error = 0.0;
    double min_excess = std::numeric_limits<double>::infinity();
    double log_above_arith = -std::numeric_limits<double>::infinity();
    double weight_err = 0.0;
    auto visit = [&](const WindowResult& r) {
        identity_error = std::max(identity_error,
                                  std::abs(r.total_log_return - (r.average_growth + r.excess_growth)));
        min_excess = std::min(min_excess, r.excess_growth);
        log_above_arith = std::max(log_above_arith, r.total_log_return - r.arithmetic_return);
    };
    for (const auto& ww : work) {
        weight_err = std::max(weight_err, ww.max_weight_error);
        visit(ww.cap_weighted);
        for (const auto& r : ww.deterministic)
            visit(r);
        for (const auto& draws : ww.draws)
            for (const auto& r : draws)
                visit(r);
    }
    double cw_relative = 0.0;
    if (const auto* cw = report.find(StrategyKind::cap_weighted))
        for (auto m : kAllMetrics)
            cw_relative = std::max(cw_relative, std::abs(report.relative(*cw).get(m)));

    report.checks = {
        {"decomposition_identity", identity_error, 1e-10, identity_error <= 1e-10},
        {"excess_growth_nonnegative", min_excess, -1e-12, min_excess >= -1e-12},
        {"weights_normalized", weight_err, 1e-12, weight_err <= 1e-12},
        {"log_return_not_above_arithmetic", log_above_arith, 1e-15, log_above_arith <= 1e-15},
        {"cap_weighted_relative_zero", cw_relative, 0.0, cw_relative == 0.0},
    };
    return report;
}

} // namespace spt::core
