#include "spt/simulator/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>

#include "spt/common/parallel.hpp"
#include "spt/common/rng.hpp"

namespace spt::sim {

using marketdata::DayRecords;
using marketdata::Record;
using marketdata::ReturnPanel;
using marketdata::SecurityId;
using marketdata::SecurityIndex;
using marketdata::TradingDay;

std::vector<TradingDay> synthetic_calendar(std::size_t n_days, std::size_t days_per_year, int start_year)
{
    if (days_per_year < 12 || days_per_year > 336)
        throw std::invalid_argument("synthetic_calendar: days_per_year must lie in [12, 336]");
    std::vector<TradingDay> dates;
    dates.reserve(n_days);
    char buf[48];
    for (int year = start_year; dates.size() < n_days; ++year) {
        for (std::size_t month = 0; month < 12 && dates.size() < n_days; ++month) {
            const std::size_t len = (month + 1) * days_per_year / 12 - month * days_per_year / 12;
            for (std::size_t d = 0; d < len && dates.size() < n_days; ++d) {
                std::snprintf(buf, sizeof(buf), "%04d-%02zu-%02zu", year, month + 1, d + 1);
                dates.push_back(TradingDay::parse(buf));
            }
        }
    }
    return dates;
}

namespace {

constexpr std::size_t kNoiseBlockDays = 250;

std::vector<SecurityId> make_ids(std::size_t n)
{
    const int width = static_cast<int>(std::to_string(n).size());
    std::vector<SecurityId> ids;
    ids.reserve(n);
    char buf[32];
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof(buf), "S%0*zu", width, i + 1);
        ids.emplace_back(buf);
    }
    return ids;
}

} // namespace

ReturnPanel simulate_market(const MarketConfig& config, unsigned workers)
{
    config.validate();
    const std::size_t n = config.n_stocks;
    const double dt = 1.0 / static_cast<double>(config.days_per_year);
    const double sqrt_dt = std::sqrt(dt);
    const bool one_factor = config.correlation == CorrelationModel::one_factor;
    const double factor_weight = one_factor ? std::sqrt(config.factor_loading) : 0.0;
    const double idio_weight = one_factor ? std::sqrt(1.0 - config.factor_loading) : 1.0;

    const auto dates = synthetic_calendar(config.n_days, config.days_per_year, config.start_year);

    std::vector<std::mt19937_64> engines;
    engines.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        engines.emplace_back(derive_seed(config.seed, {1, i}));
    std::vector<std::normal_distribution<double>> normals(n);
    std::mt19937_64 factor_engine(derive_seed(config.seed, {2}));
    std::normal_distribution<double> factor_normal;

    std::vector<double> log_cap(n);
    for (std::size_t i = 0; i < n; ++i)
        log_cap[i] = std::log(config.initial_caps[i]);

    std::vector<SecurityIndex> order(n);
    std::iota(order.begin(), order.end(), SecurityIndex{0});
    std::vector<double> noise(n * kNoiseBlockDays);
    std::vector<double> factor(kNoiseBlockDays);

    std::vector<DayRecords> days;
    days.reserve(config.n_days);
    for (std::size_t block = 0; block < config.n_days; block += kNoiseBlockDays) {
        const std::size_t len = std::min(kNoiseBlockDays, config.n_days - block);
        parallel_for(n, workers, [&](std::size_t i) {
            for (std::size_t j = 0; j < len; ++j)
                noise[i * kNoiseBlockDays + j] = normals[i](engines[i]);
        });
        if (one_factor)
            for (std::size_t j = 0; j < len; ++j)
                factor[j] = factor_normal(factor_engine);

        for (std::size_t j = 0; j < len; ++j) {
            // Ranks come from the caps entering the day; order from the
            // previous day is nearly sorted already.
            std::stable_sort(order.begin(), order.end(), [&](SecurityIndex a, SecurityIndex b) {
                if (log_cap[a] != log_cap[b])
                    return log_cap[a] > log_cap[b];
                return a < b;
            });
            DayRecords day{dates[block + j], std::vector<Record>(n)};
            for (std::size_t k = 0; k < n; ++k) {
                const SecurityIndex i = order[k];
                double z = noise[i * kNoiseBlockDays + j];
                if (one_factor)
                    z = factor_weight * factor[j] + idio_weight * z;
                const double step = config.growth_by_rank[k] * dt + config.vol_by_rank[k] * sqrt_dt * z;
                day.records[i] = Record{i, std::expm1(step), std::exp(log_cap[i]), false};
                log_cap[i] += step;
            }
            days.push_back(std::move(day));
        }
    }
    return ReturnPanel(make_ids(n), std::move(days));
}

} // namespace spt::sim
