#include "spt/rankstats/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spt/common/parallel.hpp"

namespace spt::rank {

using marketdata::Record;
using marketdata::ReturnPanel;

namespace {

bool ranks_before(const Record* a, const Record* b)
{
    if (a->market_cap != b->market_cap)
        return a->market_cap > b->market_cap;
    return a->security < b->security; // index order is id order
}

/// Sorted top-n record pointers for one day, or throws.
std::vector<const Record*> top_records(const ReturnPanel& panel, std::size_t day_index, std::size_t n)
{
    const auto& day = panel.day(day_index);
    std::vector<const Record*> eligible;
    eligible.reserve(day.records.size());
    for (const auto& rec : day.records)
        if (rec.has_return())
            eligible.push_back(&rec);
    if (n == 0)
        throw std::invalid_argument("rank depth must be positive");
    if (eligible.size() < n)
        throw RankingError("cannot rank " + std::to_string(n) + " securities on " + day.date.iso() + ": only " +
                           std::to_string(eligible.size()) + " available (short by " +
                           std::to_string(n - eligible.size()) + ")");
    std::partial_sort(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(n), eligible.end(),
                      ranks_before);
    eligible.resize(n);
    return eligible;
}

/// Welford accumulator per rank.
struct ChunkMoments
{
    std::vector<double> count, mean, m2;

    explicit ChunkMoments(std::size_t n) : count(n, 0.0), mean(n, 0.0), m2(n, 0.0) {}

    void add(std::size_t k, double x)
    {
        count[k] += 1.0;
        const double delta = x - mean[k];
        mean[k] += delta / count[k];
        m2[k] += delta * (x - mean[k]);
    }

    void merge(const ChunkMoments& o)
    {
        for (std::size_t k = 0; k < count.size(); ++k) {
            if (o.count[k] == 0.0)
                continue;
            const double total = count[k] + o.count[k];
            const double delta = o.mean[k] - mean[k];
            mean[k] += delta * o.count[k] / total;
            m2[k] += o.m2[k] + delta * delta * count[k] * o.count[k] / total;
            count[k] = total;
        }
    }
};

constexpr std::size_t kChunkDays = 64;

} // namespace

RankedDay rank_day(const ReturnPanel& panel, std::size_t day_index, std::size_t n)
{
    const auto top = top_records(panel, day_index, n);
    RankedDay out{panel.day(day_index).date, {}};
    out.entries.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        out.entries.push_back(RankEntry{k + 1, top[k]->security, top[k]->market_cap, std::log1p(top[k]->total_return)});
    return out;
}

RankedDay rank_day(const ReturnPanel& panel, const marketdata::TradingDay& date, std::size_t n)
{
    auto index = panel.find_day(date);
    if (!index)
        throw RankingError("date " + date.iso() + " is not in the panel");
    return rank_day(panel, *index, n);
}

RankStatistics rank_log_return_means(const ReturnPanel& panel, std::size_t n, std::size_t days_per_year,
                                     unsigned workers)
{
    if (panel.day_count() < 2)
        throw std::invalid_argument("rank statistics need at least 2 days (sample variance), got " +
                                    std::to_string(panel.day_count()));
    if (days_per_year == 0)
        throw std::invalid_argument("days_per_year must be positive");

    const std::size_t n_chunks = (panel.day_count() + kChunkDays - 1) / kChunkDays;
    std::vector<ChunkMoments> chunks(n_chunks, ChunkMoments(n));
    parallel_for(n_chunks, workers, [&](std::size_t c) {
        const std::size_t end = std::min(panel.day_count(), (c + 1) * kChunkDays);
        for (std::size_t d = c * kChunkDays; d < end; ++d) {
            const auto top = top_records(panel, d, n);
            for (std::size_t k = 0; k < n; ++k)
                chunks[c].add(k, std::log1p(top[k]->total_return));
        }
    });

    ChunkMoments total(n);
    for (const auto& c : chunks)
        total.merge(c);

    RankStatistics stats;
    stats.days_per_year = days_per_year;
    stats.observation_count = panel.day_count();
    stats.mean_log_return.resize(n);
    stats.variance.resize(n);
    const double scale = static_cast<double>(days_per_year);
    for (std::size_t k = 0; k < n; ++k) {
        stats.mean_log_return[k] = total.mean[k] * scale;
        stats.variance[k] = total.m2[k] / (total.count[k] - 1.0) * scale;
    }
    return stats;
}

} // namespace spt::rank
