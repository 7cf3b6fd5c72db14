#include "catch_amalgamated.hpp"

#include "spt/common/key_value.hpp"
#include "spt/marketdata/csv_ingest.hpp"
#include "spt/rankstats/ranking.hpp"
#include "spt/simulator/market_config.hpp"
#include "spt/simulator/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace spt::sim;
using Catch::Matchers::ContainsSubstring;

namespace {

MarketConfig flat_config(std::size_t n, std::size_t years, double growth, double vol, std::uint64_t seed)
{
    MarketConfig c;
    c.n_stocks = n;
    c.days_per_year = 250;
    c.n_days = years * 250;
    c.growth_by_rank.assign(n, growth);
    c.vol_by_rank.assign(n, vol);
    c.initial_caps = zipf_caps(n);
    c.seed = seed;
    return c;
}

std::string panel_text(const spt::marketdata::ReturnPanel& panel)
{
    std::ostringstream out;
    spt::marketdata::write_panel_csv(panel, out);
    return out.str();
}

MarketConfig parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_market_config(in);
}

} // namespace

TEST_CASE("synthetic calendar splits each year into twelve months", "[simulator]")
{
    const auto dates = synthetic_calendar(500, 250, 2001);
    REQUIRE(dates.size() == 500);
    CHECK(dates.front().iso() == "2001-01-01");
    CHECK(dates[250].iso() == "2002-01-01");
    CHECK(std::is_sorted(dates.begin(), dates.end()));
    std::size_t month_starts = 0;
    for (std::size_t d = 0; d < 250; ++d)
        month_starts += d == 0 || dates[d].month_key() != dates[d - 1].month_key();
    CHECK(month_starts == 12);
    CHECK_THROWS(synthetic_calendar(10, 400, 2000));
}

TEST_CASE("zero volatility gives exactly the configured drift", "[simulator]")
{
    auto c = flat_config(5, 1, 0.0, 0.0, 3);
    // faster growth for larger stocks keeps the ranking fixed
    c.growth_by_rank = {0.09, 0.07, 0.05, 0.03, 0.01};
    const auto panel = simulate_market(c);
    REQUIRE(panel.day_count() == 250);
    for (const auto& day : panel.days()) {
        REQUIRE(day.records.size() == 5);
        for (const auto& r : day.records)
            CHECK(std::abs(std::log1p(r.total_return) - c.growth_by_rank[r.security] / 250.0) <= 1e-15);
    }
    const auto& last = panel.day(249).records.front();
    CHECK(last.market_cap == Catch::Approx(1e9 * std::exp(0.09 * 249.0 / 250.0)).epsilon(1e-12));
}

TEST_CASE("same config and seed give bit-identical panels for any worker count", "[simulator]")
{
    const auto c = preset_paper_like(30, 2, 11);
    const auto a = simulate_market(c, 1);
    const auto b = simulate_market(c, 4);
    CHECK(a == b);
    CHECK(panel_text(a) == panel_text(b));
    CHECK(panel_text(simulate_market(preset_paper_like(30, 2, 12), 1)) != panel_text(a));
    CHECK(a.record_count() == 30 * 500);
}

TEST_CASE("paper-like preset has flat growth and volatility rising with rank", "[simulator]")
{
    const auto c = preset_paper_like();
    CHECK(c.n_stocks == 1000);
    CHECK(c.n_days == 20 * 250);
    CHECK_NOTHROW(c.validate());
    CHECK(std::all_of(c.growth_by_rank.begin(), c.growth_by_rank.end(),
                      [&](double g) { return g == c.growth_by_rank.front(); }));
    CHECK(std::is_sorted(c.vol_by_rank.begin(), c.vol_by_rank.end()));
    CHECK(c.vol_by_rank.front() == Catch::Approx(0.15));
    CHECK(c.vol_by_rank.back() == Catch::Approx(0.45));
    CHECK(c.factor_loading >= 0.0);
    CHECK(c.factor_loading < 1.0);
}

TEST_CASE("config validation rejects bad parameters", "[simulator]")
{
    auto c = flat_config(4, 1, 0.05, 0.2, 1);
    CHECK_NOTHROW(c.validate());
    auto bad = c;
    bad.n_stocks = 1;
    CHECK_THROWS(bad.validate());
    bad = c;
    bad.vol_by_rank[2] = -0.1;
    CHECK_THROWS(bad.validate());
    bad = c;
    bad.initial_caps[0] = 0.0;
    CHECK_THROWS(bad.validate());
    bad = c;
    bad.correlation = CorrelationModel::one_factor;
    bad.factor_loading = 1.0;
    CHECK_THROWS(bad.validate());
    bad = c;
    bad.growth_by_rank.pop_back();
    CHECK_THROWS(bad.validate());
}

TEST_CASE("config text round-trips and errors name the key", "[simulator][config]")
{
    auto c = preset_paper_like(12, 3, 99);
    const auto back = parse(to_config_text(c));
    CHECK(to_config_text(back) == to_config_text(c));
    CHECK(back.vol_by_rank == c.vol_by_rank);
    CHECK(back.initial_caps == c.initial_caps);

    const auto custom = parse("n_stocks = 3\nn_days = 40\nseed = 5\ngrowth = 0.02\nvol_by_rank = 0.1, 0.2, 0.3\n"
                              "correlation = one_factor\nfactor_loading = 0.3\ninitial_caps = 3, 2, 1\n");
    CHECK(custom.n_days == 40);
    CHECK(custom.vol_by_rank == std::vector<double>{0.1, 0.2, 0.3});
    CHECK(custom.correlation == CorrelationModel::one_factor);

    auto key_of = [](const std::string& text) {
        try {
            parse(text);
        } catch (const spt::ConfigError& e) {
            return e.key();
        }
        return std::string("<no error>");
    };
    CHECK(key_of("preset = paper_like\nvolatility = 0.2\n") == "volatility");
    CHECK(key_of("preset = paper_like\nseed = abc\n") == "seed");
    CHECK(key_of("preset = paper_like\nseed = 1\nseed = 2\n") == "seed");
    CHECK(key_of("preset = paper_like\nvol_min = 0.1\n") == "vol_max");
    CHECK(key_of("n_stocks = 3\nvol_by_rank = 0.1, 0.2\n") == "vol_by_rank");
    CHECK(key_of("preset = paper_like\ncorrelation = two_factor\n") == "correlation");
    CHECK_THROWS_WITH(parse("preset = paper_like\nvolatility = 0.2\n"), ContainsSubstring("volatility"));
}

TEST_CASE("per-rank mean log-return matches the configured growth", "[simulator][statistical]")
{
    const std::size_t years = 10;
    auto c = flat_config(100, years, 0.0, 0.0, 2024);
    for (std::size_t k = 0; k < 100; ++k) {
        c.growth_by_rank[k] = 0.02 + 0.0005 * static_cast<double>(k);
        c.vol_by_rank[k] = 0.15 + 0.003 * static_cast<double>(k);
    }
    const auto stats = spt::rank::rank_log_return_means(simulate_market(c), 100);
    // a few ranks may legitimately stray outside a 3-sigma band; require nearly all inside
    std::size_t inside = 0;
    for (std::size_t k = 0; k < 100; ++k) {
        const double band = 3.0 * c.vol_by_rank[k] / std::sqrt(static_cast<double>(years));
        inside += std::abs(stats.mean_log_return[k] - c.growth_by_rank[k]) <= band;
    }
    CHECK(inside >= 97);
}

TEST_CASE("per-rank variance tracks configured volatility and falls with cap", "[simulator][statistical]")
{
    auto c = flat_config(100, 10, 0.05, 0.0, 77);
    c.vol_by_rank = log_rank_ramp(100, 0.15, 0.45);
    const auto stats = spt::rank::rank_log_return_means(simulate_market(c), 100);
    const double n_days = static_cast<double>(c.n_days);
    std::size_t inside = 0;
    for (std::size_t k = 0; k < 100; ++k) {
        const double target = c.vol_by_rank[k] * c.vol_by_rank[k];
        inside += std::abs(stats.variance[k] / target - 1.0) <= 3.0 * std::sqrt(2.0) / std::sqrt(n_days);
    }
    CHECK(inside >= 97);
    // smallest decile more volatile than the largest decile
    double top = 0.0, bottom = 0.0;
    for (std::size_t k = 0; k < 10; ++k) {
        top += stats.variance[k];
        bottom += stats.variance[90 + k];
    }
    CHECK(bottom > top);
}

TEST_CASE("one-factor noise has the configured pairwise correlation", "[simulator][statistical]")
{
    auto c = flat_config(40, 10, 0.0, 0.2, 5);
    c.correlation = CorrelationModel::one_factor;
    c.factor_loading = 0.3;
    const auto panel = simulate_market(c);
    const std::size_t n = 40, days = panel.day_count();
    std::vector<double> x(days * n);
    for (std::size_t d = 0; d < days; ++d)
        for (const auto& r : panel.day(d).records)
            x[d * n + r.security] = std::log1p(r.total_return);
    std::vector<double> mean(n, 0.0), sd(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < days; ++d)
            mean[i] += x[d * n + i] / static_cast<double>(days);
        for (std::size_t d = 0; d < days; ++d)
            sd[i] += std::pow(x[d * n + i] - mean[i], 2);
        sd[i] = std::sqrt(sd[i]);
    }
    double corr_sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++pairs) {
            double s = 0.0;
            for (std::size_t d = 0; d < days; ++d)
                s += (x[d * n + i] - mean[i]) * (x[d * n + j] - mean[j]);
            corr_sum += s / (sd[i] * sd[j]);
        }
    CHECK(corr_sum / static_cast<double>(pairs) == Catch::Approx(0.3).margin(0.03));

    c.correlation = CorrelationModel::independent;
    const auto independent = simulate_market(c);
    CHECK_FALSE(independent == panel);
}

TEST_CASE("time-averaged log growth converges toward the drift", "[simulator][statistical]")
{
    auto c = flat_config(20, 40, 0.06, 0.2, 31);
    const auto panel = simulate_market(c);
    const double years = static_cast<double>(c.n_days) / 250.0;
    std::size_t inside = 0;
    for (spt::marketdata::SecurityIndex i = 0; i < 20; ++i) {
        const auto& first = *panel.day(0).find(i);
        const auto& last = *panel.day(panel.day_count() - 1).find(i);
        const double end_cap = last.market_cap * (1.0 + last.total_return);
        const double growth = std::log(end_cap / first.market_cap) / years;
        inside += std::abs(growth - 0.06) <= 3.0 * 0.2 / std::sqrt(years);
    }
    CHECK(inside == 20);
}
