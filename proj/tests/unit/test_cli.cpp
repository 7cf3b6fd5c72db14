#include "catch_amalgamated.hpp"

#include "json.hpp"
#include "spt/cli/commands.hpp"
#include "spt/cli/run_config.hpp"
#include "spt/common/key_value.hpp"
#include "spt/core/report.hpp"
#include "test_panels.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace spt::cli;
using spt::testing::read_file;
using spt::testing::TempDir;
using spt::testing::write_file;
using Catch::Matchers::ContainsSubstring;

namespace {

std::size_t count_lines(const std::string& text, bool skip_comments)
{
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line))
        n += !(skip_comments && !line.empty() && line.front() == '#');
    return n;
}

nlohmann::json read_json(const std::filesystem::path& path) { return nlohmann::json::parse(read_file(path)); }

/// Small simulated market plus a flat risk-free file in `dir`.
RunConfig small_run(const TempDir& dir, std::size_t stocks = 15, std::size_t years = 2)
{
    write_file(dir / "market.cfg", "preset = paper_like\nn_stocks = " + std::to_string(stocks) +
                                       "\nn_years = " + std::to_string(years) + "\nseed = 4\n");
    write_file(dir / "rf.csv", "date,yield\n2000-01-01,0.02\n");
    RunConfig c;
    c.sim_config = (dir / "market.cfg").string();
    c.risk_free = (dir / "rf.csv").string();
    c.universe_size = stocks;
    c.n_random_draws = 5;
    c.output = (dir / "out").string();
    return c;
}

} // namespace

TEST_CASE("sha256 of a known message", "[cli]")
{
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("run config file overrides and validation", "[cli]")
{
    TempDir dir("cfg");
    write_file(dir / "run.cfg", "# overrides\nuniverse_size = 50\nstrategies = CW, EW\nfloor = -0.9\nworkers = 2\n");
    RunConfig c;
    c.universe_size = 10;
    apply_config_file(c, (dir / "run.cfg").string());
    CHECK(c.universe_size == 50);
    CHECK(c.strategies == std::vector<std::string>{"CW", "EW"});
    CHECK(c.floor == -0.9);
    CHECK_NOTHROW(c.validate());

    write_file(dir / "bad.cfg", "universe_size = 50\nuniverse = 3\n");
    try {
        apply_config_file(c, (dir / "bad.cfg").string());
        FAIL("expected a config error");
    } catch (const spt::ConfigError& e) {
        CHECK(e.key() == "universe");
    }

    auto bad = c;
    bad.universe_size = 1;
    CHECK_THROWS(bad.validate());
    bad = c;
    bad.n_random_draws = 0;
    CHECK_THROWS(bad.validate());
    bad = c;
    bad.strategies = {"CW", "ZZ"};
    CHECK_THROWS(bad.validate());

    // scheduling and destination never change the canonical text
    auto other = c;
    other.workers = 7;
    other.output = "/elsewhere";
    CHECK(canonical_text(other) == canonical_text(c));
    other.seed = c.seed + 1;
    CHECK(canonical_text(other) != canonical_text(c));
}

TEST_CASE("simulate writes the panel and its provenance", "[cli][simulate]")
{
    TempDir dir("sim");
    SimulateOptions opt;
    opt.n_stocks = 20;
    opt.n_years = 1;
    opt.seed = 9;
    opt.output = (dir / "a").string();
    opt.risk_free_yield = 0.03;
    const auto first = simulate_command(opt);
    CHECK(first.files.size() == 3);

    const auto panel_text = read_file(dir / "a" / "panel.csv");
    CHECK(count_lines(panel_text, true) == 20 * 250 + 1);
    CHECK_THAT(panel_text, ContainsSubstring("# config_hash=" + first.config_hash));
    CHECK_THAT(panel_text, ContainsSubstring("# seed=9"));
    const auto prov = read_json(dir / "a" / "panel.provenance.json");
    CHECK(prov["config_hash"] == first.config_hash);
    CHECK(prov["seed"] == 9);
    CHECK(prov["rows"] == 5000);
    CHECK_THAT(read_file(dir / "a" / "risk_free.csv"), ContainsSubstring("0.03"));

    opt.output = (dir / "b").string();
    opt.workers = 3;
    const auto second = simulate_command(opt);
    CHECK(second.config_hash == first.config_hash);
    for (const auto* name : {"panel.csv", "panel.provenance.json", "risk_free.csv"})
        CHECK(read_file(dir / "a" / name) == read_file(dir / "b" / name));
}

TEST_CASE("simulate reports a corrupt config key by name", "[cli][simulate]")
{
    TempDir dir("simbad");
    write_file(dir / "m.cfg", "preset = paper_like\nn_stocks = 10\nvolatilty = 0.2\n");
    SimulateOptions opt;
    opt.sim_config = (dir / "m.cfg").string();
    opt.output = (dir / "out").string();
    CHECK_THROWS_WITH(simulate_command(opt), ContainsSubstring("volatilty"));
}

TEST_CASE("ingest cleans and records provenance", "[cli][ingest]")
{
    TempDir dir("ingest");
    write_file(dir / "in.csv", "date,security_id,total_return,market_cap\n"
                               "2000-01-03,A,-1,10\n2000-01-03,B,,5\n2000-01-04,A,0.1,0.5\n2000-01-04,B,0.2,5\n");
    RunConfig c;
    c.input = (dir / "in.csv").string();
    c.output = (dir / "out").string();
    c.missing_policy = "zero";
    const auto out = ingest_command(c);
    const auto doc = read_json(dir / "out" / "ingest.json");
    CHECK(doc["config_hash"] == out.config_hash);
    CHECK(doc["metadata"]["floor_replacements"] == 1);
    CHECK(doc["metadata"]["missing_policy"] == "zero");
    const auto text = read_file(dir / "out" / "panel.csv");
    CHECK_THAT(text, ContainsSubstring("2000-01-03,A,-0.95,10"));
    CHECK_THAT(text, ContainsSubstring("2000-01-03,B,0,5"));

    c.input = (dir / "absent.csv").string();
    CHECK_THROWS(ingest_command(c));
}

TEST_CASE("rank-stats writes one row per rank plus slope fits", "[cli][rank_stats]")
{
    TempDir dir("rank");
    write_file(dir / "m.cfg", "n_stocks = 1000\nn_days = 20\nseed = 3\ngrowth = 0.05\nvol_min = 0.15\n"
                              "vol_max = 0.45\n");
    RunConfig c;
    c.sim_config = (dir / "m.cfg").string();
    c.output = (dir / "out").string();
    const auto out = rank_stats_command(c);
    const auto csv = read_file(dir / "out" / "rank_stats.csv");
    CHECK(count_lines(csv, true) == 1001);
    CHECK_THAT(csv, ContainsSubstring("rank,g_k,v_k,lowess_v_k\n1,"));
    const auto doc = read_json(dir / "out" / "rank_stats.json");
    CHECK(doc["config_hash"] == out.config_hash);
    CHECK(doc["ranks"] == 1000);
    CHECK(doc.contains("growth_fit"));
    CHECK(doc["variance_fit"].contains("standard_error"));

    c.output = (dir / "again").string();
    rank_stats_command(c);
    CHECK(read_file(dir / "again" / "rank_stats.csv") == csv);
    CHECK(read_file(dir / "again" / "rank_stats.json") == read_file(dir / "out" / "rank_stats.json"));
}

TEST_CASE("rank-stats on a flat-growth market finds no growth slope", "[cli][rank_stats]")
{
    TempDir dir("flat");
    write_file(dir / "m.cfg", "n_stocks = 200\nn_years = 10\nseed = 17\ngrowth = 0.05\nvol_min = 0.15\n"
                              "vol_max = 0.45\n");
    RunConfig c;
    c.sim_config = (dir / "m.cfg").string();
    c.universe_size = 200;
    c.output = (dir / "out").string();
    rank_stats_command(c);
    const auto doc = read_json(dir / "out" / "rank_stats.json");
    CHECK(doc["growth_fit"]["interval_contains_zero"] == true);
    CHECK(doc["variance_fit"]["slope"].get<double>() > 0.0);
}

TEST_CASE("backtest with only CW has zero relative rows", "[cli][backtest]")
{
    TempDir dir("cw");
    auto c = small_run(dir);
    c.strategies = {"CW"};
    backtest_command(c);
    std::ifstream in(dir / "out" / "table1.csv");
    const auto table = spt::core::read_report_table(in);
    CHECK(table.columns == std::vector<std::string>{"CW"});
    for (std::size_t row = 1; row < 8; row += 2)
        CHECK(table.values[row][0] == 0.0);
}

TEST_CASE("full backtest passes every invariant check and is reproducible", "[cli][backtest]")
{
    TempDir dir("full");
    auto c = small_run(dir);
    c.workers = 1;
    const auto out = backtest_command(c);
    const auto doc = read_json(dir / "out" / "backtest.json");
    CHECK(doc["config_hash"] == out.config_hash);
    REQUIRE(doc["checks"].size() >= 4);
    for (const auto& check : doc["checks"])
        CHECK(check["status"] == "pass");
    CHECK_THAT(read_file(dir / "out" / "table1.csv"), ContainsSubstring("# config_hash=" + out.config_hash));

    c.workers = 4;
    c.output = (dir / "threaded").string();
    const auto again = backtest_command(c);
    CHECK(again.config_hash == out.config_hash);
    CHECK(read_file(dir / "threaded" / "table1.csv") == read_file(dir / "out" / "table1.csv"));
    CHECK(read_file(dir / "threaded" / "backtest.json") == read_file(dir / "out" / "backtest.json"));

    c.seed = 2;
    c.output = (dir / "reseeded").string();
    CHECK(backtest_command(c).config_hash != out.config_hash);
}

TEST_CASE("backtest fails before any work when the risk-free file is missing", "[cli][backtest]")
{
    TempDir dir("norf");
    auto c = small_run(dir);
    c.risk_free = (dir / "missing.csv").string();
    CHECK_THROWS_WITH(backtest_command(c), ContainsSubstring("missing.csv"));
    CHECK_FALSE(std::filesystem::exists(dir / "out"));
    c.risk_free.clear();
    CHECK_THROWS(backtest_command(c));
    CHECK_FALSE(std::filesystem::exists(dir / "out"));
}

TEST_CASE("backtest requires exactly one panel source", "[cli][backtest]")
{
    TempDir dir("src");
    auto c = small_run(dir);
    c.input = (dir / "market.cfg").string();
    CHECK_THROWS(backtest_command(c));
    c.input.clear();
    c.sim_config.clear();
    CHECK_THROWS(backtest_command(c));
}
