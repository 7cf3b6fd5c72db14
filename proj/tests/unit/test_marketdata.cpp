#include "catch_amalgamated.hpp"

#include "spt/marketdata/cleaning.hpp"
#include "spt/marketdata/csv_ingest.hpp"
#include "spt/marketdata/panel.hpp"
#include "spt/marketdata/risk_free.hpp"
#include "test_panels.hpp"

#include <cmath>
#include <sstream>

using namespace spt::marketdata;
using Catch::Matchers::ContainsSubstring;

namespace {

IngestResult ingest_text(const std::string& text, const CsvSchema& schema = {})
{
    std::istringstream in(text);
    return ingest_csv(in, schema, "test.csv");
}

const Record* find_record(const ReturnPanel& panel, const std::string& date, const std::string& id)
{
    const auto d = panel.find_day(TradingDay::parse(date));
    const auto s = panel.find_security(SecurityId(id));
    if (!d || !s)
        return nullptr;
    return panel.day(*d).find(*s);
}

} // namespace

TEST_CASE("trading days parse ISO dates and reject impossible ones", "[marketdata]")
{
    const auto day = TradingDay::parse("2012-02-29");
    CHECK(day.iso() == "2012-02-29");
    CHECK(day.month_key() == "2012-02");
    CHECK(TradingDay::parse("2012-01-31") < day);
    CHECK_THROWS(TradingDay::parse("2011-02-29"));
    CHECK_THROWS(TradingDay::parse("2012-13-01"));
    CHECK_THROWS(TradingDay::parse("20120101"));
    CHECK_THROWS(SecurityId(""));
}

TEST_CASE("panel constructor enforces its invariants", "[marketdata]")
{
    const auto d1 = TradingDay::parse("2000-01-03");
    const auto d2 = TradingDay::parse("2000-01-04");
    std::vector<SecurityId> ids{SecurityId("A"), SecurityId("B")};

    CHECK_NOTHROW(ReturnPanel(ids, {{d1, {{0, 0.01, 10.0, false}, {1, 0.02, 5.0, false}}}}));
    CHECK_THROWS(ReturnPanel({SecurityId("B"), SecurityId("A")}, {}));
    CHECK_THROWS(ReturnPanel(ids, {{d2, {}}, {d1, {}}}));
    CHECK_THROWS(ReturnPanel(ids, {{d1, {{1, 0.0, 1.0, false}, {0, 0.0, 1.0, false}}}}));
    CHECK_THROWS(ReturnPanel(ids, {{d1, {{0, 0.0, 0.0, false}}}}));
    CHECK_THROWS(ReturnPanel(ids, {{d1, {{0, -1.5, 1.0, false}}}}));
    CHECK_THROWS(ReturnPanel(ids, {{d1, {{2, 0.0, 1.0, false}}}}));
}

TEST_CASE("ingest reads well-formed rows in any order", "[marketdata][ingest]")
{
    const auto result = ingest_text("date,security_id,total_return,market_cap\n"
                                    "2000-01-04,B,0.02,210\n"
                                    "# comment line\n"
                                    "2000-01-03,B,-0.01,200\n"
                                    "2000-01-03,A,0.015,100\n"
                                    "2000-02-01,A,,101\n");
    const auto& panel = result.panel;
    REQUIRE(panel.day_count() == 3);
    REQUIRE(panel.securities().size() == 2);
    CHECK(panel.security(0).str() == "A");
    CHECK(result.rows == 4);
    CHECK(result.duplicates == 0);
    CHECK(find_record(panel, "2000-01-03", "A")->total_return == 0.015);
    CHECK(find_record(panel, "2000-01-04", "B")->market_cap == 210.0);
    CHECK_FALSE(find_record(panel, "2000-02-01", "A")->has_return());
    CHECK(panel.month_starts() == std::vector<std::size_t>{0, 2});
}

TEST_CASE("ingest honours a custom schema and ignores extra columns", "[marketdata][ingest]")
{
    CsvSchema schema;
    schema.date = "DATE";
    schema.security = "PERMNO";
    schema.total_return = "RET";
    schema.market_cap = "ME";
    CHECK_THROWS_AS(ingest_text("PERMNO,SHRCD,DATE,RET,ME\n10001,10,2000-01-03,0.5,7\n"), IngestError);
    CHECK_THROWS_AS(ingest_text("PERMNO,DATE,RET\n1,2000-01-03,0.1\n", schema), IngestError);
    const auto custom = ingest_text("PERMNO,SHRCD,DATE,RET,ME\n10001,10,2000-01-03,0.5,7\n", schema);
    CHECK(custom.panel.record_count() == 1);
    CHECK(custom.panel.day(0).records.front().market_cap == 7.0);
}

TEST_CASE("missing-return tokens are recognised", "[marketdata][ingest]")
{
    const auto result = ingest_text("date,security_id,total_return,market_cap\n"
                                    "2000-01-03,A,NA,1\n2000-01-03,B,NaN,1\n2000-01-03,C,.,1\n"
                                    "2000-01-03,D,nan,1\n2000-01-03,E,,1\n2000-01-03,F,0,1\n");
    std::size_t missing = 0;
    for (const auto& r : result.panel.day(0).records)
        missing += !r.has_return();
    CHECK(missing == 5);
}

TEST_CASE("ingest rejects malformed rows with their line number", "[marketdata][ingest]")
{
    const std::string header = "date,security_id,total_return,market_cap\n";
    SECTION("short row")
    {
        try {
            ingest_text(header + "2000-01-03,A,0.1,5\n2000-01-04,A,0.1\n");
            FAIL("expected an error");
        } catch (const IngestError& e) {
            CHECK(e.line() == 3);
        }
    }
    SECTION("return below -1")
    {
        CHECK_THROWS_WITH(ingest_text(header + "2000-01-03,A,-1.2,5\n"), ContainsSubstring("below -1"));
    }
    SECTION("non-positive cap")
    {
        CHECK_THROWS_AS(ingest_text(header + "2000-01-03,A,0.1,0\n"), IngestError);
        CHECK_THROWS_AS(ingest_text(header + "2000-01-03,A,0.1,-3\n"), IngestError);
    }
    SECTION("bad date") { CHECK_THROWS_AS(ingest_text(header + "2000-02-30,A,0.1,1\n"), IngestError); }
    SECTION("missing column") { CHECK_THROWS_AS(ingest_text("date,security_id,market_cap\n"), IngestError); }
    SECTION("empty input") { CHECK_THROWS_AS(ingest_text(""), IngestError); }
}

TEST_CASE("a -100% return is kept at ingest", "[marketdata][ingest]")
{
    const auto result = ingest_text("date,security_id,total_return,market_cap\n2000-01-03,A,-1,5\n");
    CHECK(result.panel.day(0).records.front().total_return == -1.0);
}

TEST_CASE("duplicate (date, id) rows resolve to the last one with a warning", "[marketdata][ingest]")
{
    const auto result = ingest_text("date,security_id,total_return,market_cap\n"
                                    "2000-01-03,A,0.1,5\n2000-01-03,B,0.2,6\n2000-01-03,A,0.3,7\n");
    CHECK(result.duplicates == 1);
    REQUIRE(result.warnings.size() == 1);
    CHECK_THAT(result.warnings.front(), ContainsSubstring("duplicate"));
    const auto* a = find_record(result.panel, "2000-01-03", "A");
    CHECK(a->total_return == 0.3);
    CHECK(a->market_cap == 7.0);
}

TEST_CASE("written panels read back identically", "[marketdata][ingest]")
{
    const auto returns = spt::testing::random_returns(30, 4, 0.02, 7);
    auto panel = spt::testing::dense_panel(returns, spt::testing::compound_caps(returns, {1e9, 3e8, 2.5e7, 1234.5}));
    std::ostringstream out;
    const std::vector<std::string> comments{"seed=7"};
    write_panel_csv(panel, out, comments);
    CHECK(out.str().rfind("# seed=7\n", 0) == 0);
    const auto back = ingest_text(out.str());
    CHECK(back.panel == panel);
}

TEST_CASE("cleaning replaces exactly the -100% returns", "[marketdata][cleaning]")
{
    const auto result = ingest_text("date,security_id,total_return,market_cap\n"
                                    "2000-01-03,A,-1,5\n2000-01-03,B,-0.99,5\n2000-01-03,C,,5\n");
    const auto cleaned = clean_panel(result.panel);
    CHECK(cleaned.replacements == 1);
    CHECK(find_record(cleaned.panel, "2000-01-03", "A")->total_return == -0.95);
    CHECK(find_record(cleaned.panel, "2000-01-03", "B")->total_return == -0.99);
    CHECK_FALSE(find_record(cleaned.panel, "2000-01-03", "C")->has_return());
    CHECK(cleaned.panel.metadata().cleaning_floor == -0.95);
    CHECK(cleaned.panel.metadata().floor_replacements == 1);
    CHECK(std::isfinite(std::log1p(find_record(cleaned.panel, "2000-01-03", "A")->total_return)));

    CHECK(clean_panel(result.panel, -0.5).panel.day(0).records.front().total_return == -0.5);
    CHECK_THROWS(clean_panel(result.panel, -1.0));
    CHECK_THROWS(clean_panel(result.panel, 0.1));
}

TEST_CASE("missing-return policies", "[marketdata][cleaning]")
{
    const auto panel = ingest_text("date,security_id,total_return,market_cap\n"
                                   "2000-01-03,A,0.1,5\n2000-01-03,B,,6\n")
                           .panel;
    SECTION("drop removes the record")
    {
        const auto out = apply_missing_policy(panel, MissingPolicy::drop);
        CHECK(out.affected == 1);
        CHECK(find_record(out.panel, "2000-01-03", "B") == nullptr);
        CHECK(out.panel.metadata().missing_policy == MissingPolicy::drop);
    }
    SECTION("zero fills")
    {
        const auto out = apply_missing_policy(panel, MissingPolicy::zero);
        const auto* b = find_record(out.panel, "2000-01-03", "B");
        CHECK(b->total_return == 0.0);
        CHECK_FALSE(b->imputed);
    }
    SECTION("carry-flag fills and marks")
    {
        const auto out = apply_missing_policy(panel, parse_missing_policy("carry-flag"));
        const auto* b = find_record(out.panel, "2000-01-03", "B");
        CHECK(b->total_return == 0.0);
        CHECK(b->imputed);
        std::ostringstream csv;
        write_panel_csv(out.panel, csv);
        CHECK_THAT(csv.str(), ContainsSubstring("imputed"));
        CHECK(ingest_text(csv.str()).panel == out.panel);
    }
    CHECK_THROWS(parse_missing_policy("interpolate"));
}

TEST_CASE("risk-free curve uses the latest observation on or before a date", "[marketdata][risk_free]")
{
    std::istringstream in("date,yield\n# comment\n2000-01-03,0.05\n2000-07-03,0.06\n");
    const auto curve = read_risk_free_csv(in);
    CHECK(curve.yield_on(TradingDay::parse("2000-01-03")) == 0.05);
    CHECK(curve.yield_on(TradingDay::parse("2000-07-02")) == 0.05);
    CHECK(curve.yield_on(TradingDay::parse("2001-01-01")) == 0.06);
    CHECK_THROWS_WITH(curve.yield_on(TradingDay::parse("1999-12-31")), ContainsSubstring("1999-12-31"));

    std::ostringstream out;
    write_risk_free_csv(curve, out);
    std::istringstream again(out.str());
    CHECK(read_risk_free_csv(again).yield_on(TradingDay::parse("2000-08-01")) == 0.06);

    CHECK_THROWS(RiskFreeCurve({{TradingDay::parse("2000-02-01"), 0.0}, {TradingDay::parse("2000-01-01"), 0.0}}));
    std::istringstream bad("date,yield\n2000-01-03\n");
    CHECK_THROWS_AS(read_risk_free_csv(bad), IngestError);
    CHECK_THROWS_AS(read_risk_free_csv(std::filesystem::path("/nonexistent/rf.csv")), IngestError);
}
