#include "spt/cli/commands.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "spt/common/number_format.hpp"
#include "spt/core/experiment.hpp"
#include "spt/core/report.hpp"
#include "spt/marketdata/cleaning.hpp"
#include "spt/marketdata/csv_ingest.hpp"
#include "spt/marketdata/risk_free.hpp"
#include "spt/rankstats/lowess.hpp"
#include "spt/rankstats/ranking.hpp"
#include "spt/rankstats/slope_fit.hpp"
#include "spt/simulator/market_config.hpp"
#include "spt/simulator/simulate.hpp"

namespace spt::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path prepare_output_dir(const std::string& dir)
{
    const fs::path out = dir.empty() ? fs::path(".") : fs::path(dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec || !fs::is_directory(out))
        throw std::runtime_error("output directory '" + out.string() + "' cannot be created");
    return out;
}

std::ofstream open_output(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

void finish(std::ofstream& out, const fs::path& path, CommandOutput& result)
{
    out.flush();
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
    result.files.push_back(path);
}

void write_json(const json& doc, const fs::path& path, CommandOutput& result)
{
    auto out = open_output(path);
    out << doc.dump(2) << '\n';
    finish(out, path, result);
}

std::vector<std::string> provenance_comments(const std::string& hash, std::uint64_t seed)
{
    return {"config_hash=" + hash, "seed=" + std::to_string(seed)};
}

/// Digest of everything that determines a run's outputs: the command, the
/// canonical parameters and the bytes of every input file.
std::string run_hash(std::string_view command, const RunConfig& config)
{
    std::string text = "command=" + std::string(command) + "\n" + canonical_text(config);
    if (!config.input.empty())
        text += "input_sha256=" + file_sha256(config.input) + "\n";
    else
        text += "sim_config_sha256=" + sha256_hex(sim::to_config_text(sim::load_market_config(config.sim_config))) +
                "\n";
    if (command == "backtest")
        text += "risk_free_sha256=" + file_sha256(config.risk_free) + "\n";
    return sha256_hex(text);
}

void require_panel_source(const RunConfig& config)
{
    if (config.input.empty() == config.sim_config.empty())
        throw std::invalid_argument("exactly one of input or sim_config must be given");
    const auto& path = config.input.empty() ? config.sim_config : config.input;
    if (!fs::is_regular_file(path))
        throw std::runtime_error("input file '" + path + "' does not exist");
}

json metadata_json(const marketdata::PanelMetadata& meta)
{
    json j;
    j["source_rows"] = meta.source_rows;
    j["duplicate_rows"] = meta.duplicate_rows;
    j["cleaning_floor"] = meta.cleaning_floor ? json(*meta.cleaning_floor) : json(nullptr);
    j["floor_replacements"] = meta.floor_replacements;
    j["missing_policy"] =
        meta.missing_policy ? json(std::string(marketdata::to_string(*meta.missing_policy))) : json(nullptr);
    j["missing_returns"] = meta.missing_returns;
    return j;
}

json slope_json(const rank::SlopeFit& fit)
{
    return {{"slope", fit.slope},
            {"intercept", fit.intercept},
            {"standard_error", fit.standard_error},
            {"interval_low", fit.interval_low},
            {"interval_high", fit.interval_high},
            {"interval_contains_zero", fit.interval_contains(0.0)}};
}

} // namespace

marketdata::ReturnPanel load_run_panel(const RunConfig& config, std::vector<std::string>* warnings)
{
    require_panel_source(config);
    marketdata::ReturnPanel panel;
    if (!config.input.empty()) {
        auto ingested = marketdata::ingest_csv(fs::path(config.input), config.schema);
        if (warnings)
            warnings->insert(warnings->end(), ingested.warnings.begin(), ingested.warnings.end());
        panel = std::move(ingested.panel);
    } else {
        panel = sim::simulate_market(sim::load_market_config(config.sim_config), config.workers);
    }
    auto cleaned = marketdata::clean_panel(panel, config.floor);
    return marketdata::apply_missing_policy(cleaned.panel, marketdata::parse_missing_policy(config.missing_policy))
        .panel;
}

CommandOutput simulate_command(const SimulateOptions& options)
{
    const sim::MarketConfig market = options.sim_config.empty()
                                         ? sim::preset_paper_like(options.n_stocks, options.n_years, options.seed)
                                         : sim::load_market_config(options.sim_config);
    market.validate();
    const std::string config_text = sim::to_config_text(market);
    std::string hash_text = "command=simulate\n" + config_text;
    if (options.risk_free_yield)
        hash_text += "risk_free_yield=" + format_double(*options.risk_free_yield) + "\n";

    CommandOutput result;
    result.config_hash = sha256_hex(hash_text);
    const fs::path dir = prepare_output_dir(options.output);

    const auto panel = sim::simulate_market(market, options.workers);
    const auto comments = provenance_comments(result.config_hash, market.seed);

    const auto panel_path = dir / "panel.csv";
    auto out = open_output(panel_path);
    marketdata::write_panel_csv(panel, out, comments);
    finish(out, panel_path, result);

    json prov;
    prov["config_hash"] = result.config_hash;
    prov["seed"] = market.seed;
    prov["config"] = config_text;
    prov["n_stocks"] = market.n_stocks;
    prov["n_days"] = market.n_days;
    prov["days_per_year"] = market.days_per_year;
    prov["rows"] = panel.record_count();
    prov["first_date"] = panel.days().front().date.iso();
    prov["last_date"] = panel.days().back().date.iso();

    if (options.risk_free_yield) {
        const marketdata::RiskFreeCurve curve({{panel.days().front().date, *options.risk_free_yield}});
        const auto rf_path = dir / "risk_free.csv";
        auto rf = open_output(rf_path);
        for (const auto& c : comments)
            rf << "# " << c << '\n';
        marketdata::write_risk_free_csv(curve, rf);
        finish(rf, rf_path, result);
        prov["risk_free_yield"] = *options.risk_free_yield;
    }
    write_json(prov, dir / "panel.provenance.json", result);
    return result;
}

CommandOutput ingest_command(const RunConfig& config)
{
    config.validate();
    if (config.input.empty())
        throw std::invalid_argument("ingest requires an input CSV");
    if (!fs::is_regular_file(config.input))
        throw std::runtime_error("input file '" + config.input + "' does not exist");

    CommandOutput result;
    result.config_hash = run_hash("ingest", config);
    const fs::path dir = prepare_output_dir(config.output);

    auto ingested = marketdata::ingest_csv(fs::path(config.input), config.schema);
    result.warnings = ingested.warnings;
    auto cleaned = marketdata::clean_panel(ingested.panel, config.floor);
    auto resolved =
        marketdata::apply_missing_policy(cleaned.panel, marketdata::parse_missing_policy(config.missing_policy));

    const auto comments = provenance_comments(result.config_hash, config.seed);
    const auto panel_path = dir / "panel.csv";
    auto out = open_output(panel_path);
    marketdata::write_panel_csv(resolved.panel, out, comments);
    finish(out, panel_path, result);

    json doc;
    doc["config_hash"] = result.config_hash;
    doc["seed"] = config.seed;
    doc["securities"] = resolved.panel.securities().size();
    doc["days"] = resolved.panel.day_count();
    doc["records"] = resolved.panel.record_count();
    doc["metadata"] = metadata_json(resolved.panel.metadata());
    doc["warnings"] = ingested.warnings;
    write_json(doc, dir / "ingest.json", result);
    return result;
}

CommandOutput rank_stats_command(const RunConfig& config)
{
    config.validate();
    require_panel_source(config);

    CommandOutput result;
    result.config_hash = run_hash("rank-stats", config);
    const fs::path dir = prepare_output_dir(config.output);

    const auto panel = load_run_panel(config, &result.warnings);
    const auto stats = rank::rank_log_return_means(panel, config.universe_size, config.days_per_year, config.workers);
    std::vector<double> ranks(stats.ranks());
    for (std::size_t k = 0; k < ranks.size(); ++k)
        ranks[k] = static_cast<double>(k + 1);
    const auto smoothed = rank::lowess(ranks, stats.variance, config.lowess_fraction);

    const auto csv_path = dir / "rank_stats.csv";
    auto out = open_output(csv_path);
    for (const auto& c : provenance_comments(result.config_hash, config.seed))
        out << "# " << c << '\n';
    out << "rank,g_k,v_k,lowess_v_k\n";
    for (std::size_t k = 0; k < ranks.size(); ++k)
        out << (k + 1) << ',' << format_double(stats.mean_log_return[k]) << ',' << format_double(stats.variance[k])
            << ',' << format_double(smoothed[k]) << '\n';
    finish(out, csv_path, result);

    json doc;
    doc["config_hash"] = result.config_hash;
    doc["seed"] = config.seed;
    doc["ranks"] = stats.ranks();
    doc["observation_days"] = stats.observation_count;
    doc["days_per_year"] = stats.days_per_year;
    doc["lowess_fraction"] = config.lowess_fraction;
    doc["units"] = {{"g_k", "annualized log-return per year"}, {"v_k", "annualized variance per year"},
                    {"slope", "per rank"}};
    doc["growth_fit"] = slope_json(rank::fit_slope(stats, rank::SlopeTarget::growth));
    doc["variance_fit"] = slope_json(rank::fit_slope(stats, rank::SlopeTarget::variance));
    write_json(doc, dir / "rank_stats.json", result);
    return result;
}

CommandOutput backtest_command(const RunConfig& config)
{
    config.validate();
    if (config.risk_free.empty())
        throw std::invalid_argument("backtest requires a risk-free yield file");
    if (!fs::is_regular_file(config.risk_free))
        throw std::runtime_error("risk-free file '" + config.risk_free + "' does not exist");
    const auto curve = marketdata::read_risk_free_csv(fs::path(config.risk_free));
    require_panel_source(config);

    std::vector<core::StrategySpec> specs;
    for (const auto& name : config.strategies) {
        const auto kind = core::parse_strategy_kind(name);
        specs.push_back(core::is_randomized(kind) ? core::StrategySpec(kind, config.seed) : core::StrategySpec(kind));
    }

    CommandOutput result;
    result.config_hash = run_hash("backtest", config);
    const fs::path dir = prepare_output_dir(config.output);

    const auto panel = load_run_panel(config, &result.warnings);
    core::ExperimentConfig experiment;
    experiment.universe_size = config.universe_size;
    experiment.window_months = config.window_months;
    experiment.n_random_draws = config.n_random_draws;
    experiment.workers = config.workers;
    const auto report = core::run_experiment(panel, specs, curve, experiment);

    const auto table = core::make_report_table(
        report, {{"config_hash", result.config_hash},
                 {"seed", std::to_string(config.seed)},
                 {"universe_size", std::to_string(report.universe_size)},
                 {"window_months", std::to_string(report.window_months)},
                 {"n_random_draws", std::to_string(report.n_random_draws)},
                 {"windows", std::to_string(report.windows.size())}});
    const auto table_path = dir / "table1.csv";
    auto out = open_output(table_path);
    core::write_report_table(table, out);
    finish(out, table_path, result);

    json doc = core::report_to_json(report);
    doc["config_hash"] = result.config_hash;
    doc["seed"] = config.seed;
    doc["panel_metadata"] = metadata_json(panel.metadata());
    write_json(doc, dir / "backtest.json", result);

    if (!report.all_checks_pass())
        throw std::runtime_error("invariant checks failed; see " + (dir / "backtest.json").string());
    return result;
}

} // namespace spt::cli
