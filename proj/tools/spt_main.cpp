// spt: simulate or ingest a return panel, estimate rank statistics and run
// the naive-strategy backtest.

#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "spt/cli/commands.hpp"

namespace {

void add_run_flags(CLI::App& cmd, spt::cli::RunConfig& c, std::string& config_file)
{
    cmd.add_option("--config", config_file, "key = value file; its entries override every flag");
    cmd.add_option("--input", c.input, "panel CSV");
    cmd.add_option("--sim-config", c.sim_config, "simulator config (instead of --input)");
    cmd.add_option("--universe-size", c.universe_size, "number of largest stocks per day")->capture_default_str();
    cmd.add_option("--window-months", c.window_months, "holding window length")->capture_default_str();
    cmd.add_option("--strategies", c.strategies, "subset of CW,EW,LO,RW,IRW")->delimiter(',');
    cmd.add_option("--n-random-draws", c.n_random_draws, "draws for RW and IRW")->capture_default_str();
    cmd.add_option("--seed", c.seed, "seed for randomized strategies")->capture_default_str();
    cmd.add_option("--risk-free", c.risk_free, "CSV of date,yield");
    cmd.add_option("--output", c.output, "output directory")->capture_default_str();
    cmd.add_option("--floor", c.floor, "replacement for -100% returns")->capture_default_str();
    cmd.add_option("--missing-policy", c.missing_policy, "drop | zero | carry-flag")->capture_default_str();
    cmd.add_option("--days-per-year", c.days_per_year, "annualization factor")->capture_default_str();
    cmd.add_option("--lowess-fraction", c.lowess_fraction, "LOWESS span for v_k")->capture_default_str();
    cmd.add_option("--date-column", c.schema.date)->capture_default_str();
    cmd.add_option("--id-column", c.schema.security)->capture_default_str();
    cmd.add_option("--return-column", c.schema.total_return)->capture_default_str();
    cmd.add_option("--cap-column", c.schema.market_cap)->capture_default_str();
    cmd.add_option("--workers", c.workers, "worker threads (0 = hardware)")->capture_default_str();
}

void report(const spt::cli::CommandOutput& out)
{
    for (const auto& w : out.warnings)
        std::cerr << "warning: " << w << '\n';
    for (const auto& f : out.files)
        std::cout << "wrote " << f.string() << '\n';
    std::cout << "config_hash " << out.config_hash << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rank statistics, naive strategies and the excess-growth decomposition"};
    app.require_subcommand(1);

    spt::cli::SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "write a synthetic market panel");
    simulate->add_option("--sim-config", sim.sim_config, "simulator config; default is the paper_like preset");
    simulate->add_option("--n-stocks", sim.n_stocks, "preset size")->capture_default_str();
    simulate->add_option("--n-years", sim.n_years, "preset length")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "preset seed")->capture_default_str();
    simulate->add_option("--output", sim.output, "output directory")->capture_default_str();
    simulate->add_option("--risk-free-yield", sim.risk_free_yield, "also write a flat risk_free.csv");
    simulate->add_option("--workers", sim.workers)->capture_default_str();

    spt::cli::RunConfig run;
    std::string config_file;
    auto* ingest = app.add_subcommand("ingest", "validate and clean a panel CSV");
    auto* rank_stats = app.add_subcommand("rank-stats", "per-rank growth and variance");
    auto* backtest = app.add_subcommand("backtest", "naive strategies over rolling windows");
    for (auto* cmd : {ingest, rank_stats, backtest})
        add_run_flags(*cmd, run, config_file);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_file.empty())
            spt::cli::apply_config_file(run, config_file);
        if (simulate->parsed())
            report(spt::cli::simulate_command(sim));
        else if (ingest->parsed())
            report(spt::cli::ingest_command(run));
        else if (rank_stats->parsed())
            report(spt::cli::rank_stats_command(run));
        else if (backtest->parsed())
            report(spt::cli::backtest_command(run));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
