#pragma once

#include "spt/cli/run_config.hpp"
#include "spt/marketdata/panel.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace spt::cli {

struct CommandOutput
{
    std::string config_hash;
    std::vector<std::filesystem::path> files;
    std::vector<std::string> warnings;
};

struct SimulateOptions
{
    std::string sim_config;  // key-value file; empty = paper-like preset
    std::size_t n_stocks = 1000;
    std::size_t n_years = 20;
    std::uint64_t seed = 1;
    std::string output = ".";
    std::optional<double> risk_free_yield; // also write a flat risk_free.csv
    unsigned workers = 0;
};

/// Writes panel.csv and panel.provenance.json (plus risk_free.csv on request).
CommandOutput simulate_command(const SimulateOptions& options);

/// Reads the input CSV, floors -100% returns, resolves missing returns and
/// writes the canonical panel.csv plus ingest.json.
CommandOutput ingest_command(const RunConfig& config);

/// Writes rank_stats.csv (rank, g_k, v_k, lowess_v_k) and rank_stats.json
/// (growth and variance slope fits).
CommandOutput rank_stats_command(const RunConfig& config);

/// Writes table1.csv and backtest.json. The risk-free file is read before
/// anything else.
CommandOutput backtest_command(const RunConfig& config);

/// The cleaned panel a RunConfig describes: ingested from `input`, or
/// simulated from `sim_config`.
marketdata::ReturnPanel load_run_panel(const RunConfig& config, std::vector<std::string>* warnings = nullptr);

} // namespace spt::cli
