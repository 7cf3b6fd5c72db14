#pragma once

#include "spt/marketdata/csv_ingest.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace spt::cli {

/// Parameters shared by the pipeline subcommands.
struct RunConfig
{
    std::string input;      // panel CSV
    std::string sim_config; // simulator config, used when no input CSV is given
    std::size_t universe_size = 1000;
    std::size_t window_months = 12;
    std::vector<std::string> strategies = {"CW", "EW", "LO", "RW", "IRW"};
    std::size_t n_random_draws = 1000;
    std::uint64_t seed = 1;
    std::string risk_free;
    std::string output = ".";
    double floor = -0.95;
    std::string missing_policy = "drop";
    std::size_t days_per_year = 250;
    double lowess_fraction = 0.05;
    marketdata::CsvSchema schema;
    unsigned workers = 0; // scheduling only; never affects outputs

    /// Throws std::invalid_argument on a violated constraint.
    void validate() const;
};

/// Applies `key = value` lines over `config`. Keys are the long flag names
/// with '_' for '-' (e.g. n_random_draws, risk_free, date_column).
void apply_config_file(RunConfig& config, const std::string& path);

/// Canonical text of the output-relevant fields (not output or workers).
std::string canonical_text(const RunConfig& config);

std::string sha256_hex(std::string_view data);
/// SHA-256 of a file's bytes; throws if it cannot be read.
std::string file_sha256(const std::filesystem::path& path);

} // namespace spt::cli
