#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace spt::sim {

enum class CorrelationModel { independent, one_factor };

std::string_view to_string(CorrelationModel model) noexcept;

/// Parameters of the synthetic market. Drift and volatility are attached to
/// capitalization ranks (index 0 = rank 1, the largest stock), not to names.
struct MarketConfig
{
    std::size_t n_stocks = 0;
    std::size_t n_days = 0;
    std::size_t days_per_year = 250;
    std::vector<double> growth_by_rank; // annualized log drift per rank
    std::vector<double> vol_by_rank;    // annualized volatility per rank
    CorrelationModel correlation = CorrelationModel::independent;
    double factor_loading = 0.0; // pairwise correlation under one_factor, in [0, 1)
    std::vector<double> initial_caps;
    std::uint64_t seed = 0;
    int start_year = 2000;

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const;
};

/// Flat growth across ranks and volatility rising linearly in log-rank from
/// 15% (largest stock) to 45% (smallest), Zipf initial caps and a weak
/// common factor. Reproduces the qualitative rank shapes of the US panel:
/// no growth advantage for small stocks, but more variance.
MarketConfig preset_paper_like(std::size_t n_stocks = 1000, std::size_t n_years = 20, std::uint64_t seed = 1);

/// `initial_caps[i] = scale / (i + 1)^exponent`.
std::vector<double> zipf_caps(std::size_t n, double exponent = 1.0, double scale = 1e9);

/// `lo + (hi - lo) * ln(k) / ln(n)` for ranks k = 1..n.
std::vector<double> log_rank_ramp(std::size_t n, double lo, double hi);

/// Reads the key-value format documented in the README. Unknown keys and bad
/// values raise spt::ConfigError naming the key.
MarketConfig parse_market_config(std::istream& in);
MarketConfig load_market_config(const std::string& path);

/// Canonical key-value text with every field spelled out. Parsing it back
/// gives the same config; hashing it identifies the run.
std::string to_config_text(const MarketConfig& config);

} // namespace spt::sim
