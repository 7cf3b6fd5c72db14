#pragma once

#include "spt/rankstats/ranking.hpp"

#include <span>
#include <string_view>

namespace spt::rank {

/// Ordinary least-squares line with the classical slope standard error.
struct SlopeFit
{
    double slope = 0.0;
    double intercept = 0.0;
    double standard_error = 0.0;
    double interval_low = 0.0;  // slope - 2 se
    double interval_high = 0.0; // slope + 2 se

    bool interval_contains(double value) const noexcept { return interval_low <= value && value <= interval_high; }
};

/// Needs at least three points and two distinct x values.
SlopeFit fit_line(std::span<const double> x, std::span<const double> y);

enum class SlopeTarget { growth, variance };

std::string_view to_string(SlopeTarget target) noexcept;

/// Regresses g_k (growth) or v_k (variance) on the rank index k = 1..N.
SlopeFit fit_slope(const RankStatistics& stats, SlopeTarget target);

} // namespace spt::rank
