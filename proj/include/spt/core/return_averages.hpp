#pragma once

#include <span>

namespace spt::core {

/// Three ways to average a sequence of per-period returns.
/// For returns > -1: arithmetic >= geometric >= logarithmic.
struct ReturnAverages
{
    double arithmetic = 0.0;  // mean(1 + r) - 1
    double geometric = 0.0;   // (prod(1 + r))^(1/N) - 1
    double logarithmic = 0.0; // mean(log(1 + r))
};

/// Throws std::invalid_argument on an empty sequence or any return <= -1.
ReturnAverages return_averages(std::span<const double> returns);

/// Log-return approximation `mean_arith - variance / 2`; the gap is the
/// volatility drag.
constexpr double volatility_drag(double mean_arith, double variance) noexcept
{
    return mean_arith - 0.5 * variance;
}

} // namespace spt::core
