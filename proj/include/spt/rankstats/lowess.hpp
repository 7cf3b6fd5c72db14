#pragma once

#include <span>
#include <vector>

namespace spt::rank {

inline constexpr double kDefaultLowessFraction = 0.05;

/// Locally weighted linear regression (LOWESS) without robustness passes.
///
/// Each point is fitted from its ceil(fraction * n) nearest neighbours in x
/// (at least 2) with tricube weights scaled to the farthest neighbour.
/// Returns the smoothed value for each input point, in input order.
/// Requires fraction in (0, 1] and at least two points.
std::vector<double> lowess(std::span<const double> x, std::span<const double> y,
                           double fraction = kDefaultLowessFraction);

} // namespace spt::rank
