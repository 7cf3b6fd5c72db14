#pragma once

#include "spt/core/window.hpp"

#include <Eigen/Dense>
#include <cstddef>
#include <span>

namespace spt::core {

/// Excess growth over `period` years from covariance rates:
///
///     0.5 * (sum_i w_i S_ii - w' S w) * period
///
/// Throws std::invalid_argument if S is not square, its size differs from
/// the weights, it is asymmetric beyond 1e-10, or has a negative diagonal.
double excess_growth_direct(std::span<const double> weights, const Eigen::MatrixXd& covariance, double period);

/// Sample covariance of the columns of `observations` (rows are dates),
/// with the n - 1 denominator.
Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& observations);

/// Annualized sample covariance of a window's daily log-returns.
/// Requires a window without delistings and at least two days.
Eigen::MatrixXd annualized_log_covariance(const WindowReturns& returns, std::size_t days_per_year);

/// Covariance-route excess growth of a window held at `weights`: the
/// annualized window covariance applied over the window's length in years.
double window_excess_growth_direct(const WindowReturns& returns, std::span<const double> weights,
                                   std::size_t days_per_year);

} // namespace spt::core
