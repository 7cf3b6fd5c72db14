#include "spt/core/excess_growth.hpp"

#include <cmath>
#include <stdexcept>

namespace spt::core {

double excess_growth_direct(std::span<const double> weights, const Eigen::MatrixXd& covariance, double period)
{
    const auto n = static_cast<Eigen::Index>(weights.size());
    if (covariance.rows() != covariance.cols())
        throw std::invalid_argument("excess_growth_direct: covariance is not square");
    if (covariance.rows() != n)
        throw std::invalid_argument("excess_growth_direct: covariance size does not match the weights");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (covariance(i, i) < 0.0)
            throw std::invalid_argument("excess_growth_direct: negative variance on the diagonal");
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (std::abs(covariance(i, j) - covariance(j, i)) > 1e-10)
                throw std::invalid_argument("excess_growth_direct: covariance is not symmetric");
    }
    const Eigen::Map<const Eigen::VectorXd> w(weights.data(), n);
    const double weighted_variance = w.dot(covariance.diagonal());
    const double portfolio_variance = w.dot(covariance * w);
    return 0.5 * (weighted_variance - portfolio_variance) * period;
}

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& observations)
{
    if (observations.rows() < 2)
        throw std::invalid_argument("sample_covariance: need at least 2 observations");
    const Eigen::RowVectorXd mean = observations.colwise().mean();
    const Eigen::MatrixXd centered = observations.rowwise() - mean;
    Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(observations.rows() - 1);
    return 0.5 * (cov + cov.transpose());
}

Eigen::MatrixXd annualized_log_covariance(const WindowReturns& returns, std::size_t days_per_year)
{
    if (!returns.complete())
        throw std::invalid_argument("annualized_log_covariance: window has delistings");
    Eigen::MatrixXd obs(static_cast<Eigen::Index>(returns.days()), static_cast<Eigen::Index>(returns.members()));
    for (std::size_t d = 0; d < returns.days(); ++d) {
        const auto row = returns.log_gross(d);
        for (std::size_t m = 0; m < row.size(); ++m)
            obs(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(m)) = row[m];
    }
    return sample_covariance(obs) * static_cast<double>(days_per_year);
}

double window_excess_growth_direct(const WindowReturns& returns, std::span<const double> weights,
                                   std::size_t days_per_year)
{
    const Eigen::MatrixXd cov = annualized_log_covariance(returns, days_per_year);
    const double years = static_cast<double>(returns.days()) / static_cast<double>(days_per_year);
    return excess_growth_direct(weights, cov, years);
}

} // namespace spt::core
