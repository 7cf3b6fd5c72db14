#include "spt/rankstats/slope_fit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace spt::rank {

SlopeFit fit_line(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("fit_line: x and y differ in length");
    const std::size_t n = x.size();
    if (n < 3)
        throw std::invalid_argument("fit_line: need at least 3 points");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0))
        throw std::invalid_argument("fit_line: degenerate design (all x equal)");

    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ssr += r * r;
    }
    fit.standard_error = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
    fit.interval_low = fit.slope - 2.0 * fit.standard_error;
    fit.interval_high = fit.slope + 2.0 * fit.standard_error;
    return fit;
}

std::string_view to_string(SlopeTarget target) noexcept
{
    return target == SlopeTarget::growth ? "growth" : "variance";
}

SlopeFit fit_slope(const RankStatistics& stats, SlopeTarget target)
{
    const auto& values = target == SlopeTarget::growth ? stats.mean_log_return : stats.variance;
    std::vector<double> ranks(values.size());
    for (std::size_t k = 0; k < ranks.size(); ++k)
        ranks[k] = static_cast<double>(k + 1);
    return fit_line(ranks, values);
}

} // namespace spt::rank
