#include "spt/rankstats/lowess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spt::rank {

std::vector<double> lowess(std::span<const double> x, std::span<const double> y, double fraction)
{
    if (x.size() != y.size())
        throw std::invalid_argument("lowess: x and y differ in length");
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw std::invalid_argument("lowess: fraction must lie in (0, 1]");
    const std::size_t n = x.size();
    if (n < 2)
        throw std::invalid_argument("lowess: need at least 2 points");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = x[order[i]];
        ys[i] = y[order[i]];
    }

    const auto span_points = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
    const std::size_t q = std::clamp<std::size_t>(span_points, 2, n);
    const double range = xs.back() - xs.front();

    std::vector<double> fitted(n);
    std::vector<double> w(n);
    std::size_t left = 0;
    for (std::size_t i = 0; i < n; ++i) {
        // Slide [left, left + q) to the q nearest neighbours of xs[i].
        while (left + q < n && xs[i] - xs[left] > xs[left + q] - xs[i])
            ++left;
        const std::size_t right = left + q - 1;
        const double h = std::max(xs[i] - xs[left], xs[right] - xs[i]);
        const double h_outer = 0.999 * h;
        const double h_inner = 0.001 * h;

        // Points tied with the window edges share its distance; include them.
        std::size_t lo = left, hi = right;
        while (lo > 0 && xs[i] - xs[lo - 1] <= h_outer)
            --lo;
        while (hi + 1 < n && xs[hi + 1] - xs[i] <= h_outer)
            ++hi;

        double wsum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) {
            const double d = std::abs(xs[j] - xs[i]);
            if (d <= h_inner)
                w[j] = 1.0;
            else if (d <= h_outer) {
                const double u = d / h;
                const double t = 1.0 - u * u * u;
                w[j] = t * t * t;
            } else
                w[j] = 0.0;
            wsum += w[j];
        }
        if (wsum <= 0.0) {
            fitted[i] = ys[i];
            continue;
        }
        double xbar = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) {
            w[j] /= wsum;
            xbar += w[j] * xs[j];
        }
        double spread = 0.0;
        for (std::size_t j = lo; j <= hi; ++j)
            spread += w[j] * (xs[j] - xbar) * (xs[j] - xbar);

        double value = 0.0;
        if (std::sqrt(spread) > 0.001 * range) {
            const double b = (xs[i] - xbar) / spread;
            for (std::size_t j = lo; j <= hi; ++j)
                value += w[j] * (1.0 + b * (xs[j] - xbar)) * ys[j];
        } else {
            for (std::size_t j = lo; j <= hi; ++j)
                value += w[j] * ys[j];
        }
        fitted[i] = value;
    }

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[order[i]] = fitted[i];
    return out;
}

} // namespace spt::rank
