#include "spt/core/return_averages.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spt::core {

ReturnAverages return_averages(std::span<const double> returns)
{
    if (returns.empty())
        throw std::invalid_argument("return_averages: empty sequence");
    double sum = 0.0;
    double log_sum = 0.0;
    for (std::size_t i = 0; i < returns.size(); ++i) {
        const double r = returns[i];
        if (!(r > -1.0) || !std::isfinite(r))
            throw std::invalid_argument("return_averages: return " + std::to_string(r) + " at position " +
                                        std::to_string(i) + " is not above -1");
        sum += r;
        log_sum += std::log1p(r);
    }
    const double n = static_cast<double>(returns.size());
    ReturnAverages out;
    out.arithmetic = sum / n;
    out.logarithmic = log_sum / n;
    // N-th root of the product, taken in log space so long sequences cannot overflow.
    out.geometric = std::expm1(out.logarithmic);
    return out;
}

} // namespace spt::core
