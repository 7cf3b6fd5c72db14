#include "spt/core/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace spt::core {

std::string_view short_name(StrategyKind kind) noexcept
{
    switch (kind) {
    case StrategyKind::cap_weighted: return "CW";
    case StrategyKind::equal_weighted: return "EW";
    case StrategyKind::large_overweighted: return "LO";
    case StrategyKind::random_weighted: return "RW";
    case StrategyKind::inverse_random_weighted: return "IRW";
    }
    return "?";
}

StrategyKind parse_strategy_kind(std::string_view name)
{
    for (auto kind : kAllStrategies)
        if (short_name(kind) == name)
            return kind;
    throw std::invalid_argument("unknown strategy '" + std::string(name) + "' (expected CW, EW, LO, RW or IRW)");
}

StrategySpec::StrategySpec(StrategyKind kind, std::optional<std::uint64_t> seed) : kind_(kind), seed_(seed)
{
    if (is_randomized(kind) && !seed)
        throw std::invalid_argument(std::string(short_name(kind)) + " needs a seed");
    if (!is_randomized(kind) && seed)
        throw std::invalid_argument(std::string(short_name(kind)) + " takes no seed");
}

WeightVector make_weights(const StrategySpec& spec, std::span<const marketdata::SecurityIndex> universe,
                          std::span<const double> caps)
{
    if (universe.size() != caps.size())
        throw std::invalid_argument("make_weights: universe and caps differ in length");
    if (caps.empty())
        throw std::invalid_argument("make_weights: empty universe");
    for (double c : caps)
        if (!(c > 0.0) || !std::isfinite(c))
            throw std::invalid_argument("make_weights: caps must be positive, got " + std::to_string(c));

    const std::size_t n = caps.size();
    WeightVector out;
    out.universe.assign(universe.begin(), universe.end());
    out.weights.resize(n);
    switch (spec.kind()) {
    case StrategyKind::cap_weighted:
        std::copy(caps.begin(), caps.end(), out.weights.begin());
        break;
    case StrategyKind::equal_weighted:
        std::fill(out.weights.begin(), out.weights.end(), 1.0);
        break;
    case StrategyKind::large_overweighted: {
        // Scale by the largest cap first so squaring cannot overflow.
        const double top = *std::max_element(caps.begin(), caps.end());
        for (std::size_t i = 0; i < n; ++i) {
            const double c = caps[i] / top;
            out.weights[i] = c * c;
        }
        break;
    }
    case StrategyKind::random_weighted:
    case StrategyKind::inverse_random_weighted: {
        std::mt19937_64 engine(*spec.seed());
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        const bool inverse = spec.kind() == StrategyKind::inverse_random_weighted;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = kUniformFloor + (1.0 - kUniformFloor) * (1.0 - uniform(engine));
            out.weights[i] = inverse ? 1.0 / u : u;
        }
        break;
    }
    }
    const double total = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
    for (double& w : out.weights)
        w /= total;
    return out;
}

WeightVector make_weights(const StrategySpec& spec, std::span<const double> caps)
{
    std::vector<marketdata::SecurityIndex> universe(caps.size());
    std::iota(universe.begin(), universe.end(), marketdata::SecurityIndex{0});
    return make_weights(spec, universe, caps);
}

} // namespace spt::core
