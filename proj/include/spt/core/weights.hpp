#pragma once

#include "spt/marketdata/panel.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace spt::core {

/// The five naive weighting rules.
enum class StrategyKind {
    cap_weighted,          // CW: proportional to cap
    equal_weighted,        // EW: 1/n
    large_overweighted,    // LO: proportional to cap^2
    random_weighted,       // RW: proportional to U
    inverse_random_weighted // IRW: proportional to 1/U
};

inline constexpr std::array kAllStrategies = {StrategyKind::cap_weighted, StrategyKind::equal_weighted,
                                              StrategyKind::large_overweighted, StrategyKind::random_weighted,
                                              StrategyKind::inverse_random_weighted};

/// "CW", "EW", "LO", "RW", "IRW".
std::string_view short_name(StrategyKind kind) noexcept;
StrategyKind parse_strategy_kind(std::string_view name);
constexpr bool is_randomized(StrategyKind kind) noexcept
{
    return kind == StrategyKind::random_weighted || kind == StrategyKind::inverse_random_weighted;
}

/// A strategy plus its seed; the seed is present exactly for RW and IRW.
class StrategySpec
{
public:
    /// Throws std::invalid_argument if a seed is given for a deterministic kind
    /// or omitted for a randomized one.
    StrategySpec(StrategyKind kind, std::optional<std::uint64_t> seed = std::nullopt);

    StrategyKind kind() const noexcept { return kind_; }
    const std::optional<std::uint64_t>& seed() const noexcept { return seed_; }
    bool randomized() const noexcept { return is_randomized(kind_); }
    std::string_view name() const noexcept { return short_name(kind_); }

    bool operator==(const StrategySpec&) const = default;

private:
    StrategyKind kind_;
    std::optional<std::uint64_t> seed_;
};

/// Lower end of the uniform draws for RW and IRW: U ~ Uniform(eps, 1], which
/// keeps 1/U finite.
inline constexpr double kUniformFloor = 1e-12;

/// Long-only weights over a universe, summing to 1.
struct WeightVector
{
    std::vector<marketdata::SecurityIndex> universe;
    std::vector<double> weights;

    std::size_t size() const noexcept { return weights.size(); }
};

/// Builds normalized weights for `universe` from its caps. RW and IRW draws
/// come from an engine seeded by spec.seed(), so the result is reproducible.
/// Throws std::invalid_argument on a non-positive cap or a size mismatch.
WeightVector make_weights(const StrategySpec& spec, std::span<const marketdata::SecurityIndex> universe,
                          std::span<const double> caps);

/// Convenience overload for plain cap vectors (universe = 0..n-1).
WeightVector make_weights(const StrategySpec& spec, std::span<const double> caps);

} // namespace spt::core
