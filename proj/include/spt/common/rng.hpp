#pragma once

#include <cstdint>
#include <initializer_list>

namespace spt {

/// SplitMix64 finalizer. Used to turn (seed, stream coordinates) into
/// well-separated engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seed for the substream identified by `coordinates` under `base`.
/// Identical inputs always give the same seed, independent of thread layout.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coordinates)
{
    std::uint64_t h = splitmix64(base);
    for (std::uint64_t c : coordinates)
        h = splitmix64(h ^ splitmix64(c + 0x632BE59BD9B4E019ull));
    return h;
}

} // namespace spt
