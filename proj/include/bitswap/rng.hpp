#pragma once

/// @file rng.hpp
/// @brief Seedable, splittable random stream.
///
/// Every run owns one stream. Replication i of an experiment with base seed s
/// is seeded with derive_seed(s, i); streams for different i are statistically
/// independent and the mapping does not depend on scheduling order.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace bitswap {

/// Identifier written into outputs so results can be traced to the generator.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64/splitmix64-split";

/// One step of the SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for replication `index` of base seed `base`:
/// splitmix64(splitmix64(base) ^ splitmix64(index + 1)).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(base) ^ splitmix64(index + 1));
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [0, bound). bound must be positive.
    std::size_t index(std::size_t bound) {
        return std::uniform_int_distribution<std::size_t>(0, bound - 1)(engine_);
    }

    bool coin() { return std::uniform_int_distribution<int>(0, 1)(engine_) == 1; }

    std::mt19937_64& engine() noexcept { return engine_; }

  private:
    std::mt19937_64 engine_;
};

} // namespace bitswap
