#pragma once

/// @file fitness.hpp
/// @brief OneMax and Royal Roads fitness, the per-block auxiliary progress value,
/// and the Individual type that caches both.

#include <cstddef>
#include <string>
#include <utility>

#include "bitswap/bitstring.hpp"

namespace bitswap {

/// Evaluation rule plus problem geometry.
///
/// Royal Roads splits the chromosome into `blocks` consecutive blocks of
/// `block_length` bits; a block is worth its length only when every bit is 1.
class FitnessKind {
  public:
    enum class Variant { OneMax, RoyalRoads };

    static FitnessKind one_max() { return FitnessKind(Variant::OneMax, 0, 0); }

    /// Throws ConfigError unless blocks >= 1 and block_length is even and >= 2.
    static FitnessKind royal_roads(int blocks, int block_length);

    [[nodiscard]] Variant variant() const noexcept { return variant_; }
    [[nodiscard]] bool is_royal_roads() const noexcept { return variant_ == Variant::RoyalRoads; }
    [[nodiscard]] int blocks() const noexcept { return blocks_; }
    [[nodiscard]] int block_length() const noexcept { return block_length_; }

    /// Throws ConfigError if a genome of length n cannot be evaluated (RR: n != K*M).
    void check_length(std::size_t n) const;

    [[nodiscard]] int evaluate(const BitString& genome) const;

    /// "onemax" or "rr(K=..,M=..)".
    [[nodiscard]] std::string describe() const;

    friend bool operator==(const FitnessKind&, const FitnessKind&) = default;

  private:
    FitnessKind(Variant v, int blocks, int block_length)
        : variant_(v), blocks_(blocks), block_length_(block_length) {}

    Variant variant_;
    int blocks_;
    int block_length_;
};

[[nodiscard]] int onemax(const BitString& genome) noexcept;

/// M times the number of all-ones blocks. Throws ConfigError when n != K*M.
[[nodiscard]] int royal_roads(const BitString& genome, int blocks, int block_length);

/// Total ones count, i.e. the sum of the per-block auxiliary values.
[[nodiscard]] int aux_value(const BitString& genome) noexcept;

/// Ones count of block `block`. Throws ConfigError when the block index is out of range.
[[nodiscard]] int aux_block(const BitString& genome, int block, int block_length);

/// A genome with its fitness and auxiliary value evaluated once at construction.
///
/// The genome is only reachable as const; operators build new Individuals, so
/// the cached values can never go stale.
class Individual {
  public:
    Individual(BitString genome, const FitnessKind& kind)
        : genome_(std::move(genome)), fitness_(kind.evaluate(genome_)), aux_(aux_value(genome_)) {}

    [[nodiscard]] const BitString& genome() const noexcept { return genome_; }
    [[nodiscard]] int fitness() const noexcept { return fitness_; }
    [[nodiscard]] int aux() const noexcept { return aux_; }
    [[nodiscard]] std::size_t size() const noexcept { return genome_.size(); }

  private:
    BitString genome_;
    int fitness_;
    int aux_;
};

} // namespace bitswap
