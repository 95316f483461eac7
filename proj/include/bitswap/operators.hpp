#pragma once

/// @file operators.hpp
/// @brief Tournament selection, k-Bit-Swap recombination, single-bit flip and
/// elitist replacement.
///
/// All operators are free functions over values plus an explicit Rng; none of
/// them touch global state.

#include <span>
#include <utility>
#include <vector>

#include "bitswap/fitness.hpp"
#include "bitswap/rng.hpp"

namespace bitswap {

/// mu members, ordered. Elites are the members tied at the maximum fitness.
using Population = std::vector<Individual>;

/// lambda selected copies, overwritten in place by their offspring.
using RecombinationPool = std::vector<Individual>;

[[nodiscard]] int max_fitness(std::span<const Individual> members);

/// Number of members at the maximum fitness (alpha). Zero only for an empty span.
[[nodiscard]] int elite_count(std::span<const Individual> members);

/// Binary tournament with replacement: two uniform draws, the fitter one wins,
/// a fair coin breaks ties. Throws ConfigError on an empty population.
[[nodiscard]] Individual tournament_select(std::span<const Individual> pop, Rng& rng);

/// k sequential swaps; each picks i uniformly in `a` and j uniformly in `b`
/// independently and exchanges a[i] with b[j]. Parents are left untouched.
/// Throws ConfigError on length mismatch or k outside [1, n].
[[nodiscard]] std::pair<Individual, Individual> k_bit_swap(const Individual& a, const Individual& b, int k,
                                                           const FitnessKind& kind, Rng& rng);

/// Inverts one uniformly chosen bit.
[[nodiscard]] Individual point_flip(const Individual& a, const FitnessKind& kind, Rng& rng);

enum class ReplacePolicy {
    Ranked,    ///< fill from pool offspring sorted by fitness, cycling from the top
    CloneBest, ///< fill with copies of the single best offspring
};

enum class ElitePolicy {
    Keep,     ///< the alpha elites always keep their slots
    Turnover, ///< offspring tied at f* take elite slots before the old elites
};

/// Elitist (mu + lambda) replacement.
///
/// With f* the current maximum and alpha the number of members at f*:
///   1. offspring strictly better than f* enter first, best first;
///   2. the alpha elites are kept, in their current order (under Turnover,
///      offspring tied at f* take these alpha slots first, best first);
///   3. the remaining slots are filled from the fitness-sorted pool (stable,
///      ties by pool index), skipping offspring already admitted in step 1 and
///      cycling from the top once the pool is exhausted.
/// Non-elite members are always replaced. When no offspring beats f* this is
/// exactly "keep the alpha best, fill the rest from the pool"; with mu = 1 it
/// keeps the better of the member and the best offspring. Under Keep a
/// population with alpha = mu is unchanged unless an offspring beats f*; Turnover
/// lets equal-fitness offspring drift across a plateau.
[[nodiscard]] Population elitist_replace(const Population& pop, const RecombinationPool& pool,
                                         ReplacePolicy policy = ReplacePolicy::Ranked,
                                         ElitePolicy elites = ElitePolicy::Keep);

} // namespace bitswap
