#pragma once

/// @file engine.hpp
/// @brief Generation loop for the (mu + lambda) k-Bit-Swap EA and (mu + lambda) RLS,
/// with first-hitting-time measurement and per-generation traces.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bitswap/fitness.hpp"
#include "bitswap/operators.hpp"

namespace bitswap {

enum class AlgorithmKind {
    KBitSwap, ///< select lambda, apply k-Bit-Swap to positional pairs, replace
    Rls,      ///< select lambda, flip exactly one bit in each, replace
};

struct Algorithm {
    AlgorithmKind kind = AlgorithmKind::KBitSwap;
    int swaps = 1; ///< k; ignored for RLS

    static Algorithm bit_swap(int k = 1) { return {AlgorithmKind::KBitSwap, k}; }
    static Algorithm rls() { return {AlgorithmKind::Rls, 1}; }

    friend bool operator==(const Algorithm&, const Algorithm&) = default;
};

enum class InitPolicy {
    RandomUniform,    ///< i.i.d. fair bits
    HalfOnes,         ///< exactly n/2 ones at uniformly random positions
    HalfOnesPerBlock, ///< exactly M/2 ones at random positions inside each RR block
};

struct EAConfig {
    int mu = 1;
    int lambda = 2;
    int n = 50;
    FitnessKind fitness = FitnessKind::one_max();
    Algorithm algorithm = Algorithm::bit_swap();
    InitPolicy init = InitPolicy::RandomUniform;
    ReplacePolicy replace = ReplacePolicy::Ranked;
    /// Unset: Keep on OneMax, Turnover on Royal Roads (see resolved_elites).
    std::optional<ElitePolicy> elites;
    int max_generations = 2000;
    std::uint64_t seed = 1;

    /// Throws ConfigError when any invariant is violated.
    void validate() const;
};

struct TraceEntry {
    int generation;
    int best_fitness;
    int elite_count;
    int best_aux; ///< largest aux value among the members at best_fitness

    friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct RunRecord {
    std::optional<int> hit_generation; ///< nullopt when censored at max_generations
    std::vector<TraceEntry> trace;     ///< generation 0 is the initial population
    std::uint64_t seed = 0;

    [[nodiscard]] bool censored() const noexcept { return !hit_generation.has_value(); }

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// The elite policy a run uses: config.elites if set, else Turnover for Royal
/// Roads (a frozen all-elite plateau can never be left otherwise) and Keep for OneMax.
[[nodiscard]] ElitePolicy resolved_elites(const EAConfig& config);

/// Initial population for `config`, drawn from `rng`.
[[nodiscard]] Population initialize_population(const EAConfig& config, Rng& rng);

/// One selection/variation/replacement cycle.
[[nodiscard]] Population step(const Population& pop, const EAConfig& config, Rng& rng);

/// Runs until the best fitness equals n or max_generations cycles have completed.
/// Deterministic in (config, config.seed).
[[nodiscard]] RunRecord run(const EAConfig& config);

/// Same loop starting from a caller-supplied population of config.mu members.
[[nodiscard]] RunRecord run(const EAConfig& config, Population initial);

/// `count` runs; run i uses seed derive_seed(config.seed, i). Output is ordered
/// by replication index and does not depend on `threads` (0 = hardware concurrency).
[[nodiscard]] std::vector<RunRecord> run_replications(const EAConfig& config, int count, unsigned threads = 1);

[[nodiscard]] std::string to_string(AlgorithmKind kind);
[[nodiscard]] std::string to_string(InitPolicy init);
[[nodiscard]] std::string to_string(ReplacePolicy policy);
[[nodiscard]] std::string to_string(ElitePolicy policy);

} // namespace bitswap
