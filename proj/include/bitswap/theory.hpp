#pragma once

/// @file theory.hpp
/// @brief Expected first hitting times of the (mu + lambda) 1-Bit-Swap EA and
/// (mu + lambda) RLS on OneMax and Royal Roads under a static elite-count model.
///
/// Each evaluator is a sum of expected geometric waiting times, one per
/// progress level. For a level with per-offspring success probability q_alpha
/// (given alpha elites) the level succeeds with
///
///     P(success) = sum_alpha w(alpha) * (1 - (1 - q_alpha)^m)
///
/// where w is the elite-count distribution (Uniform over 1..mu, or Poisson(1)
/// truncated to 1..mu) and m is the number of independent trials per
/// generation (lambda/2 pairs for 1-Bit-Swap, lambda offspring for RLS). The
/// expected time at that level is 1 / P(success).
///
/// Everything is evaluated in probability space. The mu^(2 lambda + 1)-scaled
/// closed forms overflow double at mu = lambda = 30; the exact rational oracle
/// in theory_exact.hpp evaluates the scaled forms and certifies the identity.

#include <optional>
#include <string>
#include <vector>

namespace bitswap::theory {

enum class TheoryAlgorithm { BitSwap1, Rls };
enum class EliteDistribution { Uniform, Poisson1 };

/// Flip-success rate used by RLS on Royal Roads.
enum class RrFlipVariant {
    FullRate, ///< (M - 2l) / n, the stated single-flip probability
    HalfRate, ///< (M - 2l) / (2n), the factor printed inside the closed form
};

struct TheoryQuery {
    TheoryAlgorithm algorithm = TheoryAlgorithm::BitSwap1;
    bool royal_roads = false;
    int blocks = 0;       ///< K, Royal Roads only
    int block_length = 0; ///< M, Royal Roads only
    int mu = 1;
    int lambda = 2;
    int n = 50;
    EliteDistribution distribution = EliteDistribution::Uniform;
    RrFlipVariant rr_flip = RrFlipVariant::FullRate;

    static TheoryQuery onemax_1bs(int n, int mu, int lambda);
    static TheoryQuery onemax_rls(int n, int mu, int lambda);
    static TheoryQuery rr_1bs(int blocks, int block_length, int mu, int lambda);
    static TheoryQuery rr_rls(int blocks, int block_length, int mu, int lambda,
                              RrFlipVariant flip = RrFlipVariant::FullRate);

    [[nodiscard]] std::string describe() const;
};

/// Expected waiting time at one progress level.
///
/// OneMax 1-Bit-Swap: `k` is the surplus of ones over n/2 (0 .. n/2-1).
/// OneMax RLS: `k` is the ones count (n/2 .. n-1).
/// Royal Roads: `k` counts completed blocks (0 .. K-1) and `l` the zeros
/// already removed from the current block (0 .. M/2-1).
struct LevelTerm {
    int k;
    std::optional<int> l;
    double expected_generations;
};

struct EtaResult {
    double value = 0.0; ///< compensated sum of the per-level terms
    std::vector<LevelTerm> per_level;
};

/// Pair selection probability alpha^2 (alpha + 2(mu - alpha))^2 / mu^4:
/// both binary tournaments for a pair return elites.
[[nodiscard]] double p_sel_pair(int alpha, int mu);

/// Single-slot selection probability alpha (2 mu - alpha) / mu^2.
[[nodiscard]] double p_sel_single(int alpha, int mu);

/// 1-Bit-Swap improvement probability on OneMax for two parents with n/2 + k ones.
[[nodiscard]] double p_swap_onemax(int k, int n);

/// 1-Bit-Swap improvement probability in the current Royal Roads block.
[[nodiscard]] double p_swap_rr(int k, int l, int n, int block_length);

/// c(mu) = e / sum_{alpha=1}^{mu} 1/alpha!, by direct summation (mu <= 170).
[[nodiscard]] double poisson_norm_const(int mu);

/// Elite-count weights w(1..mu); sums to 1.
[[nodiscard]] std::vector<double> elite_weights(EliteDistribution dist, int mu);

/// 1 - (1 - q)^m computed as q * sum_{i<m} (1 - q)^i, which is exact for m = 1
/// and avoids cancellation for small q.
[[nodiscard]] double at_least_one_success(double q, int trials);

[[nodiscard]] EtaResult eta_onemax_1bs_uniform(const TheoryQuery& q);
[[nodiscard]] EtaResult eta_onemax_rls_uniform(const TheoryQuery& q);
[[nodiscard]] EtaResult eta_rr_1bs_uniform(const TheoryQuery& q);
[[nodiscard]] EtaResult eta_rr_rls_poisson(const TheoryQuery& q);

/// Dispatches to the evaluator matching the query; throws UnsupportedQuery for
/// combinations without one and ConfigError for invalid parameters.
[[nodiscard]] EtaResult evaluate(const TheoryQuery& q);

/// Throws UnsupportedQuery / ConfigError as `evaluate` would, without evaluating.
void validate(const TheoryQuery& q);

/// Single-individual (mu = 1) chain model used as an independent oracle.
struct MarkovChainSpec {
    enum class Model {
        RlsOneMax,       ///< state k ones, n/2 <= k < n; improve w.p. 1 - (k/n)^lambda
        PairSwapOneMax,  ///< surplus k, 0 <= k < n/2; one swapped pair improves w.p. p_swap_onemax
    };
    Model model = Model::RlsOneMax;
    int n = 50;
    int lambda = 1;
};

/// Per-state improvement probabilities of the chain, in ascending state order.
[[nodiscard]] std::vector<double> improvement_probabilities(const MarkovChainSpec& spec);

/// Expected absorption time of a level chain that only moves up by one:
/// sum of 1/p_k. Throws DivergenceError when some p_k <= 0.
[[nodiscard]] double markov_hitting_time(const std::vector<double>& improvement_probs);
[[nodiscard]] double markov_hitting_time(const MarkovChainSpec& spec);

} // namespace bitswap::theory
