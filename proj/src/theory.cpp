#include "bitswap/theory.hpp"

#include <cmath>
#include <numbers>

#include "bitswap/detail/compensated_sum.hpp"
#include "bitswap/errors.hpp"

namespace bitswap::theory {

namespace {

constexpr int kMaxPoissonMu = 170;

void require_alpha(int alpha, int mu) {
    if (mu < 1 || alpha < 1 || alpha > mu) {
        throw ConfigError("elite count must satisfy 1 <= alpha <= mu");
    }
}

// Probability that a generation improves the level, averaged over the elite count.
// `success_given_alpha(alpha)` is the per-trial success probability q_alpha.
template <typename PerTrial>
double level_success(const std::vector<double>& weights, int trials, PerTrial success_given_alpha) {
    detail::CompensatedSum total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const int alpha = static_cast<int>(i) + 1;
        total.add(weights[i] * at_least_one_success(success_given_alpha(alpha), trials));
    }
    return total.value();
}

void push_level(EtaResult& out, detail::CompensatedSum& sum, int k, std::optional<int> l, double success) {
    const double expected = 1.0 / success;
    out.per_level.push_back({k, l, expected});
    sum.add(expected);
}

} // namespace

TheoryQuery TheoryQuery::onemax_1bs(int n, int mu, int lambda) {
    TheoryQuery q;
    q.algorithm = TheoryAlgorithm::BitSwap1;
    q.n = n;
    q.mu = mu;
    q.lambda = lambda;
    return q;
}

TheoryQuery TheoryQuery::onemax_rls(int n, int mu, int lambda) {
    TheoryQuery q = onemax_1bs(n, mu, lambda);
    q.algorithm = TheoryAlgorithm::Rls;
    return q;
}

TheoryQuery TheoryQuery::rr_1bs(int blocks, int block_length, int mu, int lambda) {
    TheoryQuery q;
    q.algorithm = TheoryAlgorithm::BitSwap1;
    q.royal_roads = true;
    q.blocks = blocks;
    q.block_length = block_length;
    q.n = blocks * block_length;
    q.mu = mu;
    q.lambda = lambda;
    return q;
}

TheoryQuery TheoryQuery::rr_rls(int blocks, int block_length, int mu, int lambda, RrFlipVariant flip) {
    TheoryQuery q = rr_1bs(blocks, block_length, mu, lambda);
    q.algorithm = TheoryAlgorithm::Rls;
    q.distribution = EliteDistribution::Poisson1;
    q.rr_flip = flip;
    return q;
}

std::string TheoryQuery::describe() const {
    std::string s = algorithm == TheoryAlgorithm::BitSwap1 ? "alg=1bs" : "alg=rls";
    s += royal_roads ? " fitness=rr K=" + std::to_string(blocks) + " M=" + std::to_string(block_length)
                     : " fitness=onemax";
    s += " n=" + std::to_string(n) + " mu=" + std::to_string(mu) + " lambda=" + std::to_string(lambda);
    s += distribution == EliteDistribution::Uniform ? " dist=uniform" : " dist=poisson1";
    if (royal_roads && algorithm == TheoryAlgorithm::Rls) {
        s += rr_flip == RrFlipVariant::FullRate ? " rr-flip=full" : " rr-flip=half";
    }
    return s;
}

double p_sel_pair(int alpha, int mu) {
    require_alpha(alpha, mu);
    const double a = alpha;
    const double m = mu;
    const double inner = a * (a + 2.0 * (m - a));
    return (inner * inner) / (m * m * m * m);
}

double p_sel_single(int alpha, int mu) {
    require_alpha(alpha, mu);
    const double a = alpha;
    const double m = mu;
    return a * (2.0 * m - a) / (m * m);
}

double p_swap_onemax(int k, int n) {
    if (n < 2 || n % 2 != 0 || k < 0 || k > n / 2 - 1) {
        throw ConfigError("p_swap_onemax needs even n and 0 <= k <= n/2 - 1");
    }
    const double ratio = static_cast<double>(k) / n;
    return 0.5 - 2.0 * ratio * ratio;
}

double p_swap_rr(int k, int l, int n, int block_length) {
    if (block_length < 2 || block_length % 2 != 0 || n < block_length || n % block_length != 0) {
        throw ConfigError("p_swap_rr needs n = K*M with M even");
    }
    const int blocks = n / block_length;
    if (k < 0 || k > blocks - 1 || l < 0 || l > block_length / 2 - 1) {
        throw ConfigError("p_swap_rr needs 0 <= k <= K-1 and 0 <= l <= M/2 - 1");
    }
    const double nn = n;
    return static_cast<double>(block_length - 2 * l) * (nn + static_cast<double>(k) * block_length + 2.0 * l) /
           (2.0 * nn * nn);
}

double poisson_norm_const(int mu) {
    if (mu < 1 || mu > kMaxPoissonMu) {
        throw ConfigError("poisson_norm_const needs 1 <= mu <= 170");
    }
    detail::CompensatedSum sum;
    double term = 1.0;
    for (int a = 1; a <= mu; ++a) {
        term /= a;
        sum.add(term);
    }
    return std::numbers::e / sum.value();
}

std::vector<double> elite_weights(EliteDistribution dist, int mu) {
    if (mu < 1) {
        throw ConfigError("mu must be >= 1");
    }
    std::vector<double> w(static_cast<std::size_t>(mu));
    if (dist == EliteDistribution::Uniform) {
        for (auto& x : w) {
            x = 1.0 / mu;
        }
        return w;
    }
    if (mu > kMaxPoissonMu) {
        throw ConfigError("Poisson(1) elite weights need mu <= 170");
    }
    // c(mu)/e * 1/alpha! = (1/alpha!) / sum_beta 1/beta!
    const double c_over_e = poisson_norm_const(mu) / std::numbers::e;
    double inv_factorial = 1.0;
    for (int a = 1; a <= mu; ++a) {
        inv_factorial /= a;
        w[static_cast<std::size_t>(a - 1)] = c_over_e * inv_factorial;
    }
    return w;
}

double at_least_one_success(double q, int trials) {
    const double fail = 1.0 - q;
    double power = 1.0;
    double geometric = 0.0;
    for (int i = 0; i < trials; ++i) {
        geometric += power;
        power *= fail;
    }
    return q * geometric;
}

void validate(const TheoryQuery& q) {
    if (q.mu < 1) {
        throw ConfigError("mu must be >= 1");
    }
    if (q.lambda < 1) {
        throw ConfigError("lambda must be >= 1");
    }
    if (q.algorithm == TheoryAlgorithm::BitSwap1 && q.lambda % 2 != 0) {
        throw ConfigError("1-Bit-Swap needs an even lambda");
    }
    if (q.royal_roads) {
        if (q.blocks < 1 || q.block_length < 2 || q.block_length % 2 != 0) {
            throw ConfigError("Royal Roads needs K >= 1 and an even M >= 2");
        }
        if (q.n != q.blocks * q.block_length) {
            throw ConfigError("Royal Roads needs n = K*M");
        }
    } else if (q.n < 2 || q.n % 2 != 0) {
        throw ConfigError("OneMax theory needs an even n >= 2");
    }

    const bool uniform = q.distribution == EliteDistribution::Uniform;
    const bool supported = (q.algorithm == TheoryAlgorithm::BitSwap1 && uniform) ||
                           (q.algorithm == TheoryAlgorithm::Rls && !q.royal_roads && uniform) ||
                           (q.algorithm == TheoryAlgorithm::Rls && q.royal_roads && !uniform);
    if (!supported) {
        throw UnsupportedQuery("no evaluator for " + q.describe());
    }
    if (!uniform && q.mu > kMaxPoissonMu) {
        throw ConfigError("Poisson(1) elite model needs mu <= 170");
    }
}

namespace {

void require_combination(const TheoryQuery& q, TheoryAlgorithm alg, bool rr, EliteDistribution dist) {
    validate(q);
    if (q.algorithm != alg || q.royal_roads != rr || q.distribution != dist) {
        throw UnsupportedQuery("evaluator does not accept " + q.describe());
    }
}

} // namespace

EtaResult eta_onemax_1bs_uniform(const TheoryQuery& q) {
    require_combination(q, TheoryAlgorithm::BitSwap1, false, EliteDistribution::Uniform);
    const auto weights = elite_weights(EliteDistribution::Uniform, q.mu);
    EtaResult out;
    detail::CompensatedSum sum;
    // k = surplus of ones over n/2 in the elite parents.
    for (int k = 0; k <= q.n / 2 - 1; ++k) {
        const double swap = p_swap_onemax(k, q.n);
        const double success =
            level_success(weights, q.lambda / 2, [&](int alpha) { return p_sel_pair(alpha, q.mu) * swap; });
        push_level(out, sum, k, std::nullopt, success);
    }
    out.value = sum.value();
    return out;
}

EtaResult eta_onemax_rls_uniform(const TheoryQuery& q) {
    require_combination(q, TheoryAlgorithm::Rls, false, EliteDistribution::Uniform);
    const auto weights = elite_weights(EliteDistribution::Uniform, q.mu);
    EtaResult out;
    detail::CompensatedSum sum;
    // k = ones count of the elite; a flip improves w.p. (n - k)/n.
    for (int k = q.n / 2; k <= q.n - 1; ++k) {
        const double flip = 1.0 - static_cast<double>(k) / q.n;
        const double success =
            level_success(weights, q.lambda, [&](int alpha) { return p_sel_single(alpha, q.mu) * flip; });
        push_level(out, sum, k, std::nullopt, success);
    }
    out.value = sum.value();
    return out;
}

EtaResult eta_rr_1bs_uniform(const TheoryQuery& q) {
    require_combination(q, TheoryAlgorithm::BitSwap1, true, EliteDistribution::Uniform);
    const auto weights = elite_weights(EliteDistribution::Uniform, q.mu);
    EtaResult out;
    detail::CompensatedSum sum;
    for (int k = 0; k <= q.blocks - 1; ++k) {
        for (int l = 0; l <= q.block_length / 2 - 1; ++l) {
            const double swap = p_swap_rr(k, l, q.n, q.block_length);
            const double success =
                level_success(weights, q.lambda / 2, [&](int alpha) { return p_sel_pair(alpha, q.mu) * swap; });
            push_level(out, sum, k, l, success);
        }
    }
    out.value = sum.value();
    return out;
}

EtaResult eta_rr_rls_poisson(const TheoryQuery& q) {
    require_combination(q, TheoryAlgorithm::Rls, true, EliteDistribution::Poisson1);
    const auto weights = elite_weights(EliteDistribution::Poisson1, q.mu);
    const double rate_divisor = q.rr_flip == RrFlipVariant::FullRate ? q.n : 2.0 * q.n;

    // Success does not depend on the block index, so one block is evaluated and
    // the block sum is K copies of it, recorded per block for the level listing.
    std::vector<double> block_terms;
    for (int l = 0; l <= q.block_length / 2 - 1; ++l) {
        const double flip = (q.block_length - 2 * l) / rate_divisor;
        const double success =
            level_success(weights, q.lambda, [&](int alpha) { return p_sel_single(alpha, q.mu) * flip; });
        block_terms.push_back(1.0 / success);
    }
    detail::CompensatedSum block_sum;
    for (const double t : block_terms) {
        block_sum.add(t);
    }

    EtaResult out;
    for (int k = 0; k <= q.blocks - 1; ++k) {
        for (int l = 0; l <= q.block_length / 2 - 1; ++l) {
            out.per_level.push_back({k, l, block_terms[static_cast<std::size_t>(l)]});
        }
    }
    out.value = q.blocks * block_sum.value();
    return out;
}

EtaResult evaluate(const TheoryQuery& q) {
    validate(q);
    if (q.algorithm == TheoryAlgorithm::BitSwap1) {
        return q.royal_roads ? eta_rr_1bs_uniform(q) : eta_onemax_1bs_uniform(q);
    }
    return q.royal_roads ? eta_rr_rls_poisson(q) : eta_onemax_rls_uniform(q);
}

std::vector<double> improvement_probabilities(const MarkovChainSpec& spec) {
    if (spec.n < 2 || spec.n % 2 != 0) {
        throw ConfigError("chain model needs an even n >= 2");
    }
    std::vector<double> probs;
    if (spec.model == MarkovChainSpec::Model::RlsOneMax) {
        if (spec.lambda < 1) {
            throw ConfigError("lambda must be >= 1");
        }
        for (int k = spec.n / 2; k <= spec.n - 1; ++k) {
            // lambda independent single flips of the same parent all miss a zero.
            probs.push_back(1.0 - std::pow(static_cast<double>(k) / spec.n, spec.lambda));
        }
    } else {
        for (int k = 0; k <= spec.n / 2 - 1; ++k) {
            probs.push_back(p_swap_onemax(k, spec.n));
        }
    }
    return probs;
}

double markov_hitting_time(const std::vector<double>& improvement_probs) {
    detail::CompensatedSum sum;
    for (std::size_t i = 0; i < improvement_probs.size(); ++i) {
        const double p = improvement_probs[i];
        if (!(p > 0.0)) {
            throw DivergenceError("state " + std::to_string(i) + " has zero improvement probability");
        }
        sum.add(1.0 / p);
    }
    return sum.value();
}

double markov_hitting_time(const MarkovChainSpec& spec) { return markov_hitting_time(improvement_probabilities(spec)); }

} // namespace bitswap::theory
