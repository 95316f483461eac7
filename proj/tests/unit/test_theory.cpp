#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bitswap/bitstring.hpp"
#include "bitswap/errors.hpp"
#include "bitswap/fitness.hpp"
#include "bitswap/theory.hpp"

using namespace bitswap;
using namespace bitswap::theory;

namespace {

// Enumerates every ordered draw tuple of binary tournaments with replacement
// where the first `alpha` of `mu` members are elite (elites always win).
// Returns the fraction of tuples in which all `slots` slots receive an elite.
double elite_slots_by_enumeration(int alpha, int mu, int slots) {
    const int draws = 2 * slots;
    long long total = 1;
    for (int i = 0; i < draws; ++i) {
        total *= mu;
    }
    long long good = 0;
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        bool all = true;
        for (int s = 0; s < slots; ++s) {
            const long long x = c % mu;
            c /= mu;
            const long long y = c % mu;
            c /= mu;
            all = all && (x < alpha || y < alpha);
        }
        good += all ? 1 : 0;
    }
    return static_cast<double>(good) / static_cast<double>(total);
}

// Genome for the Royal Roads swap oracle: k complete blocks, block k holding
// M/2 + l ones, every later block M/2 ones.
BitString rr_state(int blocks, int m, int k, int l) {
    BitString g(static_cast<std::size_t>(blocks * m));
    for (int b = 0; b < blocks; ++b) {
        const int ones = b < k ? m : (b == k ? m / 2 + l : m / 2);
        for (int i = 0; i < ones; ++i) {
            g.set(static_cast<std::size_t>(b * m + i), true);
        }
    }
    return g;
}

// Fraction of the n^2 position pairs whose swap adds a one to block k of
// either parent.
double rr_swap_by_enumeration(int blocks, int m, int k, int l) {
    const auto a = rr_state(blocks, m, k, l);
    const auto& b = a;
    const int n = blocks * m;
    long long good = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const bool into_a = i / m == k && !a.get(static_cast<std::size_t>(i)) && b.get(static_cast<std::size_t>(j));
            const bool into_b = j / m == k && !b.get(static_cast<std::size_t>(j)) && a.get(static_cast<std::size_t>(i));
            good += (into_a || into_b) ? 1 : 0;
        }
    }
    return static_cast<double>(good) / (static_cast<double>(n) * n);
}

double harmonic(int m) {
    double h = 0.0;
    for (int j = m; j >= 1; --j) {
        h += 1.0 / j;
    }
    return h;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("pair selection probability") {
    CHECK(p_sel_pair(5, 5) == 1.0);
    CHECK(p_sel_pair(1, 2) == doctest::Approx(9.0 / 16).epsilon(1e-15));
    CHECK(p_sel_pair(2, 4) == doctest::Approx(0.5625).epsilon(1e-15));
    for (int mu = 1; mu <= 5; ++mu) {
        for (int alpha = 1; alpha <= mu; ++alpha) {
            CHECK(p_sel_pair(alpha, mu) == doctest::Approx(elite_slots_by_enumeration(alpha, mu, 2)).epsilon(1e-14));
        }
    }
    CHECK_THROWS_AS((void)p_sel_pair(0, 4), ConfigError);
    CHECK_THROWS_AS((void)p_sel_pair(5, 4), ConfigError);
}

TEST_CASE("single selection probability") {
    CHECK(p_sel_single(3, 3) == 1.0);
    CHECK(p_sel_single(1, 4) == doctest::Approx(7.0 / 16).epsilon(1e-15));
    CHECK(p_sel_single(1, 2) == doctest::Approx(0.75).epsilon(1e-15));
    for (int mu = 1; mu <= 7; ++mu) {
        for (int alpha = 1; alpha <= mu; ++alpha) {
            CHECK(p_sel_single(alpha, mu) == doctest::Approx(elite_slots_by_enumeration(alpha, mu, 1)).epsilon(1e-14));
        }
    }
}

TEST_CASE("selection probabilities increase strictly in alpha") {
    for (int mu = 1; mu <= 40; ++mu) {
        CHECK(p_sel_pair(mu, mu) == 1.0);
        CHECK(p_sel_single(mu, mu) == 1.0);
        for (int alpha = 1; alpha < mu; ++alpha) {
            REQUIRE(p_sel_pair(alpha, mu) < p_sel_pair(alpha + 1, mu));
            REQUIRE(p_sel_single(alpha, mu) < p_sel_single(alpha + 1, mu));
        }
    }
}

TEST_CASE("OneMax swap probability") {
    CHECK(p_swap_onemax(0, 50) == 0.5);
    CHECK(p_swap_onemax(24, 50) == doctest::Approx(2.0 * 49 * 1 / 2500).epsilon(1e-14));
    CHECK_THROWS_AS((void)p_swap_onemax(25, 50), ConfigError);
    CHECK_THROWS_AS((void)p_swap_onemax(-1, 50), ConfigError);
    CHECK_THROWS_AS((void)p_swap_onemax(0, 51), ConfigError);
}

TEST_CASE("Royal Roads swap probability") {
    CHECK(p_swap_rr(0, 0, 32, 8) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(p_swap_rr(3, 3, 32, 8) == doctest::Approx(2.0 * 62 / 2048).epsilon(1e-15));
    CHECK_THROWS_AS((void)p_swap_rr(0, 4, 32, 8), ConfigError);
    CHECK_THROWS_AS((void)p_swap_rr(4, 0, 32, 8), ConfigError);
    for (const auto [blocks, m] : {std::pair{4, 8}, std::pair{3, 6}, std::pair{2, 4}}) {
        for (int k = 0; k < blocks; ++k) {
            for (int l = 0; l < m / 2; ++l) {
                CHECK(p_swap_rr(k, l, blocks * m, m) ==
                      doctest::Approx(rr_swap_by_enumeration(blocks, m, k, l)).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("Poisson normalizing constant") {
    CHECK(poisson_norm_const(4) == doctest::Approx(24 * std::numbers::e / 41).epsilon(1e-15));
    CHECK(std::abs(poisson_norm_const(10) - 1.58198) < 1e-5);
    CHECK(poisson_norm_const(170) == doctest::Approx(std::numbers::e / (std::numbers::e - 1)).epsilon(1e-15));
    CHECK(poisson_norm_const(1) == doctest::Approx(std::numbers::e).epsilon(1e-15));
    CHECK_THROWS_AS((void)poisson_norm_const(0), ConfigError);
    CHECK_THROWS_AS((void)poisson_norm_const(171), ConfigError);
    double total = 0.0;
    for (const double w : elite_weights(EliteDistribution::Poisson1, 10)) {
        total += w;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("at_least_one_success") {
    CHECK(at_least_one_success(0.3, 1) == 0.3);
    CHECK(at_least_one_success(0.3, 3) == doctest::Approx(1 - 0.7 * 0.7 * 0.7).epsilon(1e-15));
    CHECK(at_least_one_success(1.0, 5) == 1.0);
    CHECK(at_least_one_success(1e-12, 2) == doctest::Approx(2e-12 - 1e-24).epsilon(1e-15));
}

TEST_CASE("OneMax 1-Bit-Swap hitting time") {
    CHECK(rel(eta_onemax_1bs_uniform(TheoryQuery::onemax_1bs(50, 1, 2)).value, 112.9801) < 1e-6);
    const auto two = eta_onemax_1bs_uniform(TheoryQuery::onemax_1bs(50, 2, 2));
    CHECK(rel(two.value, 144.6145) < 1e-6);

    // mu = lambda = 2 collapses to (32/25) * sum 1/p_k.
    double reduced = 0.0;
    for (int k = 0; k < 25; ++k) {
        reduced += 1.0 / p_swap_onemax(k, 50);
    }
    CHECK(two.value == doctest::Approx(32.0 / 25.0 * reduced).epsilon(1e-13));

    REQUIRE(two.per_level.size() == 25);
    CHECK(two.per_level.front().k == 0);
    CHECK(two.per_level.back().k == 24);
    CHECK_THROWS_AS((void)eta_onemax_1bs_uniform(TheoryQuery::onemax_rls(50, 2, 2)), UnsupportedQuery);
    CHECK_THROWS_AS((void)eta_onemax_1bs_uniform(TheoryQuery::onemax_1bs(50, 2, 3)), ConfigError);
}

TEST_CASE("OneMax RLS hitting time") {
    CHECK(rel(eta_onemax_rls_uniform(TheoryQuery::onemax_rls(50, 2, 2)).value, 116.2812) < 1e-5);
    const auto single = eta_onemax_rls_uniform(TheoryQuery::onemax_rls(50, 1, 1));
    CHECK(single.value == doctest::Approx(50 * harmonic(25)).epsilon(1e-14));
    CHECK(rel(single.value, 190.7979) < 1e-6);
    CHECK(single.per_level.front().k == 25);
    CHECK(single.per_level.back().k == 49);
    CHECK(eta_onemax_rls_uniform(TheoryQuery::onemax_rls(2, 1, 1)).value == 2.0);
}

TEST_CASE("Royal Roads 1-Bit-Swap hitting time") {
    CHECK(std::abs(eta_rr_1bs_uniform(TheoryQuery::rr_1bs(4, 8, 4, 4)).value - 145) < 0.5);
    CHECK(rel(eta_rr_1bs_uniform(TheoryQuery::rr_1bs(8, 8, 20, 20)).value, 153.46) < 1e-3);

    // K = 1: only the inner sum over l.
    const auto single_block = eta_rr_1bs_uniform(TheoryQuery::rr_1bs(1, 8, 2, 2));
    REQUIRE(single_block.per_level.size() == 4);
    double inner = 0.0;
    for (int l = 0; l < 4; ++l) {
        const double swap = p_swap_rr(0, l, 8, 8);
        const double success = 0.5 * (p_sel_pair(1, 2) * swap + p_sel_pair(2, 2) * swap);
        inner += 1.0 / success;
    }
    CHECK(single_block.value == doctest::Approx(inner).epsilon(1e-13));
}

TEST_CASE("Royal Roads RLS hitting time, Poisson elites") {
    const auto full = eta_rr_rls_poisson(TheoryQuery::rr_rls(4, 8, 4, 4));
    CHECK(rel(full.value, 64.8084) < 0.02);
    CHECK(full.value == doctest::Approx(63.5344).epsilon(1e-5));

    const auto half = eta_rr_rls_poisson(TheoryQuery::rr_rls(4, 8, 4, 4, RrFlipVariant::HalfRate));
    CHECK(half.value == doctest::Approx(119.615).epsilon(1e-5));
    CHECK(rel(half.value, 64.8084) > 0.4);

    // K is a prefactor: the value is K times one block's sum.
    double block = 0.0;
    for (int l = 0; l < 4; ++l) {
        block += full.per_level[static_cast<std::size_t>(l)].expected_generations;
    }
    CHECK(full.value == doctest::Approx(4 * block).epsilon(1e-15));
    REQUIRE(full.per_level.size() == 16);
    CHECK(full.per_level[5].expected_generations == full.per_level[1].expected_generations);

    auto uniform_rls = TheoryQuery::rr_rls(4, 8, 4, 4);
    uniform_rls.distribution = EliteDistribution::Uniform;
    CHECK_THROWS_AS((void)evaluate(uniform_rls), UnsupportedQuery);
}

TEST_CASE("dispatch rejects unsupported combinations") {
    auto q = TheoryQuery::onemax_1bs(50, 2, 2);
    q.distribution = EliteDistribution::Poisson1;
    CHECK_THROWS_AS((void)evaluate(q), UnsupportedQuery);
    auto bad = TheoryQuery::rr_1bs(4, 8, 4, 4);
    bad.n = 33;
    CHECK_THROWS_AS((void)evaluate(bad), ConfigError);
    CHECK_THROWS_AS((void)evaluate(TheoryQuery::onemax_1bs(51, 1, 2)), ConfigError);
}

TEST_CASE("Markov chain oracle") {
    CHECK(markov_hitting_time({MarkovChainSpec::Model::RlsOneMax, 50, 1}) ==
          doctest::Approx(50 * harmonic(25)).epsilon(1e-14));
    double squared = 0.0;
    for (int k = 25; k <= 49; ++k) {
        squared += 1.0 / (1.0 - (k / 50.0) * (k / 50.0));
    }
    const double rls2 = markov_hitting_time({MarkovChainSpec::Model::RlsOneMax, 50, 2});
    CHECK(rls2 == doctest::Approx(squared).epsilon(1e-14));
    CHECK(std::abs(rls2 - 102.63) < 0.01);

    const double pair = markov_hitting_time({MarkovChainSpec::Model::PairSwapOneMax, 50, 2});
    CHECK(pair == eta_onemax_1bs_uniform(TheoryQuery::onemax_1bs(50, 1, 2)).value);
    CHECK(markov_hitting_time({MarkovChainSpec::Model::RlsOneMax, 50, 1}) ==
          eta_onemax_rls_uniform(TheoryQuery::onemax_rls(50, 1, 1)).value);
    CHECK(rel(markov_hitting_time({MarkovChainSpec::Model::RlsOneMax, 50, 2}),
              eta_onemax_rls_uniform(TheoryQuery::onemax_rls(50, 1, 2)).value) < 1e-12);

    CHECK_THROWS_AS((void)markov_hitting_time(std::vector<double>{0.5, 0.0}), DivergenceError);
    CHECK(markov_hitting_time(std::vector<double>{}) == 0.0);
}

TEST_CASE("hitting-time properties over parameter ranges") {
    for (int n : {2, 10, 50, 100}) {
        for (int mu = 1; mu <= 8; ++mu) {
            double previous_1bs = INFINITY;
            double previous_rls = INFINITY;
            for (int lambda = 2; lambda <= 16; lambda += 2) {
                const auto one = eta_onemax_1bs_uniform(TheoryQuery::onemax_1bs(n, mu, lambda));
                const auto rls = eta_onemax_rls_uniform(TheoryQuery::onemax_rls(n, mu, lambda));
                REQUIRE(one.value <= previous_1bs);
                REQUIRE(rls.value <= previous_rls);
                previous_1bs = one.value;
                previous_rls = rls.value;
                for (const auto* r : {&one, &rls}) {
                    double sum = 0.0;
                    for (const auto& t : r->per_level) {
                        REQUIRE(t.expected_generations >= 1.0);
                        REQUIRE(std::isfinite(t.expected_generations));
                        sum += t.expected_generations;
                    }
                    REQUIRE(r->value == doctest::Approx(sum).epsilon(1e-12));
                    REQUIRE(r->value >= static_cast<double>(r->per_level.size()));
                }
            }
        }
    }
}

TEST_CASE("a larger population can slow OneMax down") {
    const double one = eta_onemax_1bs_uniform(TheoryQuery::onemax_1bs(50, 1, 2)).value;
    const double two = eta_onemax_1bs_uniform(TheoryQuery::onemax_1bs(50, 2, 2)).value;
    CHECK(two > one);
}
