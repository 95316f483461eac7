#include "bitswap/operators.hpp"

#include <algorithm>
#include <numeric>

#include "bitswap/errors.hpp"

namespace bitswap {

int max_fitness(std::span<const Individual> members) {
    int best = 0;
    for (const auto& m : members) {
        best = std::max(best, m.fitness());
    }
    return best;
}

int elite_count(std::span<const Individual> members) {
    const int best = max_fitness(members);
    return static_cast<int>(
        std::count_if(members.begin(), members.end(), [best](const Individual& m) { return m.fitness() == best; }));
}

Individual tournament_select(std::span<const Individual> pop, Rng& rng) {
    if (pop.empty()) {
        throw ConfigError("tournament selection on an empty population");
    }
    const auto& x = pop[rng.index(pop.size())];
    const auto& y = pop[rng.index(pop.size())];
    if (x.fitness() > y.fitness()) {
        return x;
    }
    if (y.fitness() > x.fitness()) {
        return y;
    }
    return rng.coin() ? x : y;
}

std::pair<Individual, Individual> k_bit_swap(const Individual& a, const Individual& b, int k,
                                             const FitnessKind& kind, Rng& rng) {
    const std::size_t n = a.size();
    if (b.size() != n) {
        throw ConfigError("k-Bit-Swap parents differ in length");
    }
    if (k < 1 || static_cast<std::size_t>(k) > n) {
        throw ConfigError("k-Bit-Swap needs 1 <= k <= n");
    }
    BitString ga = a.genome();
    BitString gb = b.genome();
    for (int s = 0; s < k; ++s) {
        const std::size_t i = rng.index(n);
        const std::size_t j = rng.index(n);
        const bool bit_a = ga.get(i);
        ga.set(i, gb.get(j));
        gb.set(j, bit_a);
    }
    return {Individual(std::move(ga), kind), Individual(std::move(gb), kind)};
}

Individual point_flip(const Individual& a, const FitnessKind& kind, Rng& rng) {
    BitString g = a.genome();
    g.flip(rng.index(g.size()));
    return Individual(std::move(g), kind);
}

Population elitist_replace(const Population& pop, const RecombinationPool& pool, ReplacePolicy policy,
                           ElitePolicy elites) {
    const std::size_t mu = pop.size();
    if (pool.empty()) {
        return pop;
    }
    const int best_current = max_fitness(pop);

    std::vector<std::size_t> ranked(pool.size());
    std::iota(ranked.begin(), ranked.end(), std::size_t{0});
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&pool](std::size_t l, std::size_t r) { return pool[l].fitness() > pool[r].fitness(); });
    if (policy == ReplacePolicy::CloneBest) {
        std::fill(ranked.begin(), ranked.end(), ranked.front());
    }

    Population next;
    next.reserve(mu);

    // Step 1: strict improvers. Under CloneBest only a single copy qualifies here.
    std::size_t admitted = 0;
    const std::size_t improver_cap = policy == ReplacePolicy::CloneBest ? 1 : ranked.size();
    while (admitted < improver_cap && next.size() < mu && pool[ranked[admitted]].fitness() > best_current) {
        next.push_back(pool[ranked[admitted]]);
        ++admitted;
    }

    // Step 2: alpha elite slots, taken by tied offspring first under Turnover.
    const auto alpha = static_cast<std::size_t>(elite_count(pop));
    std::size_t elite_slots = 0;
    if (elites == ElitePolicy::Turnover) {
        while (elite_slots < alpha && next.size() < mu && admitted < ranked.size() &&
               pool[ranked[admitted]].fitness() == best_current) {
            next.push_back(pool[ranked[admitted]]);
            ++admitted;
            ++elite_slots;
        }
    }
    for (const auto& m : pop) {
        if (next.size() == mu || elite_slots == alpha) {
            break;
        }
        if (m.fitness() == best_current) {
            next.push_back(m);
            ++elite_slots;
        }
    }

    // Step 3: fill from the ranked pool, skipping admitted entries on the first pass.
    std::size_t cursor = admitted;
    while (next.size() < mu) {
        if (cursor == ranked.size()) {
            cursor = 0;
        }
        next.push_back(pool[ranked[cursor]]);
        ++cursor;
    }
    return next;
}

} // namespace bitswap
