#include "bitswap/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "bitswap/errors.hpp"

namespace bitswap {

void EAConfig::validate() const {
    if (mu < 1) {
        throw ConfigError("population size mu must be >= 1");
    }
    if (lambda < 1) {
        throw ConfigError("pool size lambda must be >= 1");
    }
    if (n < 1) {
        throw ConfigError("chromosome length n must be >= 1");
    }
    if (max_generations < 0) {
        throw ConfigError("max_generations must be >= 0");
    }
    fitness.check_length(static_cast<std::size_t>(n));
    if (algorithm.kind == AlgorithmKind::KBitSwap) {
        if (lambda % 2 != 0) {
            throw ConfigError("k-Bit-Swap pairs the pool, so lambda must be even");
        }
        if (algorithm.swaps < 1 || algorithm.swaps > n) {
            throw ConfigError("swap count k must satisfy 1 <= k <= n");
        }
    }
    if (init == InitPolicy::HalfOnes && (n < 2 || n % 2 != 0)) {
        throw ConfigError("half-ones initialization needs an even n >= 2");
    }
    if (init == InitPolicy::HalfOnesPerBlock && !fitness.is_royal_roads()) {
        throw ConfigError("per-block half-ones initialization needs Royal Roads fitness");
    }
}

namespace {

// Sets `ones` bits at distinct random positions among [first, first + length).
void scatter_ones(BitString& g, std::size_t first, std::size_t length, std::size_t ones, Rng& rng) {
    std::vector<std::size_t> positions(length);
    std::iota(positions.begin(), positions.end(), first);
    // Partial Fisher-Yates: the first `ones` entries end up a uniform random subset.
    for (std::size_t i = 0; i < ones; ++i) {
        const std::size_t j = i + rng.index(length - i);
        std::swap(positions[i], positions[j]);
        g.set(positions[i], true);
    }
}

TraceEntry observe(const Population& pop, int generation) {
    const int best = max_fitness(pop);
    int alpha = 0;
    int best_aux = 0;
    for (const auto& m : pop) {
        if (m.fitness() == best) {
            ++alpha;
            best_aux = std::max(best_aux, m.aux());
        }
    }
    return {generation, best, alpha, best_aux};
}

} // namespace

Population initialize_population(const EAConfig& config, Rng& rng) {
    const auto n = static_cast<std::size_t>(config.n);
    Population pop;
    pop.reserve(static_cast<std::size_t>(config.mu));
    for (int i = 0; i < config.mu; ++i) {
        BitString g(n);
        switch (config.init) {
        case InitPolicy::RandomUniform:
            for (std::size_t b = 0; b < n; ++b) {
                g.set(b, rng.coin());
            }
            break;
        case InitPolicy::HalfOnes:
            scatter_ones(g, 0, n, n / 2, rng);
            break;
        case InitPolicy::HalfOnesPerBlock: {
            const auto m = static_cast<std::size_t>(config.fitness.block_length());
            for (int block = 0; block < config.fitness.blocks(); ++block) {
                scatter_ones(g, static_cast<std::size_t>(block) * m, m, m / 2, rng);
            }
            break;
        }
        }
        pop.emplace_back(std::move(g), config.fitness);
    }
    return pop;
}

Population step(const Population& pop, const EAConfig& config, Rng& rng) {
    RecombinationPool pool;
    pool.reserve(static_cast<std::size_t>(config.lambda));
    for (int i = 0; i < config.lambda; ++i) {
        pool.push_back(tournament_select(pop, rng));
    }
    if (config.algorithm.kind == AlgorithmKind::KBitSwap) {
        for (std::size_t i = 0; i + 1 < pool.size(); i += 2) {
            auto [a, b] = k_bit_swap(pool[i], pool[i + 1], config.algorithm.swaps, config.fitness, rng);
            pool[i] = std::move(a);
            pool[i + 1] = std::move(b);
        }
    } else {
        for (auto& slot : pool) {
            slot = point_flip(slot, config.fitness, rng);
        }
    }
    return elitist_replace(pop, pool, config.replace, resolved_elites(config));
}

namespace {

RunRecord run_loop(const EAConfig& config, Population pop, Rng& rng) {
    RunRecord record;
    record.seed = config.seed;
    record.trace.push_back(observe(pop, 0));
    int generation = 0;
    while (record.trace.back().best_fitness != config.n && generation < config.max_generations) {
        pop = step(pop, config, rng);
        ++generation;
        record.trace.push_back(observe(pop, generation));
    }
    if (record.trace.back().best_fitness == config.n) {
        record.hit_generation = generation;
    }
    return record;
}

} // namespace

RunRecord run(const EAConfig& config) {
    config.validate();
    Rng rng(config.seed);
    Population pop = initialize_population(config, rng);
    return run_loop(config, std::move(pop), rng);
}

RunRecord run(const EAConfig& config, Population initial) {
    config.validate();
    if (initial.size() != static_cast<std::size_t>(config.mu)) {
        throw ConfigError("initial population size differs from mu");
    }
    for (const auto& m : initial) {
        if (m.size() != static_cast<std::size_t>(config.n)) {
            throw ConfigError("initial member length differs from n");
        }
    }
    Rng rng(config.seed);
    return run_loop(config, std::move(initial), rng);
}

std::vector<RunRecord> run_replications(const EAConfig& config, int count, unsigned threads) {
    config.validate();
    if (count < 1) {
        throw ConfigError("replication count must be >= 1");
    }
    std::vector<RunRecord> records(static_cast<std::size_t>(count));
    auto run_index = [&config, &records](std::size_t i) {
        EAConfig c = config;
        c.seed = derive_seed(config.seed, i);
        records[i] = run(c);
    };

    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < records.size(); ++i) {
            run_index(i);
        }
        return records;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < records.size(); i = next++) {
                    try {
                        run_index(i);
                    } catch (...) {
                        const std::lock_guard lock(failure_mutex);
                        failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return records;
}

std::string to_string(AlgorithmKind kind) { return kind == AlgorithmKind::KBitSwap ? "1bs" : "rls"; }

std::string to_string(InitPolicy init) {
    switch (init) {
    case InitPolicy::RandomUniform:
        return "random";
    case InitPolicy::HalfOnes:
        return "half";
    case InitPolicy::HalfOnesPerBlock:
        return "half-block";
    }
    return "random";
}

std::string to_string(ReplacePolicy policy) { return policy == ReplacePolicy::Ranked ? "ranked" : "clone-best"; }

std::string to_string(ElitePolicy policy) { return policy == ElitePolicy::Keep ? "keep" : "turnover"; }

ElitePolicy resolved_elites(const EAConfig& config) {
    if (config.elites) {
        return *config.elites;
    }
    return config.fitness.is_royal_roads() ? ElitePolicy::Turnover : ElitePolicy::Keep;
}

} // namespace bitswap
