// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "bitswap/engine.hpp"
#include "bitswap/errors.hpp"
#include "bitswap/harness.hpp"
#include "bitswap/operators.hpp"
#include "bitswap/rng.hpp"
#include "bitswap/theory.hpp"
#include "bitswap/theory_exact.hpp"

using namespace bitswap;
using namespace bitswap::theory;

namespace {

using Clock = std::chrono::steady_clock;

double rel(double value, double ref) { return std::abs(value - ref) / std::abs(ref); }

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failures for one criterion; the first few are echoed.
class Check {
  public:
    void expect(bool ok, const std::string& what) {
        if (!ok) {
            if (failures_ < 8) {
                std::printf("    %s\n", what.c_str());
            }
            ++failures_;
        }
    }
    int failures() const { return failures_; }

  private:
    int failures_ = 0;
};

std::string fmt(const char* pattern, double a, double b, double c) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

TheoryQuery query_for(const harness::ReferenceCell& c) {
    if (c.fitness == "rr") {
        return c.algorithm == "rls" ? TheoryQuery::rr_rls(*c.blocks, *c.block_length, c.mu, c.eval_lambda)
                                    : TheoryQuery::rr_1bs(*c.blocks, *c.block_length, c.mu, c.eval_lambda);
    }
    return c.algorithm == "rls" ? TheoryQuery::onemax_rls(c.n, c.mu, c.eval_lambda)
                                : TheoryQuery::onemax_1bs(c.n, c.mu, c.eval_lambda);
}

std::string cell_name(const harness::ReferenceCell& c) {
    std::ostringstream s;
    s << "table" << c.table << " row " << c.row << ' ' << c.algorithm << " n=" << c.n << " mu=" << c.mu
      << " lambda=" << c.eval_lambda;
    return s.str();
}

// Table cells of one algorithm checked against a relative tolerance.
void check_table(Check& check, int table, const std::string& algorithm, double tolerance, int min_mu,
                 const std::function<TheoryQuery(const harness::ReferenceCell&)>& make, double* worst) {
    for (const auto& c : harness::reference_cells(table)) {
        if (c.algorithm != algorithm || c.mu < min_mu) {
            continue;
        }
        const double value = evaluate(make(c)).value;
        const double dev = rel(value, c.paper_theory);
        *worst = std::max(*worst, dev);
        check.expect(dev <= tolerance,
                     cell_name(c) + fmt(": computed %.6g, printed %.6g, rel %.3g", value, c.paper_theory, dev));
    }
}

double harmonic(int m) {
    double h = 0.0;
    for (int j = m; j >= 1; --j) {
        h += 1.0 / j;
    }
    return h;
}

bool ac1() {
    Check check;
    const auto start = Clock::now();
    double worst = 0.0;
    check_table(check, 2, "1bs", 1e-4, 1, query_for, &worst);
    const std::map<std::tuple<int, int, int>, double> anchors{
        {{50, 1, 2}, 112.9801}, {{50, 2, 2}, 144.6145}, {{100, 4, 4}, 215.2445}, {{1000, 10, 10}, 1616.4433}};
    for (const auto& [key, ref] : anchors) {
        const auto [n, mu, lambda] = key;
        const double v = eta_onemax_1bs_uniform(TheoryQuery::onemax_1bs(n, mu, lambda)).value;
        check.expect(rel(v, ref) <= 1e-4, fmt("anchor n=%g: %.8g vs %.8g", n, v, ref));
    }
    const double elapsed = seconds_since(start);
    check.expect(elapsed < 1.0, fmt("runtime %.3g s (limit %g s)%.0f", elapsed, 1.0, 0));
    std::printf("    worst relative deviation %.3g, %.3g s\n", worst, elapsed);
    return check.failures() == 0;
}

bool ac2() {
    Check check;
    double worst = 0.0;
    check_table(check, 2, "rls", 1e-3, 2, query_for, &worst);
    const std::map<std::tuple<int, int, int>, double> anchors{
        {{50, 2, 2}, 116.2812}, {{100, 8, 8}, 108.826}, {{1000, 4, 4}, 2413.0033}};
    for (const auto& [key, ref] : anchors) {
        const auto [n, mu, lambda] = key;
        const double v = eta_onemax_rls_uniform(TheoryQuery::onemax_rls(n, mu, lambda)).value;
        check.expect(rel(v, ref) <= 1e-3, fmt("anchor n=%g: %.8g vs %.8g", n, v, ref));
    }
    double worst_single = 0.0;
    for (const auto& [n, ref] : std::vector<std::pair<int, double>>{{50, 190.7979}, {100, 449.9205}, {1000, 6792.8}}) {
        const double v = eta_onemax_rls_uniform(TheoryQuery::onemax_rls(n, 1, 1)).value;
        worst_single = std::max(worst_single, rel(v, ref));
        check.expect(rel(v, ref) <= 1e-3, fmt("mu=1 n=%g: %.8g vs %.8g", n, v, ref));
    }
    const double oracle = 50 * harmonic(25);
    const double v50 = eta_onemax_rls_uniform(TheoryQuery::onemax_rls(50, 1, 1)).value;
    check.expect(rel(v50, oracle) <= 1e-12, fmt("harmonic oracle: %.12g vs %.12g%.0f", v50, oracle, 0));
    std::printf("    worst relative deviation mu>=2 %.3g, mu=1 %.3g\n", worst, worst_single);
    return check.failures() == 0;
}

bool ac3() {
    Check check;
    const auto start = Clock::now();
    double worst = 0.0;
    check_table(check, 3, "1bs", 1e-2, 1, query_for, &worst);
    const std::map<std::tuple<int, int, int, int>, double> anchors{
        {{4, 8, 4, 4}, 145}, {{8, 8, 20, 20}, 153.46}, {{16, 8, 30, 30}, 401.99}};
    for (const auto& [key, ref] : anchors) {
        const auto [blocks, m, mu, lambda] = key;
        const double v = eta_rr_1bs_uniform(TheoryQuery::rr_1bs(blocks, m, mu, lambda)).value;
        check.expect(rel(v, ref) <= 1e-2, fmt("anchor K=%g: %.8g vs %.8g", blocks, v, ref));
    }
    const double elapsed = seconds_since(start);
    check.expect(elapsed < 1.0, fmt("runtime %.3g s (limit %g s)%.0f", elapsed, 1.0, 0));
    std::printf("    worst relative deviation %.3g, %.3g s\n", worst, elapsed);
    return check.failures() == 0;
}

bool ac4() {
    Check check;
    double worst = 0.0;
    check_table(check, 3, "rls", 2e-2, 1, query_for, &worst);
    const double full = eta_rr_rls_poisson(TheoryQuery::rr_rls(4, 8, 4, 4)).value;
    const double half = eta_rr_rls_poisson(TheoryQuery::rr_rls(4, 8, 4, 4, RrFlipVariant::HalfRate)).value;
    check.expect(rel(full, 64.8084) <= 2e-2, fmt("anchor full rate %.6g vs %.6g%.0f", full, 64.8084, 0));
    check.expect(rel(half, 64.8084) > 0.4, fmt("half rate %.6g too close to %.6g%.0f", half, 64.8084, 0));
    const double c4 = poisson_norm_const(4);
    check.expect(rel(c4, 24 * std::exp(1.0) / 41) <= 1e-15, fmt("c(4) = %.17g vs %.17g%.0f", c4, 24 * std::exp(1.0) / 41, 0));
    const double c10 = poisson_norm_const(10);
    check.expect(std::abs(c10 - 1.58198) <= 1e-5, fmt("c(10) = %.8g%.0f%.0f", c10, 0, 0));
    std::printf("    worst relative deviation %.3g; anchor full %.6g, half %.6g\n", worst, full, half);
    return check.failures() == 0;
}

std::vector<TheoryQuery> oracle_queries() {
    std::vector<TheoryQuery> out;
    const auto keep = [&out](const TheoryQuery& q) {
        try {
            validate(q);
            out.push_back(q);
        } catch (const std::invalid_argument&) {
        }
    };
    for (int mu = 1; mu <= 4; ++mu) {
        for (int lambda = 1; lambda <= 4; ++lambda) {
            for (int n = 2; n <= 64; n += 2) {
                keep(TheoryQuery::onemax_1bs(n, mu, lambda));
                keep(TheoryQuery::onemax_rls(n, mu, lambda));
            }
            for (int m = 2; m <= 64; m += 2) {
                for (int blocks = 1; blocks * m <= 64; ++blocks) {
                    keep(TheoryQuery::rr_1bs(blocks, m, mu, lambda));
                    keep(TheoryQuery::rr_rls(blocks, m, mu, lambda));
                    keep(TheoryQuery::rr_rls(blocks, m, mu, lambda, RrFlipVariant::HalfRate));
                }
            }
        }
    }
    return out;
}

bool ac5() {
    Check check;
    const auto start = Clock::now();
    const auto queries = oracle_queries();
    double worst = 0.0;
    for (const auto& q : queries) {
        const double value = evaluate(q).value;
        const double exact = to_double(eta_exact_rational(q));
        worst = std::max(worst, rel(value, exact));
        check.expect(rel(value, exact) <= 1e-10, q.describe() + fmt(": %.17g vs exact %.17g%.0f", value, exact, 0));
    }
    int chains = 0;
    for (int n = 2; n <= 64; n += 2) {
        const double pair = markov_hitting_time({MarkovChainSpec::Model::PairSwapOneMax, n, 2});
        const double rls = markov_hitting_time({MarkovChainSpec::Model::RlsOneMax, n, 1});
        check.expect(pair == evaluate(TheoryQuery::onemax_1bs(n, 1, 2)).value, fmt("pair chain differs at n=%g%.0f%.0f", n, 0, 0));
        check.expect(rls == evaluate(TheoryQuery::onemax_rls(n, 1, 1)).value, fmt("rls chain differs at n=%g%.0f%.0f", n, 0, 0));
        for (int lambda = 2; lambda <= 4; ++lambda) {
            const double chain = markov_hitting_time({MarkovChainSpec::Model::RlsOneMax, n, lambda});
            const double eta = evaluate(TheoryQuery::onemax_rls(n, 1, lambda)).value;
            check.expect(rel(chain, eta) <= 1e-12, fmt("rls chain n=%g: %.17g vs %.17g", n, chain, eta));
        }
        chains += 5;
    }
    const double elapsed = seconds_since(start);
    check.expect(elapsed < 10.0, fmt("runtime %.3g s (limit %g s)%.0f", elapsed, 10.0, 0));
    std::printf("    %zu queries, %d chains, worst relative deviation %.3g, %.3g s\n", queries.size(), chains, worst,
                elapsed);
    return check.failures() == 0;
}

bool ac6() {
    Check check;
    const auto start = Clock::now();
    struct Case {
        const char* name;
        Algorithm algorithm;
        int lambda;
        double reference;
    };
    for (const auto& c : {Case{"1bs mu=1 lambda=2", Algorithm::bit_swap(1), 2, 112.9801},
                          Case{"rls mu=1 lambda=1", Algorithm::rls(), 1, 50 * harmonic(25)}}) {
        harness::ExperimentSpec spec;
        spec.ea.n = 50;
        spec.ea.mu = 1;
        spec.ea.lambda = c.lambda;
        spec.ea.algorithm = c.algorithm;
        spec.ea.init = InitPolicy::HalfOnes;
        spec.ea.max_generations = 20000;
        spec.ea.seed = 20240601;
        spec.replications = 500;
        const auto stats = harness::run_experiment(spec, 0);
        const double mean = stats.mean_tau.value_or(0.0);
        check.expect(stats.censored == 0, std::string(c.name) + ": censored runs");
        check.expect(rel(mean, c.reference) < 0.05,
                     std::string(c.name) + fmt(": mean %.6g vs %.6g (rel %.3g)", mean, c.reference, rel(mean, c.reference)));
        std::printf("    %s: mean %.6g +- %.3g over %d runs, reference %.6g\n", c.name, mean, stats.ci95,
                    stats.converged, c.reference);
    }
    const double elapsed = seconds_since(start);
    check.expect(elapsed < 60.0, fmt("runtime %.3g s (limit %g s)%.0f", elapsed, 60.0, 0));
    return check.failures() == 0;
}

bool ac7() {
    Check check;
    Rng rng(7);
    const auto kind = FitnessKind::one_max();

    // (a) ones conservation under k-Bit-Swap.
    for (int trial = 0; trial < 100000; ++trial) {
        const int n = 1 + static_cast<int>(rng.index(64));
        const int k = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(std::min(4, n))));
        BitString a(static_cast<std::size_t>(n));
        BitString b(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            a.set(static_cast<std::size_t>(i), rng.coin());
            b.set(static_cast<std::size_t>(i), rng.coin());
        }
        const Individual x(a, kind);
        const Individual y(b, kind);
        const auto [c, d] = k_bit_swap(x, y, k, kind, rng);
        if (c.fitness() + d.fitness() != x.fitness() + y.fitness()) {
            check.expect(false, "ones not conserved");
        }
    }

    // (b) improving-swap count by enumeration.
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.index(63));
        BitString a(static_cast<std::size_t>(n));
        BitString b(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            a.set(static_cast<std::size_t>(i), rng.coin());
            b.set(static_cast<std::size_t>(i), rng.coin());
        }
        const long long ca = static_cast<long long>(a.count());
        const long long cb = static_cast<long long>(b.count());
        long long improving = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const bool ai = a.get(static_cast<std::size_t>(i));
                const bool bj = b.get(static_cast<std::size_t>(j));
                // a[i] takes b[j] and b[j] takes a[i]: either child gains a one.
                improving += (!ai && bj) ? 1 : 0;
                improving += (ai && !bj) ? 1 : 0;
            }
        }
        check.expect(improving == ca * (n - cb) + cb * (n - ca), "improving-swap count mismatch");
    }

    // (c) elite-pair selection frequency.
    for (const auto [mu, alpha] : {std::pair{4, 1}, std::pair{4, 2}, std::pair{10, 3}}) {
        Population pop;
        for (int i = 0; i < mu; ++i) {
            pop.emplace_back(i < alpha ? BitString::ones(8) : BitString::zeros(8), kind);
        }
        const int trials = 100000;
        int hits = 0;
        for (int t = 0; t < trials; ++t) {
            const bool first = tournament_select(pop, rng).fitness() == 8;
            const bool second = tournament_select(pop, rng).fitness() == 8;
            hits += (first && second) ? 1 : 0;
        }
        const double p = p_sel_pair(alpha, mu);
        const double freq = static_cast<double>(hits) / trials;
        const double se = std::sqrt(p * (1 - p) / trials);
        check.expect(std::abs(freq - p) <= 3 * se, fmt("mu/alpha pair: frequency %.5f vs %.5f (se %.5f)", freq, p, se));
        std::printf("    mu=%d alpha=%d: frequency %.5f, expected %.5f, %.2f se\n", mu, alpha, freq, p,
                    std::abs(freq - p) / se);
    }

    // (d) best fitness never decreases along a trace.
    int traces = 0;
    for (const auto& algorithm : {Algorithm::bit_swap(1), Algorithm::bit_swap(3), Algorithm::rls()}) {
        for (const bool rr : {false, true}) {
            EAConfig c;
            c.n = 32;
            c.mu = 4;
            c.lambda = 4;
            c.algorithm = algorithm;
            c.fitness = rr ? FitnessKind::royal_roads(4, 8) : FitnessKind::one_max();
            c.max_generations = 3000;
            for (const auto& record : run_replications(c, 20, 0)) {
                ++traces;
                for (std::size_t i = 1; i < record.trace.size(); ++i) {
                    if (record.trace[i].best_fitness < record.trace[i - 1].best_fitness) {
                        check.expect(false, "best fitness decreased");
                    }
                }
            }
        }
    }
    std::printf("    %d traces checked\n", traces);
    return check.failures() == 0;
}

bool ac8() {
    Check check;
    // OneMax 1-Bit-Swap, n = 50: rise at mu = 2, fall by mu = 4, in both computed and printed values.
    std::map<int, double> computed;
    std::map<int, double> printed;
    for (const auto& c : harness::reference_cells(2)) {
        if (c.algorithm == "1bs" && c.n == 50) {
            computed[c.mu] = evaluate(query_for(c)).value;
            printed[c.mu] = c.paper_theory;
        }
    }
    for (auto* series : {&computed, &printed}) {
        auto& s = *series;
        check.expect(s[2] > s[1], "no rise from mu=1 to mu=2");
        check.expect(s[4] < s[2], "no fall from mu=2 to mu=4");
    }
    std::printf("    OneMax n=50: mu=1 %.6g, mu=2 %.6g, mu=4 %.6g\n", computed[1], computed[2], computed[4]);

    // Royal Roads: strictly decreasing in mu within each (algorithm, K, M) group.
    std::map<std::tuple<std::string, int, int>, std::vector<std::pair<double, double>>> groups;
    for (const auto& c : harness::reference_cells(3)) {
        groups[{c.algorithm, *c.blocks, *c.block_length}].emplace_back(evaluate(query_for(c)).value, c.paper_theory);
    }
    for (const auto& [key, values] : groups) {
        for (std::size_t i = 1; i < values.size(); ++i) {
            const std::string name = std::get<0>(key) + " K=" + std::to_string(std::get<1>(key));
            check.expect(values[i].first < values[i - 1].first, name + ": computed not decreasing");
            check.expect(values[i].second < values[i - 1].second, name + ": printed not decreasing");
        }
    }
    std::printf("    %zu Royal Roads groups checked\n", groups.size());
    return check.failures() == 0;
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, bool (*)()>> criteria{
        {"AC1 OneMax 1-Bit-Swap theory column", ac1},
        {"AC2 OneMax RLS theory column", ac2},
        {"AC3 Royal Roads 1-Bit-Swap theory column", ac3},
        {"AC4 Royal Roads RLS theory column (full rate)", ac4},
        {"AC5 floating, exact and chain oracles agree", ac5},
        {"AC6 simulation matches exact models", ac6},
        {"AC7 operator properties", ac7},
        {"AC8 qualitative orderings", ac8},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            std::printf("    exception: %s\n", e.what());
        }
        std::printf("%s %s\n", ok ? "PASS" : "FAIL", name);
        std::fflush(stdout);
        failed += ok ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
