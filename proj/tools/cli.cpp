#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "bitswap/errors.hpp"
#include "bitswap/harness.hpp"
#include "bitswap/io.hpp"
#include "bitswap/theory.hpp"

namespace bitswap::cli {

namespace {

struct GlobalOptions {
    std::uint64_t seed = 1;
    int reps = 50;
    int max_gens = 2000;
    std::string out_path;
    std::string format = "csv";
    unsigned threads = 0;
};

struct ProblemOptions {
    std::string alg = "1bs";
    std::string fitness = "onemax";
    int n = 0;
    int mu = 1;
    int lambda = 2;
    int blocks = 0;
    int block_length = 0;
};

std::string fmt10(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

void add_problem_flags(CLI::App* cmd, ProblemOptions& p) {
    cmd->add_option("--alg", p.alg, "algorithm: 1bs (k-Bit-Swap EA) or rls [TheoryQuery.algorithm / EAConfig.algorithm]")
        ->check(CLI::IsMember({"1bs", "rls"}));
    cmd->add_option("--fitness", p.fitness, "fitness: onemax or rr [FitnessKind]")
        ->check(CLI::IsMember({"onemax", "rr"}));
    cmd->add_option("--n", p.n, "chromosome length; defaults to K*M for rr [n]");
    cmd->add_option("--mu", p.mu, "population size [mu]");
    cmd->add_option("--lambda", p.lambda, "recombination pool size [lambda]");
    cmd->add_option("--K", p.blocks, "Royal Roads block count [FitnessKind.K]");
    cmd->add_option("--M", p.block_length, "Royal Roads block length in bits [FitnessKind.M]");
}

int resolved_n(const ProblemOptions& p) {
    if (p.fitness == "rr") {
        if (p.blocks < 1 || p.block_length < 1) {
            throw ConfigError("--fitness rr needs --K and --M");
        }
        if (p.n == 0) {
            return p.blocks * p.block_length;
        }
        return p.n;
    }
    if (p.n == 0) {
        throw ConfigError("--n is required for onemax");
    }
    return p.n;
}

std::ostream& select_output(const GlobalOptions& g, std::ostream& out, std::ofstream& file) {
    if (g.out_path.empty()) {
        return out;
    }
    file.open(g.out_path);
    if (!file) {
        throw ConfigError("cannot write '" + g.out_path + "'");
    }
    return file;
}

void emit_report(const harness::Report& report, const GlobalOptions& g, std::ostream& out) {
    std::ofstream file;
    std::ostream& dest = select_output(g, out, file);
    if (g.format == "json") {
        dest << io::report_to_json(report).dump(2) << '\n';
    } else {
        io::write_csv(report, dest);
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"bitswap: hitting-time theory and simulation for elitist k-Bit-Swap EA and RLS on OneMax / Royal Roads",
                 "bitswap"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--seed", g.seed, "base seed; replication i uses derive_seed(seed, i) [EAConfig.seed]")
        ->envname("BITSWAP_SEED");
    app.add_option("--reps", g.reps, "replications per cell [ExperimentSpec.replications]");
    app.add_option("--max-gens", g.max_gens, "generation cap per run [EAConfig.max_generations]");
    app.add_option("--out", g.out_path, "write output to this file instead of stdout");
    app.add_option("--format", g.format, "output format: csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", g.threads, "worker threads for replications (0 = all cores)");

    // theory
    auto* theory_cmd = app.add_subcommand("theory", "evaluate an expected first hitting time and its per-level terms");
    ProblemOptions tp;
    add_problem_flags(theory_cmd, tp);
    std::string dist;
    std::string rr_flip = "full";
    theory_cmd
        ->add_option("--dist", dist,
                     "elite-count distribution: uniform or poisson1; default poisson1 for rls on rr, else uniform "
                     "[TheoryQuery.elite_distribution]")
        ->check(CLI::IsMember({"uniform", "poisson1"}));
    theory_cmd
        ->add_option("--rr-flip", rr_flip,
                     "RLS on rr flip rate: full = (M-2l)/n, half = (M-2l)/(2n) [TheoryQuery.rr_flip_variant]")
        ->check(CLI::IsMember({"full", "half"}));

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "run replicated simulations of one configuration");
    ProblemOptions sp;
    add_problem_flags(sim_cmd, sp);
    int swaps = 1;
    std::string init = "random";
    std::string replace = "ranked";
    std::string elites;
    std::string file;
    std::string label;
    bool with_theory = false;
    sim_cmd->add_option("--k", swaps, "swaps per k-Bit-Swap application [EAConfig.algorithm.k]");
    sim_cmd->add_option("--init", init, "initialization: random, half or half-block [EAConfig.init]")
        ->check(CLI::IsMember({"random", "half", "half-block"}));
    sim_cmd->add_option("--replace", replace, "replacement fill: ranked or clone-best [EAConfig.replace]")
        ->check(CLI::IsMember({"ranked", "clone-best"}));
    sim_cmd->add_option("--elites", elites,
                        "equal-fitness offspring in elite slots: keep or turnover (default keep on onemax, "
                        "turnover on rr) [EAConfig.elites]")
        ->check(CLI::IsMember({"keep", "turnover"}));
    sim_cmd->add_option("--label", label, "free-text label [ExperimentSpec.label]");
    sim_cmd->add_flag("--theory", with_theory, "attach the matching theory value [ExperimentSpec.theory]");
    sim_cmd->add_option("--file", file, "experiment file; problem flags are ignored when given [ExperimentSpec]")
        ->check(CLI::ExistingFile);

    // reproduce
    auto* rep_cmd = app.add_subcommand("reproduce", "compare theory and simulation against a published table");
    int table = 2;
    std::string scale = "desk";
    std::string rep_init = "random";
    std::string rep_elites;
    rep_cmd->add_option("--table", table, "2 = OneMax, 3 = Royal Roads")->required()->check(CLI::IsMember({2, 3}));
    rep_cmd->add_option("--scale", scale, "desk: simulate n <= 128 only; full: simulate every cell")
        ->check(CLI::IsMember({"desk", "full"}));
    rep_cmd->add_option("--init", rep_init, "initialization for simulated cells [EAConfig.init]")
        ->check(CLI::IsMember({"random", "half", "half-block"}));
    rep_cmd->add_option("--elites", rep_elites, "keep or turnover for simulated cells [EAConfig.elites]")
        ->check(CLI::IsMember({"keep", "turnover"}));

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a parameter grid from a sweep file");
    std::string sweep_file;
    sweep_cmd->add_option("--file", sweep_file, "sweep file [SweepGrid]")->required()->check(CLI::ExistingFile);

    std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(argv_rest.begin(), argv_rest.end());
    try {
        app.parse(argv_rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitConfig;
    }

    try {
        if (theory_cmd->parsed()) {
            theory::TheoryQuery q;
            q.algorithm = tp.alg == "rls" ? theory::TheoryAlgorithm::Rls : theory::TheoryAlgorithm::BitSwap1;
            q.royal_roads = tp.fitness == "rr";
            q.blocks = tp.blocks;
            q.block_length = tp.block_length;
            q.n = resolved_n(tp);
            q.mu = tp.mu;
            q.lambda = tp.lambda;
            q.distribution = dist.empty()
                                 ? ((q.royal_roads && q.algorithm == theory::TheoryAlgorithm::Rls)
                                        ? theory::EliteDistribution::Poisson1
                                        : theory::EliteDistribution::Uniform)
                                 : io::parse_distribution(dist);
            q.rr_flip = io::parse_rr_flip(rr_flip);
            const auto result = theory::evaluate(q);

            std::ofstream fout;
            std::ostream& dest = select_output(g, out, fout);
            if (g.format == "json") {
                dest << io::eta_to_json(q, result).dump(2) << '\n';
            } else {
                dest << "query," << q.describe() << '\n';
                dest << "expected_tau," << fmt10(result.value) << '\n';
                dest << "k,l,expected_generations\n";
                for (const auto& t : result.per_level) {
                    dest << t.k << ',' << (t.l ? std::to_string(*t.l) : "") << ',' << fmt10(t.expected_generations)
                         << '\n';
                }
            }
            return kExitOk;
        }

        if (sim_cmd->parsed()) {
            harness::ExperimentSpec spec;
            if (!file.empty()) {
                spec = io::load_experiment(file);
            } else {
                EAConfig& c = spec.ea;
                c.n = resolved_n(sp);
                c.fitness = sp.fitness == "rr" ? FitnessKind::royal_roads(sp.blocks, sp.block_length)
                                               : FitnessKind::one_max();
                c.mu = sp.mu;
                c.lambda = sp.lambda;
                c.algorithm = sp.alg == "rls" ? Algorithm::rls() : Algorithm::bit_swap(swaps);
                c.init = io::parse_init(init);
                c.replace = io::parse_replace(replace);
                if (!elites.empty()) {
                    c.elites = io::parse_elites(elites);
                }
                spec.label = label;
                if (with_theory) {
                    spec.theory = harness::matching_query(c);
                    if (!spec.theory) {
                        throw UnsupportedQuery("theory is only available for k = 1 swaps");
                    }
                }
            }
            if (file.empty() || app.count("--seed") > 0 || std::getenv("BITSWAP_SEED") != nullptr) {
                spec.ea.seed = g.seed;
            }
            if (file.empty() || app.count("--reps") > 0) {
                spec.replications = g.reps;
            }
            if (file.empty() || app.count("--max-gens") > 0) {
                spec.ea.max_generations = g.max_gens;
            }
            const auto result = harness::run_experiment_with_runs(spec, g.threads);

            std::ofstream fout;
            std::ostream& dest = select_output(g, out, fout);
            if (g.format == "json") {
                dest << io::experiment_to_json(spec, result).dump(2) << '\n';
            } else {
                harness::ReportRow row;
                row.label = spec.label;
                row.algorithm = to_string(spec.ea.algorithm.kind);
                row.fitness = spec.ea.fitness.is_royal_roads() ? "rr" : "onemax";
                row.n = spec.ea.n;
                if (spec.ea.fitness.is_royal_roads()) {
                    row.blocks = spec.ea.fitness.blocks();
                    row.block_length = spec.ea.fitness.block_length();
                }
                row.mu = spec.ea.mu;
                row.lambda = spec.ea.lambda;
                row.theory = result.stats.theory_value;
                row.mean_tau = result.stats.mean_tau;
                if (row.mean_tau) {
                    row.std_tau = result.stats.std_tau;
                    row.ci95 = result.stats.ci95;
                }
                row.converged = result.stats.converged;
                row.censored = result.stats.censored;
                io::write_csv(harness::Report{{row}}, dest);
            }
            return kExitOk;
        }

        harness::RunOptions run_options;
        run_options.seed = g.seed;
        run_options.replications = g.reps;
        run_options.max_generations = g.max_gens;
        run_options.threads = g.threads;

        if (rep_cmd->parsed()) {
            run_options.init = io::parse_init(rep_init);
            if (!rep_elites.empty()) {
                run_options.elites = io::parse_elites(rep_elites);
            }
            const auto report = harness::reproduce_table(table == 2 ? harness::Table::OneMax : harness::Table::RoyalRoads,
                                                         scale == "full" ? harness::Scale::Full : harness::Scale::Desk,
                                                         run_options);
            emit_report(report, g, out);
            return kExitOk;
        }

        if (sweep_cmd->parsed()) {
            auto grid = io::load_sweep(sweep_file);
            if (app.count("--seed") > 0) {
                grid.run.seed = g.seed;
            }
            if (app.count("--reps") > 0) {
                grid.run.replications = g.reps;
            }
            if (app.count("--max-gens") > 0) {
                grid.run.max_generations = g.max_gens;
            }
            if (app.count("--threads") > 0) {
                grid.run.threads = g.threads;
            }
            emit_report(harness::sweep(grid), g, out);
            return kExitOk;
        }
    } catch (const UnsupportedQuery& e) {
        err << "unsupported: " << e.what() << '\n';
        return kExitUnsupported;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitConfig;
}

} // namespace bitswap::cli
