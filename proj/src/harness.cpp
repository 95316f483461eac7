#include "bitswap/harness.hpp"

#include <cmath>
#include <sstream>

#include "bitswap/errors.hpp"
#include "bitswap/published_tables_data.hpp"

namespace bitswap::harness {

void ExperimentSpec::validate() const {
    ea.validate();
    if (replications < 1) {
        throw ConfigError("replications must be >= 1");
    }
    if (!theory) {
        return;
    }
    const auto& q = *theory;
    const bool alg_matches = (q.algorithm == theory::TheoryAlgorithm::BitSwap1) ==
                             (ea.algorithm.kind == AlgorithmKind::KBitSwap);
    const bool fitness_matches =
        q.royal_roads == ea.fitness.is_royal_roads() &&
        (!q.royal_roads || (q.blocks == ea.fitness.blocks() && q.block_length == ea.fitness.block_length()));
    if (!alg_matches || !fitness_matches || q.mu != ea.mu || q.lambda != ea.lambda || q.n != ea.n) {
        throw ConfigError("theory query does not match the EA configuration");
    }
}

SummaryStats summarize(const std::vector<RunRecord>& records) {
    SummaryStats s;
    std::vector<double> hits;
    for (const auto& r : records) {
        if (r.hit_generation) {
            hits.push_back(*r.hit_generation);
        } else {
            ++s.censored;
        }
    }
    s.converged = static_cast<int>(hits.size());
    if (hits.empty()) {
        return s;
    }
    double sum = 0.0;
    for (const double h : hits) {
        sum += h;
    }
    const double mean = sum / static_cast<double>(hits.size());
    s.mean_tau = mean;
    if (hits.size() >= 2) {
        double ss = 0.0;
        for (const double h : hits) {
            ss += (h - mean) * (h - mean);
        }
        s.std_tau = std::sqrt(ss / static_cast<double>(hits.size() - 1));
    }
    s.ci95 = 1.96 * s.std_tau / std::sqrt(static_cast<double>(hits.size()));
    return s;
}

ExperimentResult run_experiment_with_runs(const ExperimentSpec& spec, unsigned threads) {
    spec.validate();
    ExperimentResult result;
    result.runs = run_replications(spec.ea, spec.replications, threads);
    result.stats = summarize(result.runs);
    if (spec.theory) {
        result.stats.theory_value = theory::evaluate(*spec.theory).value;
    }
    return result;
}

SummaryStats run_experiment(const ExperimentSpec& spec, unsigned threads) {
    return run_experiment_with_runs(spec, threads).stats;
}

std::optional<theory::TheoryQuery> matching_query(const EAConfig& ea) {
    if (ea.algorithm.kind == AlgorithmKind::KBitSwap && ea.algorithm.swaps != 1) {
        return std::nullopt;
    }
    theory::TheoryQuery q;
    q.algorithm =
        ea.algorithm.kind == AlgorithmKind::KBitSwap ? theory::TheoryAlgorithm::BitSwap1 : theory::TheoryAlgorithm::Rls;
    q.royal_roads = ea.fitness.is_royal_roads();
    q.blocks = ea.fitness.blocks();
    q.block_length = ea.fitness.block_length();
    q.mu = ea.mu;
    q.lambda = ea.lambda;
    q.n = ea.n;
    q.distribution = (q.royal_roads && q.algorithm == theory::TheoryAlgorithm::Rls)
                         ? theory::EliteDistribution::Poisson1
                         : theory::EliteDistribution::Uniform;
    return q;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

std::optional<int> optional_int(const std::string& s) {
    if (s.empty()) {
        return std::nullopt;
    }
    return std::stoi(s);
}

struct LoadedReference {
    std::string version;
    std::vector<ReferenceCell> cells;
};

LoadedReference load_reference() {
    LoadedReference out;
    std::istringstream in{std::string(data::kPublishedTablesCsv)};
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            const std::string tag = "# format-version:";
            if (line.rfind(tag, 0) == 0) {
                out.version = line.substr(tag.size());
                out.version.erase(0, out.version.find_first_not_of(' '));
            }
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 12) {
            throw ConfigError("malformed reference data line: " + line);
        }
        ReferenceCell c;
        c.table = std::stoi(f[0]);
        c.row = std::stoi(f[1]);
        c.algorithm = f[2];
        c.fitness = f[3];
        c.n = std::stoi(f[4]);
        c.blocks = optional_int(f[5]);
        c.block_length = optional_int(f[6]);
        c.mu = std::stoi(f[7]);
        c.lambda = std::stoi(f[8]);
        c.eval_lambda = std::stoi(f[9]);
        c.paper_theory = std::stod(f[10]);
        if (!f[11].empty()) {
            c.paper_tau = std::stod(f[11]);
        }
        out.cells.push_back(std::move(c));
    }
    return out;
}

const LoadedReference& loaded_reference() {
    static const LoadedReference ref = load_reference();
    return ref;
}

EAConfig config_for(const std::string& algorithm, bool rr, int n, int blocks, int block_length, int mu, int lambda,
                    const RunOptions& options) {
    EAConfig c;
    c.mu = mu;
    c.lambda = lambda;
    c.n = n;
    c.fitness = rr ? FitnessKind::royal_roads(blocks, block_length) : FitnessKind::one_max();
    c.algorithm = algorithm == "rls" ? Algorithm::rls() : Algorithm::bit_swap(1);
    c.init = options.init;
    c.replace = options.replace;
    c.elites = options.elites;
    c.max_generations = options.max_generations;
    return c;
}

std::optional<double> rel_dev(const std::optional<double>& value, const std::optional<double>& reference) {
    if (!value || !reference || *reference == 0.0) {
        return std::nullopt;
    }
    return (*value - *reference) / *reference;
}

void attach_simulation(ReportRow& row, const SummaryStats& s) {
    row.mean_tau = s.mean_tau;
    if (s.mean_tau) {
        row.std_tau = s.std_tau;
        row.ci95 = s.ci95;
    }
    row.converged = s.converged;
    row.censored = s.censored;
}

} // namespace

const std::vector<ReferenceCell>& reference_cells() { return loaded_reference().cells; }

std::vector<ReferenceCell> reference_cells(int table) {
    std::vector<ReferenceCell> out;
    for (const auto& c : reference_cells()) {
        if (c.table == table) {
            out.push_back(c);
        }
    }
    return out;
}

std::string reference_data_version() { return loaded_reference().version; }

Report reproduce_table(Table which, Scale scale, const RunOptions& options) {
    Report report;
    std::uint64_t cell_index = 0;
    for (const auto& cell : reference_cells(static_cast<int>(which))) {
        const bool rr = cell.fitness == "rr";
        const EAConfig base = config_for(cell.algorithm, rr, cell.n, cell.blocks.value_or(0),
                                         cell.block_length.value_or(0), cell.mu, cell.eval_lambda, options);

        ReportRow row;
        row.label = "table" + std::to_string(cell.table) + ":row" + std::to_string(cell.row) + ":" + cell.algorithm;
        if (cell.eval_lambda != cell.lambda) {
            row.label += "(printed-lambda=" + std::to_string(cell.lambda) + ")";
        }
        row.algorithm = cell.algorithm;
        row.fitness = cell.fitness;
        row.n = cell.n;
        row.blocks = cell.blocks;
        row.block_length = cell.block_length;
        row.mu = cell.mu;
        row.lambda = cell.eval_lambda;
        row.paper_theory = cell.paper_theory;
        row.paper_tau = cell.paper_tau;

        const auto query = matching_query(base);
        row.theory = theory::evaluate(*query).value;
        row.rel_dev_theory = rel_dev(row.theory, row.paper_theory);

        if (options.replications > 0 && (scale == Scale::Full || cell.n <= kDeskMaxSimulatedN)) {
            ExperimentSpec spec;
            spec.ea = base;
            spec.ea.seed = derive_seed(options.seed, cell_index);
            spec.replications = options.replications;
            spec.label = row.label;
            attach_simulation(row, run_experiment(spec, options.threads));
            row.rel_dev_sim = rel_dev(row.mean_tau, row.paper_tau);
        }
        ++cell_index;
        report.rows.push_back(std::move(row));
    }
    return report;
}

Report sweep(const SweepGrid& grid) {
    Report report;
    if (grid.algorithms.empty() || grid.mus.empty()) {
        return report;
    }

    struct Geometry {
        int n;
        int blocks;
        int block_length;
    };
    std::vector<Geometry> geometries;
    if (grid.royal_roads) {
        for (const int k : grid.blocks) {
            for (const int m : grid.block_lengths) {
                geometries.push_back({k * m, k, m});
            }
        }
    } else {
        for (const int n : grid.ns) {
            geometries.push_back({n, 0, 0});
        }
    }

    std::uint64_t cell_index = 0;
    for (const auto alg : grid.algorithms) {
        const std::string alg_name = to_string(alg);
        for (const auto& geo : geometries) {
            for (const int mu : grid.mus) {
                const std::vector<int> lambdas = grid.lambdas.empty() ? std::vector<int>{mu} : grid.lambdas;
                for (const int lambda : lambdas) {
                    const EAConfig base = config_for(alg_name, grid.royal_roads, geo.n, geo.blocks,
                                                     geo.block_length, mu, lambda, grid.run);
                    ReportRow row;
                    row.label = "sweep:" + alg_name + ":" + base.fitness.describe() + ":n=" + std::to_string(geo.n) +
                                ":mu=" + std::to_string(mu) + ":lambda=" + std::to_string(lambda);
                    row.algorithm = alg_name;
                    row.fitness = grid.royal_roads ? "rr" : "onemax";
                    row.n = geo.n;
                    if (grid.royal_roads) {
                        row.blocks = geo.blocks;
                        row.block_length = geo.block_length;
                    }
                    row.mu = mu;
                    row.lambda = lambda;

                    if (grid.mode != SweepMode::Simulate) {
                        auto query = matching_query(base);
                        if (query) {
                            if (grid.distribution) {
                                query->distribution = *grid.distribution;
                            }
                            query->rr_flip = grid.rr_flip;
                        }
                        try {
                            if (!query) {
                                throw UnsupportedQuery("no theory for k > 1");
                            }
                            row.theory = theory::evaluate(*query).value;
                        } catch (const UnsupportedQuery&) {
                            row.label += ";theory-unavailable";
                        } catch (const ConfigError&) {
                            row.label += ";theory-unavailable";
                        }
                    }
                    if (grid.mode != SweepMode::Theory) {
                        ExperimentSpec spec;
                        spec.ea = base;
                        spec.ea.seed = derive_seed(grid.run.seed, cell_index);
                        spec.replications = grid.run.replications;
                        spec.label = row.label;
                        attach_simulation(row, run_experiment(spec, grid.run.threads));
                    }
                    ++cell_index;
                    report.rows.push_back(std::move(row));
                }
            }
        }
    }
    return report;
}

} // namespace bitswap::harness
