#pragma once

/// @file harness.hpp
/// @brief Replicated experiments, summary statistics, reproduction of the
/// published OneMax / Royal Roads comparison tables, and parameter sweeps.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bitswap/engine.hpp"
#include "bitswap/theory.hpp"

namespace bitswap::harness {

struct ExperimentSpec {
    EAConfig ea;
    std::optional<theory::TheoryQuery> theory;
    int replications = 50;
    std::string label;

    /// Throws ConfigError if the EA config is invalid or the theory query
    /// disagrees with it on (mu, lambda, n, fitness, algorithm).
    void validate() const;
};

struct SummaryStats {
    std::optional<double> mean_tau; ///< over converged runs; absent when none converged
    double std_tau = 0.0;           ///< sample standard deviation; 0 with fewer than two converged runs
    double ci95 = 0.0;              ///< 1.96 * std / sqrt(converged)
    int converged = 0;
    int censored = 0;
    std::optional<double> theory_value;
};

/// Aggregates hitting times. Censored runs are counted, never imputed.
[[nodiscard]] SummaryStats summarize(const std::vector<RunRecord>& records);

struct ExperimentResult {
    SummaryStats stats;
    std::vector<RunRecord> runs;
};

[[nodiscard]] ExperimentResult run_experiment_with_runs(const ExperimentSpec& spec, unsigned threads = 1);
[[nodiscard]] SummaryStats run_experiment(const ExperimentSpec& spec, unsigned threads = 1);

/// Theory query mirroring an EA config; nullopt when the EA uses k > 1 swaps.
/// Distribution defaults to Poisson(1) for RLS on Royal Roads, Uniform otherwise.
[[nodiscard]] std::optional<theory::TheoryQuery> matching_query(const EAConfig& ea);

/// One row of the comparison CSV. Absent values print as empty fields.
struct ReportRow {
    std::string label;
    std::string algorithm; ///< "1bs" | "rls"
    std::string fitness;   ///< "onemax" | "rr"
    int n = 0;
    std::optional<int> blocks;
    std::optional<int> block_length;
    int mu = 0;
    int lambda = 0;
    std::optional<double> theory;
    std::optional<double> mean_tau;
    std::optional<double> std_tau;
    std::optional<double> ci95;
    std::optional<int> converged;
    std::optional<int> censored;
    std::optional<double> paper_theory;
    std::optional<double> paper_tau;
    std::optional<double> rel_dev_theory;
    std::optional<double> rel_dev_sim;
};

struct Report {
    std::vector<ReportRow> rows;
};

/// A published table cell, loaded from the embedded data file.
struct ReferenceCell {
    int table = 0;
    int row = 0;
    std::string algorithm;
    std::string fitness;
    int n = 0;
    std::optional<int> blocks;
    std::optional<int> block_length;
    int mu = 0;
    int lambda = 0;      ///< as printed
    int eval_lambda = 0; ///< pool size the printed theory value corresponds to
    double paper_theory = 0.0;
    std::optional<double> paper_tau; ///< absent for "-" cells
};

[[nodiscard]] const std::vector<ReferenceCell>& reference_cells();
[[nodiscard]] std::vector<ReferenceCell> reference_cells(int table);
/// Version tag of the embedded reference data.
[[nodiscard]] std::string reference_data_version();

enum class Table { OneMax = 2, RoyalRoads = 3 };
enum class Scale {
    Desk, ///< every theory cell; simulation only for n <= 128
    Full, ///< every theory and simulation cell
};

struct RunOptions {
    int replications = 50;
    int max_generations = 2000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    InitPolicy init = InitPolicy::RandomUniform;
    ReplacePolicy replace = ReplacePolicy::Ranked;
    std::optional<ElitePolicy> elites; ///< unset: per-fitness default
};

inline constexpr int kDeskMaxSimulatedN = 128;

/// replications = 0 gives a theory-only report.
[[nodiscard]] Report reproduce_table(Table which, Scale scale, const RunOptions& options = {});

enum class SweepMode { Theory, Simulate, Both };

/// Cross product of the listed values. An empty `lambdas` ties lambda to mu.
/// For Royal Roads, n is K*M for each (K, M) pair and `ns` is ignored.
struct SweepGrid {
    std::vector<AlgorithmKind> algorithms;
    bool royal_roads = false;
    std::vector<int> ns;
    std::vector<int> blocks;
    std::vector<int> block_lengths;
    std::vector<int> mus;
    std::vector<int> lambdas;
    SweepMode mode = SweepMode::Theory;
    std::optional<theory::EliteDistribution> distribution;
    theory::RrFlipVariant rr_flip = theory::RrFlipVariant::FullRate;
    RunOptions run;
};

/// Cells whose theory combination has no evaluator get an empty theory field
/// and ";theory-unavailable" appended to their label.
[[nodiscard]] Report sweep(const SweepGrid& grid);

} // namespace bitswap::harness
