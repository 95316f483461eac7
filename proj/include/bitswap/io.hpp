#pragma once

/// @file io.hpp
/// @brief CSV report output, JSON trace export and experiment/sweep file parsing.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bitswap/harness.hpp"

namespace bitswap::io {

inline constexpr const char* kCsvHeader =
    "label,algorithm,fitness,n,K,M,mu,lambda,theory,mean_tau,std_tau,ci95,converged,censored,paper_theory,"
    "paper_tau,rel_dev_theory,rel_dev_sim";

/// Six significant digits, "%.6g".
[[nodiscard]] std::string format_real(double x);

void write_csv(const harness::Report& report, std::ostream& out);

/// Report rows as an array of objects keyed by the CSV column names; absent values are null.
[[nodiscard]] nlohmann::json report_to_json(const harness::Report& report);

/// [{"gen":..,"best_fitness":..,"elite_count":..,"best_aux":..}, ...]
[[nodiscard]] nlohmann::json trace_to_json(const RunRecord& record);

/// Summary plus every run's hit generation (null when censored) and trace.
[[nodiscard]] nlohmann::json experiment_to_json(const harness::ExperimentSpec& spec,
                                                const harness::ExperimentResult& result);

[[nodiscard]] nlohmann::json eta_to_json(const theory::TheoryQuery& q, const theory::EtaResult& r);

/// Parses an experiment file (see docs/experiment-files.md). Throws ConfigError.
[[nodiscard]] harness::ExperimentSpec parse_experiment(std::istream& in);
[[nodiscard]] harness::ExperimentSpec load_experiment(const std::string& path);

/// Parses a sweep file (see docs/experiment-files.md). Throws ConfigError.
[[nodiscard]] harness::SweepGrid parse_sweep(std::istream& in);
[[nodiscard]] harness::SweepGrid load_sweep(const std::string& path);

// Keyword parsers shared with the CLI. All throw ConfigError on unknown words.
[[nodiscard]] AlgorithmKind parse_algorithm(const std::string& word);
[[nodiscard]] InitPolicy parse_init(const std::string& word);
[[nodiscard]] ReplacePolicy parse_replace(const std::string& word);
[[nodiscard]] ElitePolicy parse_elites(const std::string& word);
[[nodiscard]] theory::EliteDistribution parse_distribution(const std::string& word);
[[nodiscard]] theory::RrFlipVariant parse_rr_flip(const std::string& word);
[[nodiscard]] std::vector<int> parse_int_list(const std::string& text);

} // namespace bitswap::io
