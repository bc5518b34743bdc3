#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coedge/algebra.hpp"

namespace coedge {

enum class ExperimentMode { Full, Certified };

/// Monte Carlo sweep over a grid of (n, alpha) or (n, p) cells.
///
/// JSON form (schema_version 1):
///   { "schema_version": 1, "n": [18], "alpha": [0.7] | "p": [0.1],
///     "trials": 50, "seed": 1, "field": "Q", "mode": "full" | "certified",
///     "d": 1, "properties": ["reg_equals", ...], "gamma": [0.5],
///     "spectral": false, "exhaustive_cap": 22, "output_dir": "out" }
/// Only "n", "trials" and one of "alpha"/"p" are required.
struct ExperimentConfig {
  std::vector<int> n;
  std::vector<double> alpha;
  std::vector<double> p;
  int trials = 0;
  std::uint64_t seed = 0;
  CoefficientField field = CoefficientField::rationals();
  ExperimentMode mode = ExperimentMode::Full;
  int d = 1;
  std::vector<std::string> properties;
  std::vector<double> gamma;
  bool spectral = false;
  int exhaustive_cap = 22;
  std::string output_dir;
  int threads = 0;  // not part of the JSON; set by the caller

  /// Throws ConfigError on unknown keys, bad values or an unsupported schema.
  static ExperimentConfig from_json(const std::string& text);
  /// Throws ConfigError: trials < 1, empty grid, bad probabilities, unknown
  /// properties, full mode with n above the exhaustive cap.
  void validate() const;
};

/// Names accepted in ExperimentConfig::properties. "clique_number_is:<m>" is
/// also accepted.
const std::vector<std::string>& known_properties();

struct Cell {
  int id = 0;
  int n = 0;
  std::optional<double> alpha;
  double p = 0.0;
};

std::vector<Cell> experiment_cells(const ExperimentConfig& config);

struct TrialRecord {
  Cell cell;
  int trial = 0;
  std::uint64_t seed = 0;
  int edges = 0;
  int clique_number = 0;
  std::optional<InvariantReport> report;
  std::optional<BettiTable> table;
  std::vector<std::pair<int, int>> row_argmax;  // (k, argmax_j of normalized row k) over nonzero rows k >= 1
  std::optional<std::uint64_t> betti_below, betti_at, betti_above;  // β̃_{d-1}, β̃_d, β̃_{d+1}
  std::optional<double> lambda2;
  std::map<std::string, std::optional<bool>> predicates;  // nullopt: not evaluated
  double wall_seconds = 0.0;
};

struct PropertyStats {
  int evaluated = 0;
  int holds = 0;
  double frequency = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

struct CellAggregate {
  Cell cell;
  int trials = 0;
  std::map<std::string, PropertyStats> properties;
  double mean_edges = 0.0;
  double mean_clique_number = 0.0;
  std::optional<double> mean_betti_below, mean_betti_at, mean_betti_above;
  std::vector<double> lambda2_quantiles;  // min, q25, median, q75, max when spectral
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // sorted by (cell, trial)
  std::vector<CellAggregate> aggregates;
  double wall_seconds = 0.0;
};

/// Two-sided 95% Wilson score interval for `holds` successes in `n` trials.
std::pair<double, double> wilson_interval(int holds, int n);

/// Runs one trial: sample, compute what the requested properties need,
/// evaluate them.
TrialRecord run_trial(const ExperimentConfig& config, const Cell& cell, int trial);

/// Evaluates the configured properties for a fixed graph (no sampling).
TrialRecord evaluate_graph(const ExperimentConfig& config, const Graph& g);

/// Trials run in parallel (OpenMP, config.threads workers); records are
/// ordered by (cell, trial) so outputs do not depend on the worker count.
ExperimentResult run_experiment(const ExperimentConfig& config);

void write_trials_csv(const ExperimentResult& r, const ExperimentConfig& config, std::ostream& out);
void write_aggregate_csv(const ExperimentResult& r, const ExperimentConfig& config, std::ostream& out);
/// (cell, trial, k, i, normalized value) for every stored table entry.
void write_plotdata_csv(const ExperimentResult& r, std::ostream& out);
/// Normalized values at i = ceil(n^γ) ("statement") and i = ceil(n^γ) - k
/// ("proof") for every configured γ and row k >= 1.
void write_staircase_csv(const ExperimentResult& r, const ExperimentConfig& config, std::ostream& out);
/// Run metadata (wall times, worker count); not deterministic.
void write_run_meta(const ExperimentResult& r, const ExperimentConfig& config, std::ostream& out);

/// Writes trials.csv, aggregate.csv, plotdata.csv, staircase.csv and
/// run_meta.json into `dir` (created if missing).
void write_experiment_outputs(const ExperimentResult& r, const ExperimentConfig& config, const std::string& dir);

/// Re-emits the Betti tables stored in a trials.csv as plotdata rows.
/// Throws ParseError on malformed input.
void plot_data_from_trials(std::istream& trials_csv, std::ostream& out);

}  // namespace coedge
