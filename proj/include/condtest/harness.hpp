#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "condtest/generators.hpp"
#include "condtest/tester.hpp"

namespace condtest {

enum class Mode { Test, VerifyLemmas, VerifyCheeger, Mixing, BruteConductance };

const char* to_string(Mode mode);
Mode mode_from_string(const std::string& name);  // throws BadFlags

/// One experiment: a graph source plus tester/oracle parameters.
struct ExperimentSpec {
  std::optional<std::string> graph_file;
  std::optional<GenSpec> gen;
  TesterConfig config;
  int trials = 1;
  Mode mode = Mode::Test;
  long long ell = 0;  // lemma row count / mixing length; 0 picks the mode default
  std::optional<std::string> out_path;
  std::optional<std::string> csv_path;
  std::optional<std::string> transcript_path;
  bool deterministic = false;
  bool histograms = false;
  int worker_threads = 1;
};

Graph build_graph(const ExperimentSpec& spec, std::string* name_out = nullptr);

/// Per-trial outcome classification; exactly one bucket per trial.
enum class TrialOutcome { Accept, Reject, Aborted };
const char* to_string(TrialOutcome o);

struct TrialRow {
  int trial = 0;
  std::uint64_t seed = 0;
  TrialOutcome outcome = TrialOutcome::Accept;
  int rejecting_vertices = 0;
  int aborted_vertices = 0;
  int first_reject_vertex = 0;  // 0 when the trial accepted
  int rounds = 0;
  long long messages = 0;
  long long tuples = 0;
  long long max_edge_tuples = 0;
};

struct AggregateReport {
  ResolvedConfig config;
  std::string graph_name;
  int n = 0;
  long long m = 0;
  int trials = 0;
  double accept_fraction = 0;
  double reject_fraction = 0;
  double aborted_fraction = 0;
  std::map<int, int> first_reject_histogram;  // vertex -> trials
  long long rounds_total = 0;
  long long messages_total = 0;
  long long tuples_total = 0;
  long long max_edge_tuples = 0;
  bool conservation_ok = true;
  std::vector<TrialRow> rows;
};

/// Runs `trials` independent tester runs with seeds master_seed + trial index.
/// Trials execute in parallel; results are identical for any parallelism.
std::vector<RunReport> run_trials(const Graph& g, const TesterConfig& config, int trials,
                                  const congest::EngineOptions& engine = {},
                                  const std::string& graph_name = {}, int trial_threads = 0);

/// Folds homogeneous trial reports into one summary.  Throws
/// HeterogeneousConfigs when the reports disagree on anything but the seed.
AggregateReport aggregate(std::span<const RunReport> reports);

}  // namespace condtest
