#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "condtest/congest.hpp"
#include "condtest/graph.hpp"

namespace condtest {

/// User-facing tester knobs.  Unset optionals resolve to the protocol
/// defaults; every override is echoed into reports.
struct TesterConfig {
  double alpha = 0.5;
  double epsilon = 0.3;
  std::uint64_t master_seed = 1;
  std::optional<long long> walks;          // K per source; default 2 m^2
  std::optional<long long> length;         // walk length; default ceil((32/alpha^2) ln n)
  std::optional<double> tau_slack;         // default 2 n^{-1/4}
  std::optional<double> source_constant;   // default 5000
  std::optional<double> congestion_limit;  // default 5500 / epsilon
  std::vector<int> forced_sources;         // nonempty: exactly these vertices start walks
};

struct ResolvedConfig {
  double alpha = 0;
  double epsilon = 0;
  std::uint64_t master_seed = 0;
  long long walks = 0;
  long long length = 0;
  double tau_slack = 0;
  double source_constant = 0;
  double congestion_limit = 0;
  std::vector<int> forced_sources;
  std::vector<std::string> overridden;  // names of knobs that were overridden
};

bool equivalent_ignoring_seed(const ResolvedConfig& a, const ResolvedConfig& b);

ResolvedConfig resolve_config(const TesterConfig& config, const Graph& g);

/// tau_v = m * deg(v) * (1 + tau_slack).
double rejection_threshold(const Graph& g, const ResolvedConfig& config, int v);

/// min(1, source_constant * deg(v) / (epsilon * 2m)).
double source_probability(const Graph& g, const ResolvedConfig& config, int v);

/// Per-vertex biased coin flips on independent streams; identical to the
/// decisions an engine run makes with the same seed.
std::vector<int> sample_sources(const Graph& g, const ResolvedConfig& config);

/// Reject iff some ended-walk count strictly exceeds tau_v.  Reads nothing
/// beyond the vertex's own counts and threshold.
congest::Outcome threshold_verdict(const Graph& g, const ResolvedConfig& config, int v,
                                   const std::map<int, long long>& ended);

/// The conductance-tester vertex program: batched lazy-walk advancement with
/// per-source count tuples, congestion self-check, and a purely local final
/// threshold decision on the walk counts that ended here.
class TesterProgram : public congest::VertexProgram {
 public:
  TesterProgram(const Graph& g, const ResolvedConfig& config)
      : graph_(&g), config_(&config) {}

  void init(congest::VertexApi& api) override;
  void on_round(congest::VertexApi& api, std::span<const congest::Message> inbox) override;
  congest::Outcome finalize(congest::VertexApi& api) override;

  bool is_source() const { return is_source_; }
  /// C_v: source -> number of walks that ended here.
  const std::map<int, long long>& endpoint_counts() const { return ended_; }
  /// Row r-1: this vertex's (source, count) ledger entries at step r-1,
  /// captured at the start of round r.
  const std::vector<std::vector<std::pair<int, long long>>>& step_census() const {
    return census_;
  }

 protected:
  const Graph* graph_;
  const ResolvedConfig* config_;
  int vertex_ = 0;
  bool is_source_ = false;
  std::map<int, long long> walks_;  // W_v: source -> walks stationed here
  std::map<int, long long> ended_;  // C_v
  std::vector<std::vector<std::pair<int, long long>>> census_;
};

struct RunReport {
  ResolvedConfig config;
  std::string graph_name;
  int n = 0;
  long long m = 0;
  std::vector<int> sources;
  std::vector<congest::Verdict> verdicts;  // index v-1
  std::vector<congest::RoundStats> rounds;
  bool halted = false;
  int rounds_executed = 0;
  std::vector<int> rejecting;  // vertices with outcome Reject
  std::vector<int> aborted;    // vertices with outcome AbortedCongestion
  /// source -> vertex -> count of walks that ended there.
  std::map<int, std::map<int, long long>> endpoint_counts;
  /// source -> total ledger count per step (index = step).
  std::map<int, std::vector<long long>> walk_totals;
  bool conservation_ok = true;
  std::string conservation_note;
  std::uint64_t seed = 0;
};

RunReport run_tester(const Graph& g, const TesterConfig& config,
                     const congest::EngineOptions& engine = {},
                     const std::string& graph_name = {});

}  // namespace condtest
