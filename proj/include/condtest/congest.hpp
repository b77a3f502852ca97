#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "condtest/graph.hpp"

namespace condtest::congest {

/// (source, count, step): `count` walks that started at `source` and have
/// taken `step` steps.
struct WalkTuple {
  int source;
  long long count;
  int step;
};

struct Message {
  int src = 0;
  int dst = 0;
  std::vector<WalkTuple> tuples;
};

struct RoundStats {
  int round = 0;
  long long messages = 0;
  long long tuples = 0;
  long long max_edge_tuples = 0;
  bool halted = false;
};

enum class Outcome { Accept, Reject, AbortedCongestion };
const char* to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::Accept;
  int round = 0;  // round of decision
};

namespace detail {
struct VertexState;
}

/// Per-vertex view handed to handlers; valid only for the duration of the call.
class VertexApi {
 public:
  int id() const { return vertex_; }
  int round() const { return round_; }
  int degree() const { return graph_->degree(vertex_); }
  std::span<const int> neighbors() const { return graph_->neighbors(vertex_); }

  /// Stream keyed on (master_seed, vertex, phase); independent of scheduling.
  std::mt19937_64& rng() { return rng_; }

  /// Stages one message for `dst`; at most one per destination per round and
  /// only to neighbors.  Tuples must carry the current round as their step and
  /// positive counts.
  void send(int dst, std::vector<WalkTuple> tuples);

  /// Requests a global stop: the current round completes without delivery,
  /// every vertex then finalizes, and this vertex records `reason` as its
  /// verdict.
  void halt(Outcome reason);

  /// During finalize: messages delivered by the last executed round.
  std::span<const Message> final_inbox() const;

 private:
  friend struct detail::VertexState;
  VertexApi(const Graph& g, int vertex, int round, std::mt19937_64 rng,
            detail::VertexState* state)
      : graph_(&g), vertex_(vertex), round_(round), rng_(std::move(rng)), state_(state) {}

  const Graph* graph_;
  int vertex_;
  int round_;
  std::mt19937_64 rng_;
  detail::VertexState* state_;
};

/// A vertex-local protocol.  Handlers may touch only their own state plus the
/// provided api/inbox; the engine guarantees exclusive access per vertex.
class VertexProgram {
 public:
  virtual ~VertexProgram() = default;
  virtual void init(VertexApi&) {}
  virtual void on_round(VertexApi&, std::span<const Message> inbox) = 0;
  virtual Outcome finalize(VertexApi&) = 0;
};

using ProgramFactory = std::function<std::unique_ptr<VertexProgram>(int vertex)>;

struct EngineOptions {
  int worker_threads = 1;  // results are independent of this value
};

struct RunResult {
  std::vector<Verdict> verdicts;  // index v-1
  std::vector<RoundStats> rounds;
  bool halted = false;
  int rounds_executed = 0;
  /// Program objects after finalize, for state inspection by the caller.
  std::vector<std::unique_ptr<VertexProgram>> programs;
};

/// Runs init, exactly `rounds` synchronous rounds (unless a vertex halts),
/// then finalize.  A message sent in round r is readable only in round r+1;
/// messages of the final round are readable in finalize.  Deterministic for a
/// fixed master_seed regardless of worker_threads.
RunResult run(const Graph& g, const ProgramFactory& factory, int rounds,
              std::uint64_t master_seed, const EngineOptions& opts = {});

}  // namespace condtest::congest
