#include "condtest/congest.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "condtest/rng.hpp"

namespace condtest::congest {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Accept: return "accept";
    case Outcome::Reject: return "reject";
    case Outcome::AbortedCongestion: return "aborted_congestion";
  }
  return "unknown";
}

namespace detail {

struct VertexState {
  std::unique_ptr<VertexProgram> program;
  std::vector<Message> inbox;
  std::vector<Message> outbox;
  std::vector<int> sent_to;  // destinations used this round
  std::optional<Verdict> verdict;
  bool halt_requested = false;
  bool finalizing = false;
  std::exception_ptr panic;
  int panic_round = 0;

  VertexApi make_api(const Graph& g, int vertex, int round, std::uint64_t seed,
                     std::uint64_t phase) {
    return VertexApi(g, vertex, round, make_stream(seed, static_cast<std::uint64_t>(vertex), phase),
                     this);
  }
};

}  // namespace detail

void VertexApi::send(int dst, std::vector<WalkTuple> tuples) {
  if (state_->finalizing)
    throw std::logic_error("send is not available during finalize");
  if (!graph_->has_edge(vertex_, dst))
    throw std::logic_error("vertex " + std::to_string(vertex_) + " sent to non-neighbor " +
                           std::to_string(dst));
  if (tuples.empty()) throw std::logic_error("empty message");
  for (const auto& t : tuples) {
    if (t.count < 1) throw std::logic_error("message tuple with count < 1");
    if (t.step != round_)
      throw std::logic_error("message tuple step " + std::to_string(t.step) +
                             " does not match round " + std::to_string(round_));
  }
  if (std::find(state_->sent_to.begin(), state_->sent_to.end(), dst) != state_->sent_to.end())
    throw std::logic_error("second message to destination " + std::to_string(dst) +
                           " in one round");
  state_->sent_to.push_back(dst);
  state_->outbox.push_back(Message{vertex_, dst, std::move(tuples)});
}

void VertexApi::halt(Outcome reason) {
  state_->halt_requested = true;
  if (!state_->verdict) state_->verdict = Verdict{reason, round_};
}

std::span<const Message> VertexApi::final_inbox() const {
  if (!state_->finalizing)
    throw std::logic_error("final_inbox is only available during finalize");
  return state_->inbox;
}

namespace {

constexpr std::uint64_t kInitPhase = 0;
constexpr std::uint64_t kFinalizePhase = 0xffffffffULL;

// Runs fn(v) for v = 1..n, striped over the worker threads.  Each call touches
// only vertex-local state, so any schedule produces the same result.
void for_each_vertex(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::clamp(workers, 1, 256);
  if (workers == 1 || n < 2) {
    for (int v = 1; v <= n; ++v) fn(v);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&fn, n, workers, t]() {
      for (int v = 1 + t; v <= n; v += workers) fn(v);
    });
  }
  for (auto& th : pool) th.join();
}

[[noreturn]] void rethrow_panic(std::vector<detail::VertexState>& states) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!states[i].panic) continue;
    std::string what = "unknown";
    try {
      std::rethrow_exception(states[i].panic);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    throw Error(ErrorCode::ProgramPanic, "vertex " + std::to_string(i + 1) + " failed in round " +
                                             std::to_string(states[i].panic_round) + ": " + what);
  }
  throw Error(ErrorCode::ProgramPanic, "panic flag set without exception");
}

}  // namespace

RunResult run(const Graph& g, const ProgramFactory& factory, int rounds,
              std::uint64_t master_seed, const EngineOptions& opts) {
  if (rounds < 0) throw std::invalid_argument("negative round count");
  const int n = g.vertex_count();
  std::vector<detail::VertexState> states(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v)
    states[static_cast<std::size_t>(v - 1)].program = factory(v);

  std::atomic<bool> any_panic{false};
  auto guarded = [&](detail::VertexState& st, int round, auto&& body) {
    try {
      body();
    } catch (...) {
      st.panic = std::current_exception();
      st.panic_round = round;
      any_panic.store(true, std::memory_order_relaxed);
    }
  };

  for_each_vertex(n, opts.worker_threads, [&](int v) {
    auto& st = states[static_cast<std::size_t>(v - 1)];
    auto api = st.make_api(g, v, 0, master_seed, kInitPhase);
    guarded(st, 0, [&] { st.program->init(api); });
  });
  if (any_panic.load()) rethrow_panic(states);

  RunResult result;
  bool halted = std::any_of(states.begin(), states.end(),
                            [](const auto& st) { return st.halt_requested; });
  int executed = 0;

  for (int r = 1; r <= rounds && !halted; ++r) {
    for_each_vertex(n, opts.worker_threads, [&](int v) {
      auto& st = states[static_cast<std::size_t>(v - 1)];
      auto api = st.make_api(g, v, r, master_seed, static_cast<std::uint64_t>(r));
      guarded(st, r, [&] { st.program->on_round(api, st.inbox); });
    });
    if (any_panic.load()) rethrow_panic(states);
    executed = r;

    RoundStats stats;
    stats.round = r;
    for (auto& st : states) {
      for (const auto& msg : st.outbox) {
        ++stats.messages;
        stats.tuples += static_cast<long long>(msg.tuples.size());
        stats.max_edge_tuples =
            std::max(stats.max_edge_tuples, static_cast<long long>(msg.tuples.size()));
      }
    }
    halted = std::any_of(states.begin(), states.end(),
                         [](const auto& st) { return st.halt_requested; });
    stats.halted = halted;
    result.rounds.push_back(stats);

    for (auto& st : states) st.inbox.clear();
    if (!halted) {
      for (auto& st : states)
        for (auto& msg : st.outbox)
          states[static_cast<std::size_t>(msg.dst - 1)].inbox.push_back(std::move(msg));
    }
    for (auto& st : states) {
      st.outbox.clear();
      st.sent_to.clear();
    }
  }

  for_each_vertex(n, opts.worker_threads, [&](int v) {
    auto& st = states[static_cast<std::size_t>(v - 1)];
    st.finalizing = true;
    auto api = st.make_api(g, v, executed, master_seed, kFinalizePhase);
    guarded(st, executed, [&] {
      Outcome outcome = st.program->finalize(api);
      if (!st.verdict) st.verdict = Verdict{outcome, executed};
    });
  });
  if (any_panic.load()) rethrow_panic(states);

  result.halted = halted;
  result.rounds_executed = executed;
  result.verdicts.reserve(static_cast<std::size_t>(n));
  result.programs.reserve(static_cast<std::size_t>(n));
  for (auto& st : states) {
    result.verdicts.push_back(*st.verdict);
    result.programs.push_back(std::move(st.program));
  }
  return result;
}

}  // namespace condtest::congest
