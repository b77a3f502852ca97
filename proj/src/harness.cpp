#include "condtest/harness.hpp"

#include <algorithm>
#include <thread>

#include "condtest/edge_io.hpp"

namespace condtest {

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::Test: return "test";
    case Mode::VerifyLemmas: return "verify-lemmas";
    case Mode::VerifyCheeger: return "verify-cheeger";
    case Mode::Mixing: return "mixing";
    case Mode::BruteConductance: return "brute-conductance";
  }
  return "unknown";
}

Mode mode_from_string(const std::string& name) {
  if (name == "test") return Mode::Test;
  if (name == "verify-lemmas") return Mode::VerifyLemmas;
  if (name == "verify-cheeger") return Mode::VerifyCheeger;
  if (name == "mixing") return Mode::Mixing;
  if (name == "brute-conductance") return Mode::BruteConductance;
  throw Error(ErrorCode::BadFlags, "unknown mode '" + name + "'");
}

const char* to_string(TrialOutcome o) {
  switch (o) {
    case TrialOutcome::Accept: return "accept";
    case TrialOutcome::Reject: return "reject";
    case TrialOutcome::Aborted: return "aborted";
  }
  return "unknown";
}

Graph build_graph(const ExperimentSpec& spec, std::string* name_out) {
  if (spec.graph_file.has_value() == spec.gen.has_value())
    throw Error(ErrorCode::BadFlags, "exactly one of --graph and --gen is required");
  if (spec.graph_file) {
    if (name_out) *name_out = *spec.graph_file;
    return load_edge_list(*spec.graph_file);
  }
  if (name_out) *name_out = describe(*spec.gen);
  return generate(*spec.gen, spec.config.master_seed);
}

std::vector<RunReport> run_trials(const Graph& g, const TesterConfig& config, int trials,
                                  const congest::EngineOptions& engine,
                                  const std::string& graph_name, int trial_threads) {
  if (trials < 1) throw Error(ErrorCode::BadFlags, "trials must be >= 1");
  std::vector<RunReport> reports(static_cast<std::size_t>(trials));
  if (trial_threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    trial_threads = static_cast<int>(std::clamp(hw, 1u, 8u));
  }
  trial_threads = std::min(trial_threads, trials);

  auto run_one = [&](int t) {
    TesterConfig trial_config = config;
    trial_config.master_seed = config.master_seed + static_cast<std::uint64_t>(t);
    reports[static_cast<std::size_t>(t)] = run_tester(g, trial_config, engine, graph_name);
  };

  if (trial_threads == 1) {
    for (int t = 0; t < trials; ++t) run_one(t);
    return reports;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(trial_threads));
  for (int w = 0; w < trial_threads; ++w)
    pool.emplace_back([&, w]() {
      for (int t = w; t < trials; t += trial_threads) run_one(t);
    });
  for (auto& th : pool) th.join();
  return reports;
}

AggregateReport aggregate(std::span<const RunReport> reports) {
  if (reports.empty())
    throw Error(ErrorCode::BadFlags, "nothing to aggregate");
  for (const auto& r : reports)
    if (!equivalent_ignoring_seed(r.config, reports.front().config) ||
        r.graph_name != reports.front().graph_name)
      throw Error(ErrorCode::HeterogeneousConfigs,
                  "trial reports disagree on configuration");

  AggregateReport agg;
  agg.config = reports.front().config;
  agg.graph_name = reports.front().graph_name;
  agg.n = reports.front().n;
  agg.m = reports.front().m;
  agg.trials = static_cast<int>(reports.size());

  int accepted = 0, rejected = 0, aborted = 0;
  for (std::size_t t = 0; t < reports.size(); ++t) {
    const RunReport& r = reports[t];
    TrialRow row;
    row.trial = static_cast<int>(t);
    row.seed = r.seed;
    row.rejecting_vertices = static_cast<int>(r.rejecting.size());
    row.aborted_vertices = static_cast<int>(r.aborted.size());
    row.rounds = r.rounds_executed;
    for (const auto& s : r.rounds) {
      row.messages += s.messages;
      row.tuples += s.tuples;
      row.max_edge_tuples = std::max(row.max_edge_tuples, s.max_edge_tuples);
    }

    // Exactly one bucket per trial: aborted > reject > accept.
    if (!r.aborted.empty()) {
      row.outcome = TrialOutcome::Aborted;
      ++aborted;
    } else if (!r.rejecting.empty()) {
      row.outcome = TrialOutcome::Reject;
      ++rejected;
    } else {
      row.outcome = TrialOutcome::Accept;
      ++accepted;
    }

    if (row.outcome != TrialOutcome::Accept) {
      // earliest decision round, lowest vertex id on ties
      int best_vertex = 0, best_round = 0;
      for (int v = 1; v <= r.n; ++v) {
        const auto& verdict = r.verdicts[static_cast<std::size_t>(v - 1)];
        if (verdict.outcome == congest::Outcome::Accept) continue;
        if (best_vertex == 0 || verdict.round < best_round) {
          best_vertex = v;
          best_round = verdict.round;
        }
      }
      row.first_reject_vertex = best_vertex;
      agg.first_reject_histogram[best_vertex] += 1;
    }

    agg.rounds_total += row.rounds;
    agg.messages_total += row.messages;
    agg.tuples_total += row.tuples;
    agg.max_edge_tuples = std::max(agg.max_edge_tuples, row.max_edge_tuples);
    agg.conservation_ok = agg.conservation_ok && r.conservation_ok;
    agg.rows.push_back(row);
  }

  const double denom = static_cast<double>(agg.trials);
  agg.accept_fraction = accepted / denom;
  agg.reject_fraction = rejected / denom;
  agg.aborted_fraction = aborted / denom;
  return agg;
}

}  // namespace condtest
