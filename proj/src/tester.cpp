#include "condtest/tester.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "condtest/rng.hpp"

namespace condtest {

bool equivalent_ignoring_seed(const ResolvedConfig& a, const ResolvedConfig& b) {
  return a.alpha == b.alpha && a.epsilon == b.epsilon && a.walks == b.walks &&
         a.length == b.length && a.tau_slack == b.tau_slack &&
         a.source_constant == b.source_constant && a.congestion_limit == b.congestion_limit &&
         a.forced_sources == b.forced_sources;
}

ResolvedConfig resolve_config(const TesterConfig& config, const Graph& g) {
  if (!(config.alpha > 0.0 && config.alpha < 1.0))
    throw Error(ErrorCode::InfeasibleParameters, "alpha must lie in (0, 1)");
  if (!(config.epsilon > 0.0))
    throw Error(ErrorCode::InfeasibleParameters, "epsilon must be positive");

  const int n = g.vertex_count();
  const long long m = g.edge_count();

  ResolvedConfig r;
  r.alpha = config.alpha;
  r.epsilon = config.epsilon;
  r.master_seed = config.master_seed;

  r.walks = config.walks.value_or(2 * m * m);
  if (config.walks) r.overridden.push_back("walks");
  if (r.walks < 1) throw Error(ErrorCode::InfeasibleParameters, "walk count must be >= 1");
  if (r.walks > 4'000'000'000'000'000LL / std::max(n, 1))
    throw Error(ErrorCode::InfeasibleParameters, "walk count too large for 64-bit accounting");

  r.length = config.length.value_or(static_cast<long long>(
      std::ceil(32.0 / (config.alpha * config.alpha) * std::log(static_cast<double>(n)))));
  if (config.length) r.overridden.push_back("length");
  if (r.length < 1) throw Error(ErrorCode::InfeasibleParameters, "walk length must be >= 1");
  if (r.length > 1'000'000)
    throw Error(ErrorCode::InfeasibleParameters, "walk length above 1e6 rounds");

  r.tau_slack = config.tau_slack.value_or(2.0 * std::pow(static_cast<double>(n), -0.25));
  if (config.tau_slack) r.overridden.push_back("tau_slack");
  if (r.tau_slack < 0) throw Error(ErrorCode::InfeasibleParameters, "tau slack must be >= 0");

  r.source_constant = config.source_constant.value_or(5000.0);
  if (config.source_constant) r.overridden.push_back("source_constant");
  if (r.source_constant < 0)
    throw Error(ErrorCode::InfeasibleParameters, "source constant must be >= 0");

  r.congestion_limit = config.congestion_limit.value_or(5500.0 / config.epsilon);
  if (config.congestion_limit) r.overridden.push_back("congestion_limit");
  if (!(r.congestion_limit > 0))
    throw Error(ErrorCode::InfeasibleParameters, "congestion limit must be positive");

  r.forced_sources = config.forced_sources;
  std::sort(r.forced_sources.begin(), r.forced_sources.end());
  r.forced_sources.erase(std::unique(r.forced_sources.begin(), r.forced_sources.end()),
                         r.forced_sources.end());
  for (int v : r.forced_sources)
    if (v < 1 || v > n)
      throw Error(ErrorCode::InfeasibleParameters,
                  "forced source " + std::to_string(v) + " out of range");
  if (!r.forced_sources.empty()) r.overridden.push_back("sources");
  return r;
}

double rejection_threshold(const Graph& g, const ResolvedConfig& config, int v) {
  return static_cast<double>(g.edge_count()) * static_cast<double>(g.degree(v)) *
         (1.0 + config.tau_slack);
}

double source_probability(const Graph& g, const ResolvedConfig& config, int v) {
  const double p = config.source_constant * static_cast<double>(g.degree(v)) /
                   (config.epsilon * static_cast<double>(g.total_volume()));
  return std::min(1.0, p);
}

namespace {

bool draw_source_coin(const Graph& g, const ResolvedConfig& config, int v, std::mt19937_64& rng) {
  if (!config.forced_sources.empty())
    return std::binary_search(config.forced_sources.begin(), config.forced_sources.end(), v);
  std::bernoulli_distribution coin(source_probability(g, config, v));
  return coin(rng);
}

}  // namespace

std::vector<int> sample_sources(const Graph& g, const ResolvedConfig& config) {
  std::vector<int> sources;
  for (int v = 1; v <= g.vertex_count(); ++v) {
    auto rng = make_stream(config.master_seed, static_cast<std::uint64_t>(v), 0);
    if (draw_source_coin(g, config, v, rng)) sources.push_back(v);
  }
  return sources;
}

void TesterProgram::init(congest::VertexApi& api) {
  vertex_ = api.id();
  is_source_ = draw_source_coin(*graph_, *config_, vertex_, api.rng());
  if (is_source_) walks_[vertex_] = config_->walks;
}

void TesterProgram::on_round(congest::VertexApi& api, std::span<const congest::Message> inbox) {
  // Tuples received here were sent in round r-1 and carry step r-1, the same
  // step as the walks that stayed put last round.
  for (const auto& msg : inbox)
    for (const auto& t : msg.tuples) walks_[t.source] += t.count;

  census_.emplace_back(walks_.begin(), walks_.end());

  const int step_out = api.round();
  const bool last_step = step_out == static_cast<int>(config_->length);
  const auto neighbors = api.neighbors();
  const int degree = static_cast<int>(neighbors.size());

  std::map<int, long long> stays;
  std::map<int, std::vector<std::pair<int, long long>>> outgoing;  // dst -> (source, count)
  for (const auto& [source, count] : walks_) {
    long long remaining = count;
    std::binomial_distribution<long long> stay_coin(remaining, 0.5);
    const long long stay = stay_coin(api.rng());
    remaining -= stay;
    if (stay > 0) stays[source] += stay;
    // remaining walks pick a neighbor uniformly: peel one binomial per neighbor
    for (int j = 0; j < degree && remaining > 0; ++j) {
      long long to_neighbor;
      if (j == degree - 1) {
        to_neighbor = remaining;
      } else {
        std::binomial_distribution<long long> pick(remaining, 1.0 / static_cast<double>(degree - j));
        to_neighbor = pick(api.rng());
      }
      if (to_neighbor > 0) outgoing[neighbors[j]].emplace_back(source, to_neighbor);
      remaining -= to_neighbor;
    }
  }
  walks_.clear();

  if (last_step) {
    for (const auto& [source, count] : stays) ended_[source] += count;
  } else {
    walks_ = std::move(stays);
  }

  long long widest_message = 0;
  for (auto& [dst, entries] : outgoing) {
    widest_message = std::max(widest_message, static_cast<long long>(entries.size()));
    std::vector<congest::WalkTuple> tuples;
    tuples.reserve(entries.size());
    for (const auto& [source, count] : entries)
      tuples.push_back(congest::WalkTuple{source, count, step_out});
    api.send(dst, std::move(tuples));
  }
  if (static_cast<double>(widest_message) > config_->congestion_limit)
    api.halt(congest::Outcome::AbortedCongestion);
}

congest::Outcome threshold_verdict(const Graph& g, const ResolvedConfig& config, int v,
                                   const std::map<int, long long>& ended) {
  const double tau = rejection_threshold(g, config, v);
  for (const auto& [source, count] : ended)
    if (static_cast<double>(count) > tau) return congest::Outcome::Reject;
  return congest::Outcome::Accept;
}

congest::Outcome TesterProgram::finalize(congest::VertexApi& api) {
  for (const auto& msg : api.final_inbox())
    for (const auto& t : msg.tuples) ended_[t.source] += t.count;
  return threshold_verdict(*graph_, *config_, vertex_, ended_);
}

RunReport run_tester(const Graph& g, const TesterConfig& config,
                     const congest::EngineOptions& engine, const std::string& graph_name) {
  ResolvedConfig resolved = resolve_config(config, g);

  auto factory = [&](int) -> std::unique_ptr<congest::VertexProgram> {
    return std::make_unique<TesterProgram>(g, resolved);
  };
  congest::RunResult result =
      congest::run(g, factory, static_cast<int>(resolved.length), resolved.master_seed, engine);

  RunReport report;
  report.config = resolved;
  report.graph_name = graph_name;
  report.n = g.vertex_count();
  report.m = g.edge_count();
  report.verdicts = result.verdicts;
  report.rounds = result.rounds;
  report.halted = result.halted;
  report.rounds_executed = result.rounds_executed;
  report.seed = resolved.master_seed;

  for (int v = 1; v <= report.n; ++v) {
    const auto outcome = result.verdicts[static_cast<std::size_t>(v - 1)].outcome;
    if (outcome == congest::Outcome::Reject) report.rejecting.push_back(v);
    if (outcome == congest::Outcome::AbortedCongestion) report.aborted.push_back(v);
  }

  const bool completed = !result.halted &&
                         result.rounds_executed == static_cast<int>(resolved.length);
  for (int v = 1; v <= report.n; ++v) {
    const auto* program =
        dynamic_cast<const TesterProgram*>(result.programs[static_cast<std::size_t>(v - 1)].get());
    if (program == nullptr) continue;
    if (program->is_source()) report.sources.push_back(v);
    for (const auto& [source, count] : program->endpoint_counts())
      report.endpoint_counts[source][v] += count;
    const auto& census = program->step_census();
    for (std::size_t row = 0; row < census.size(); ++row) {
      for (const auto& [source, count] : census[row]) {
        auto& totals = report.walk_totals[source];
        if (totals.size() <= row) totals.resize(row + 1, 0);
        totals[row] += count;
      }
    }
  }
  if (completed) {
    const std::size_t final_step = static_cast<std::size_t>(resolved.length);
    for (const auto& [source, per_vertex] : report.endpoint_counts) {
      auto& totals = report.walk_totals[source];
      if (totals.size() <= final_step) totals.resize(final_step + 1, 0);
      for (const auto& [vertex, count] : per_vertex) totals[final_step] += count;
    }
  }

  for (int source : report.sources) {
    const auto it = report.walk_totals.find(source);
    const std::size_t expected_rows =
        static_cast<std::size_t>(result.rounds_executed) + (completed ? 1 : 0);
    if (it == report.walk_totals.end() || it->second.size() != expected_rows) {
      report.conservation_ok = false;
      report.conservation_note = "missing ledger rows for source " + std::to_string(source);
      break;
    }
    for (std::size_t step = 0; step < it->second.size(); ++step) {
      if (it->second[step] != resolved.walks) {
        report.conservation_ok = false;
        report.conservation_note = "source " + std::to_string(source) + " holds " +
                                   std::to_string(it->second[step]) + " walks at step " +
                                   std::to_string(step) + ", expected " +
                                   std::to_string(resolved.walks);
        break;
      }
    }
    if (!report.conservation_ok) break;
  }
  return report;
}

}  // namespace condtest
