#include "condtest/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "condtest/rng.hpp"

namespace condtest {

namespace {

[[noreturn]] void infeasible(const std::string& what) {
  throw Error(ErrorCode::InfeasibleParameters, what);
}

void add_clique(std::vector<std::pair<int, int>>& edges, int first, int k) {
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) edges.emplace_back(first + i, first + j);
}

}  // namespace

Graph make_complete(int n) {
  if (n < 2) infeasible("complete graph needs n >= 2");
  std::vector<std::pair<int, int>> edges;
  add_clique(edges, 1, n);
  return Graph::from_edges(n, edges);
}

Graph make_cycle(int n) {
  if (n < 3) infeasible("cycle needs n >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(n, 1);
  return Graph::from_edges(n, edges);
}

Graph make_path(int n) {
  if (n < 2) infeasible("path needs n >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

Graph make_dumbbell(int k) { return make_barbell_path(k, 0); }

Graph make_barbell_path(int k, int len) {
  if (k < 2) infeasible("dumbbell/barbell needs clique size k >= 2");
  if (len < 0) infeasible("barbell path length must be >= 0");
  const int n = 2 * k + len;
  std::vector<std::pair<int, int>> edges;
  add_clique(edges, 1, k);
  add_clique(edges, k + len + 1, k);
  for (int v = k; v <= k + len; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

Graph make_random_regular(int n, int d, std::uint64_t seed) {
  if (d < 1 || d >= n) infeasible("regular graph needs 1 <= d < n");
  if ((static_cast<long long>(n) * d) % 2 != 0) infeasible("regular graph needs n*d even");

  constexpr int kMaxAttempts = 20000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    auto rng = make_stream(seed, 0x7265670000ULL, static_cast<std::uint64_t>(attempt));
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
    for (int v = 1; v <= n; ++v)
      for (int i = 0; i < d; ++i) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);

    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> edges;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) { ok = false; break; }
      auto key = std::minmax(u, v);
      if (!seen.insert({key.first, key.second}).second) { ok = false; break; }
      edges.emplace_back(u, v);
    }
    if (!ok) continue;
    try {
      return Graph::from_edges(n, edges);  // rejects disconnected matchings
    } catch (const Error&) {
      continue;
    }
  }
  infeasible("could not realize a connected simple " + std::to_string(d) + "-regular graph on " +
             std::to_string(n) + " vertices");
}

GenSpec parse_gen_spec(const std::string& text) {
  GenSpec spec;
  std::stringstream ss(text);
  std::string token;
  if (!std::getline(ss, token, ':') || token.empty())
    throw Error(ErrorCode::BadFlags, "empty generator spec");
  spec.family = token;
  while (std::getline(ss, token, ':')) {
    try {
      std::size_t pos = 0;
      long long value = std::stoll(token, &pos);
      if (pos != token.size()) throw std::invalid_argument(token);
      spec.params.push_back(value);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadFlags, "generator parameter '" + token + "' is not an integer");
    }
  }
  return spec;
}

std::string describe(const GenSpec& spec) {
  std::string out = spec.family;
  for (long long p : spec.params) out += ":" + std::to_string(p);
  return out;
}

Graph generate(const GenSpec& spec, std::uint64_t seed) {
  auto want = [&](std::size_t count) {
    if (spec.params.size() != count)
      throw Error(ErrorCode::BadFlags, "generator '" + spec.family + "' expects " +
                                           std::to_string(count) + " parameter(s)");
  };
  auto as_int = [&](std::size_t i) {
    long long v = spec.params[i];
    if (v < 0 || v > 1'000'000) infeasible("generator parameter out of range: " + std::to_string(v));
    return static_cast<int>(v);
  };

  if (spec.family == "complete") { want(1); return make_complete(as_int(0)); }
  if (spec.family == "cycle") { want(1); return make_cycle(as_int(0)); }
  if (spec.family == "path") { want(1); return make_path(as_int(0)); }
  if (spec.family == "dumbbell") { want(1); return make_dumbbell(as_int(0)); }
  if (spec.family == "regular" || spec.family == "random_regular") {
    want(2);
    return make_random_regular(as_int(0), as_int(1), seed);
  }
  if (spec.family == "barbell" || spec.family == "barbell_path") {
    want(2);
    return make_barbell_path(as_int(0), as_int(1));
  }
  throw Error(ErrorCode::BadFlags, "unknown generator family '" + spec.family + "'");
}

}  // namespace condtest
