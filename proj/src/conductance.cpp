#include "condtest/conductance.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace condtest {

long long crossing_edges(const Graph& g, const VertexSet& s) {
  long long crossing = 0;
  for (int v = 1; v <= g.vertex_count(); ++v) {
    if (!s.contains(v)) continue;
    for (int w : g.neighbors(v))
      if (!s.contains(w)) ++crossing;
  }
  return crossing;
}

double cut_conductance(const Graph& g, const VertexSet& s) {
  if (s.empty() || s.size() == g.vertex_count())
    throw Error(ErrorCode::EmptySide, "cut requires a nonempty proper vertex subset");
  const long long cross = crossing_edges(g, s);
  const long long small_vol = std::min(s.volume(), g.total_volume() - s.volume());
  return static_cast<double>(cross) / static_cast<double>(small_vol);
}

Cut make_cut(const Graph& g, VertexSet side) {
  double phi = cut_conductance(g, side);
  long long cross = crossing_edges(g, side);
  return Cut{std::move(side), cross, phi};
}

namespace {

struct BruteCut {
  bool found = false;
  long long crossing = 0;
  long long small_volume = 0;
  std::uint32_t witness = 0;
};

// Denominator convention: a zero-crossing cut has conductance 0 even when the
// small side has volume 0 (isolated vertices in an induced subgraph).
long long den_of(long long crossing, long long small_volume) {
  return crossing == 0 ? 1 : small_volume;
}

// true when c1/v1 < c2/v2 under the convention above
bool fraction_less(long long c1, long long v1, long long c2, long long v2) {
  return c1 * den_of(c2, v2) < c2 * den_of(c1, v1);
}

bool fraction_equal(long long c1, long long v1, long long c2, long long v2) {
  return c1 * den_of(c2, v2) == c2 * den_of(c1, v1);
}

// Exhaustive minimum-conductance cut over 0-based adjacency lists.  Vertex 0
// is pinned inside S, so each cut is visited exactly once; a Gray-code walk
// keeps the per-step update O(deg).  Tolerates disconnected inputs.
BruteCut min_cut_over_subsets(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  BruteCut best;
  if (n < 2) return best;

  long long total_volume = 0;
  for (const auto& list : adj) total_volume += static_cast<long long>(list.size());

  std::vector<char> in_s(static_cast<std::size_t>(n), 0);
  in_s[0] = 1;
  int size_s = 1;
  long long vol_s = static_cast<long long>(adj[0].size());
  long long crossing = vol_s;
  std::uint32_t mask = 1;
  const std::uint32_t full_mask =
      n == 32 ? 0xffffffffu : ((std::uint32_t{1} << n) - 1);

  auto consider = [&]() {
    if (size_s == n) return;  // complement empty: not a cut
    const long long vol_comp = total_volume - vol_s;
    long long small_volume;
    std::uint32_t witness;
    if (vol_s < vol_comp) {
      small_volume = vol_s;
      witness = mask;
    } else if (vol_s > vol_comp) {
      small_volume = vol_comp;
      witness = full_mask ^ mask;
    } else {
      small_volume = vol_s;
      witness = std::min(mask, full_mask ^ mask);
    }
    if (!best.found || fraction_less(crossing, small_volume, best.crossing, best.small_volume) ||
        (fraction_equal(crossing, small_volume, best.crossing, best.small_volume) &&
         witness < best.witness)) {
      best = BruteCut{true, crossing, small_volume, witness};
    }
  };

  consider();
  const std::uint64_t steps = (n == 1) ? 0 : (std::uint64_t{1} << (n - 1)) - 1;
  for (std::uint64_t t = 1; t <= steps; ++t) {
    const int v = 1 + std::countr_zero(t);  // vertex toggled by the Gray-code step
    long long in_count = 0;
    for (int w : adj[static_cast<std::size_t>(v)])
      if (in_s[static_cast<std::size_t>(w)] && w != v) ++in_count;
    const long long deg = static_cast<long long>(adj[static_cast<std::size_t>(v)].size());
    if (in_s[static_cast<std::size_t>(v)]) {
      in_s[static_cast<std::size_t>(v)] = 0;
      --size_s;
      vol_s -= deg;
      crossing += 2 * in_count - deg;
      mask &= ~(std::uint32_t{1} << v);
    } else {
      in_s[static_cast<std::size_t>(v)] = 1;
      ++size_s;
      vol_s += deg;
      crossing += deg - 2 * in_count;
      mask |= std::uint32_t{1} << v;
    }
    consider();
  }
  return best;
}

std::vector<std::vector<int>> zero_based_adjacency(const Graph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 1; v <= g.vertex_count(); ++v) {
    auto nb = g.neighbors(v);
    auto& list = adj[static_cast<std::size_t>(v - 1)];
    list.reserve(nb.size());
    for (int w : nb) list.push_back(w - 1);
  }
  return adj;
}

}  // namespace

MinConductanceCut min_conductance_bruteforce(const Graph& g) {
  if (g.vertex_count() > kBruteForceMaxVertices)
    throw Error(ErrorCode::TooLarge,
                "exhaustive search limited to n <= " + std::to_string(kBruteForceMaxVertices));
  BruteCut best = min_cut_over_subsets(zero_based_adjacency(g));
  if (!best.found)
    throw Error(ErrorCode::EmptySide, "graph has no proper cut");
  VertexSet witness = VertexSet::from_mask(g, best.witness);
  const double phi =
      static_cast<double>(best.crossing) / static_cast<double>(den_of(best.crossing, best.small_volume));
  return MinConductanceCut{phi, std::move(witness), best.crossing};
}

double cheeger_constant_lazy(const Graph& g) {
  return min_conductance_bruteforce(g).conductance / 2.0;
}

std::optional<VertexSet> find_low_conductance_set(const Graph& g, double threshold) {
  if (g.vertex_count() > kBruteForceMaxVertices)
    throw Error(ErrorCode::TooLarge,
                "exhaustive search limited to n <= " + std::to_string(kBruteForceMaxVertices));
  std::vector<int> remaining;
  for (int v = 1; v <= g.vertex_count(); ++v) remaining.push_back(v);

  VertexSet accumulated(g);
  while (remaining.size() >= 2) {
    // induced subgraph on the remaining vertices, compact 0-based ids
    std::vector<int> local_of(static_cast<std::size_t>(g.vertex_count()) + 1, -1);
    for (std::size_t i = 0; i < remaining.size(); ++i)
      local_of[static_cast<std::size_t>(remaining[i])] = static_cast<int>(i);
    std::vector<std::vector<int>> adj(remaining.size());
    for (std::size_t i = 0; i < remaining.size(); ++i)
      for (int w : g.neighbors(remaining[i]))
        if (local_of[static_cast<std::size_t>(w)] >= 0)
          adj[i].push_back(local_of[static_cast<std::size_t>(w)]);

    BruteCut best = min_cut_over_subsets(adj);
    if (!best.found) break;
    const double phi =
        static_cast<double>(best.crossing) / static_cast<double>(den_of(best.crossing, best.small_volume));
    if (phi > threshold) break;

    std::vector<int> extracted;
    for (std::size_t i = 0; i < remaining.size(); ++i)
      if (best.witness & (std::uint32_t{1} << i)) extracted.push_back(remaining[i]);
    for (int v : extracted) accumulated.insert(v);
    std::vector<int> next;
    for (int v : remaining)
      if (!accumulated.contains(v)) next.push_back(v);
    remaining = std::move(next);
  }
  if (accumulated.empty()) return std::nullopt;
  return accumulated;
}

}  // namespace condtest
