#pragma once

#include <optional>

#include "condtest/graph.hpp"

namespace condtest {

/// Largest vertex count accepted by the exhaustive-subset operations.
inline constexpr int kBruteForceMaxVertices = 24;

/// Number of edges with exactly one endpoint in `s`.
long long crossing_edges(const Graph& g, const VertexSet& s);

/// E(S, S-bar) / min(vol(S), vol(S-bar)); throws EmptySide for S empty or S = V.
double cut_conductance(const Graph& g, const VertexSet& s);

struct Cut {
  VertexSet side;
  long long crossing;
  double conductance;
};

Cut make_cut(const Graph& g, VertexSet side);

struct MinConductanceCut {
  double conductance;
  VertexSet witness;   // the side with volume <= m; smallest bitmask among ties
  long long crossing;
};

/// Exhaustive minimum over all 2^(n-1) cuts; n <= kBruteForceMaxVertices.
/// Ties are broken toward the witness whose membership bitmask (vertex 1 in
/// the lowest bit) is numerically smallest.
MinConductanceCut min_conductance_bruteforce(const Graph& g);

/// Conductance of the lazy-walk chain: half the minimum cut conductance.
double cheeger_constant_lazy(const Graph& g);

/// Repeatedly extracts a cut of conductance <= threshold from the induced
/// subgraph on the remaining vertices and unions the small side into the
/// result.  Returns nullopt when the very first step finds no such cut.
std::optional<VertexSet> find_low_conductance_set(const Graph& g, double threshold);

}  // namespace condtest
