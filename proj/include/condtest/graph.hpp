#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "condtest/error.hpp"

namespace condtest {

/// Undirected simple connected graph with dense vertex ids 1..n.
/// Immutable after construction; safe to share across threads.
class Graph {
 public:
  /// Builds from an edge list and validates every invariant (no self-loops,
  /// no parallel edges, no isolated vertices, connected).  Throws Error.
  static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);
  static Graph from_edges(int n, std::initializer_list<std::pair<int, int>> edges);

  /// Builds without any checking; pair with validate() to inspect defects.
  static Graph unchecked(int n, std::vector<std::vector<int>> adjacency);

  int vertex_count() const { return n_; }
  long long edge_count() const { return m_; }
  long long total_volume() const { return 2 * m_; }
  int degree(int v) const { return static_cast<int>(adjacency_[v - 1].size()); }
  std::span<const int> neighbors(int v) const { return adjacency_[v - 1]; }
  bool has_edge(int u, int v) const;

  /// All edges as (u, v) with u < v, sorted.
  std::vector<std::pair<int, int>> edges() const;

 private:
  Graph(int n, long long m, std::vector<std::vector<int>> adjacency)
      : n_(n), m_(m), adjacency_(std::move(adjacency)) {}

  int n_ = 0;
  long long m_ = 0;
  std::vector<std::vector<int>> adjacency_;  // sorted neighbor lists, index v-1
};

struct GraphDefect {
  ErrorCode code;
  std::string detail;
};

/// Checks every Graph invariant and returns the first violation found
/// (self-loop, parallel edge, asymmetric adjacency, isolated vertex,
/// disconnected), or nullopt if the graph is well formed.
std::optional<GraphDefect> validate(const Graph& g);

/// Subset of vertices with a cached volume (sum of member degrees).
class VertexSet {
 public:
  explicit VertexSet(const Graph& g)
      : graph_(&g), members_(static_cast<std::size_t>(g.vertex_count()), 0) {}

  static VertexSet all(const Graph& g);
  static VertexSet of(const Graph& g, std::span<const int> vertices);
  static VertexSet of(const Graph& g, std::initializer_list<int> vertices);
  /// Bit i-1 of `mask` selects vertex i; requires n <= 64.
  static VertexSet from_mask(const Graph& g, std::uint64_t mask);

  bool contains(int v) const { return members_[static_cast<std::size_t>(v - 1)] != 0; }
  void insert(int v);
  void erase(int v);
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  long long volume() const { return volume_; }
  VertexSet complement() const;
  std::vector<int> members() const;
  std::uint64_t mask() const;
  const Graph& graph() const { return *graph_; }

 private:
  const Graph* graph_;
  std::vector<char> members_;
  int size_ = 0;
  long long volume_ = 0;
};

bool operator==(const VertexSet& a, const VertexSet& b);

}  // namespace condtest
