#include "condtest/graph.hpp"

#include <algorithm>
#include <sstream>

namespace condtest {

namespace {

std::string edge_str(int u, int v) {
  std::ostringstream os;
  os << "(" << u << ", " << v << ")";
  return os.str();
}

// BFS reachability from vertex 1 over an adjacency structure.
bool reaches_all(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  int visited = 1;
  while (!queue.empty()) {
    int u = queue.back();
    queue.pop_back();
    for (int w : adj[static_cast<std::size_t>(u)]) {
      if (w < 1 || w > n) continue;
      if (!seen[static_cast<std::size_t>(w - 1)]) {
        seen[static_cast<std::size_t>(w - 1)] = 1;
        ++visited;
        queue.push_back(w - 1);
      }
    }
  }
  return visited == n;
}

}  // namespace

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  if (n < 1) throw Error(ErrorCode::InfeasibleParameters, "vertex count must be positive");
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [u, v] : edges) {
    if (u < 1 || u > n || v < 1 || v > n)
      throw Error(ErrorCode::ValidationFailed, "vertex id out of range in edge " + edge_str(u, v));
    if (u == v) throw Error(ErrorCode::SelfLoop, "edge " + edge_str(u, v));
    adj[static_cast<std::size_t>(u - 1)].push_back(v);
    adj[static_cast<std::size_t>(v - 1)].push_back(u);
  }
  for (int v = 1; v <= n; ++v) {
    auto& list = adj[static_cast<std::size_t>(v - 1)];
    std::sort(list.begin(), list.end());
    auto dup = std::adjacent_find(list.begin(), list.end());
    if (dup != list.end())
      throw Error(ErrorCode::ParallelEdge, "edge " + edge_str(v, *dup) + " appears more than once");
    if (list.empty())
      throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(v) + " has degree 0");
  }
  if (!reaches_all(adj)) throw Error(ErrorCode::Disconnected, "graph is not connected");
  return Graph(n, static_cast<long long>(edges.size()), std::move(adj));
}

Graph Graph::from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
  return from_edges(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
}

Graph Graph::unchecked(int n, std::vector<std::vector<int>> adjacency) {
  long long deg_sum = 0;
  for (auto& list : adjacency) {
    std::sort(list.begin(), list.end());
    deg_sum += static_cast<long long>(list.size());
  }
  return Graph(n, deg_sum / 2, std::move(adjacency));
}

bool Graph::has_edge(int u, int v) const {
  const auto& list = adjacency_[static_cast<std::size_t>(u - 1)];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (int u = 1; u <= n_; ++u)
    for (int v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::optional<GraphDefect> validate(const Graph& g) {
  const int n = g.vertex_count();
  long long deg_sum = 0;
  for (int v = 1; v <= n; ++v) {
    auto nb = g.neighbors(v);
    deg_sum += static_cast<long long>(nb.size());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      int w = nb[i];
      if (w == v) return GraphDefect{ErrorCode::SelfLoop, "vertex " + std::to_string(v)};
      if (w < 1 || w > n)
        return GraphDefect{ErrorCode::AsymmetricAdjacency,
                           "vertex " + std::to_string(v) + " lists out-of-range neighbor " + std::to_string(w)};
      if (i > 0 && nb[i] == nb[i - 1])
        return GraphDefect{ErrorCode::ParallelEdge, "edge " + edge_str(v, w)};
    }
  }
  for (int v = 1; v <= n; ++v)
    for (int w : g.neighbors(v))
      if (!g.has_edge(w, v))
        return GraphDefect{ErrorCode::AsymmetricAdjacency,
                           "edge " + edge_str(v, w) + " missing its reverse"};
  if (deg_sum != 2 * g.edge_count())
    return GraphDefect{ErrorCode::AsymmetricAdjacency, "degree sum does not equal 2m"};
  for (int v = 1; v <= n; ++v)
    if (g.degree(v) == 0) return GraphDefect{ErrorCode::IsolatedVertex, "vertex " + std::to_string(v)};
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v)
    adj[static_cast<std::size_t>(v - 1)].assign(g.neighbors(v).begin(), g.neighbors(v).end());
  if (!reaches_all(adj)) return GraphDefect{ErrorCode::Disconnected, "graph is not connected"};
  return std::nullopt;
}

VertexSet VertexSet::all(const Graph& g) {
  VertexSet s(g);
  for (int v = 1; v <= g.vertex_count(); ++v) s.insert(v);
  return s;
}

VertexSet VertexSet::of(const Graph& g, std::span<const int> vertices) {
  VertexSet s(g);
  for (int v : vertices) s.insert(v);
  return s;
}

VertexSet VertexSet::of(const Graph& g, std::initializer_list<int> vertices) {
  return of(g, std::span<const int>(vertices.begin(), vertices.size()));
}

VertexSet VertexSet::from_mask(const Graph& g, std::uint64_t mask) {
  if (g.vertex_count() > 64)
    throw Error(ErrorCode::TooLarge, "mask construction requires n <= 64");
  VertexSet s(g);
  for (int v = 1; v <= g.vertex_count(); ++v)
    if (mask & (1ULL << (v - 1))) s.insert(v);
  return s;
}

void VertexSet::insert(int v) {
  auto& slot = members_[static_cast<std::size_t>(v - 1)];
  if (slot) return;
  slot = 1;
  ++size_;
  volume_ += graph_->degree(v);
}

void VertexSet::erase(int v) {
  auto& slot = members_[static_cast<std::size_t>(v - 1)];
  if (!slot) return;
  slot = 0;
  --size_;
  volume_ -= graph_->degree(v);
}

VertexSet VertexSet::complement() const {
  VertexSet s(*graph_);
  for (int v = 1; v <= graph_->vertex_count(); ++v)
    if (!contains(v)) s.insert(v);
  return s;
}

std::vector<int> VertexSet::members() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (int v = 1; v <= graph_->vertex_count(); ++v)
    if (contains(v)) out.push_back(v);
  return out;
}

std::uint64_t VertexSet::mask() const {
  if (graph_->vertex_count() > 64)
    throw Error(ErrorCode::TooLarge, "mask extraction requires n <= 64");
  std::uint64_t m = 0;
  for (int v = 1; v <= graph_->vertex_count(); ++v)
    if (contains(v)) m |= 1ULL << (v - 1);
  return m;
}

bool operator==(const VertexSet& a, const VertexSet& b) {
  if (a.graph().vertex_count() != b.graph().vertex_count()) return false;
  for (int v = 1; v <= a.graph().vertex_count(); ++v)
    if (a.contains(v) != b.contains(v)) return false;
  return true;
}

}  // namespace condtest
