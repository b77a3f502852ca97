#include "condtest/edge_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace condtest {

namespace {

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
  throw Error(ErrorCode::ValidationFailed, source + ":" + std::to_string(line) + ": " + what);
}

bool significant(const std::string& line) {
  for (char c : line) {
    if (c == '#') return false;
    if (!std::isspace(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

}  // namespace

Graph parse_edge_list(std::istream& in, const std::string& source_name) {
  std::string line;
  int line_no = 0;
  long long n = -1, m = -1;
  std::vector<std::pair<long long, long long>> raw_edges;
  std::vector<int> edge_lines;

  while (std::getline(in, line)) {
    ++line_no;
    if (!significant(line)) continue;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> m) || n < 1 || m < 0)
        fail(source_name, line_no, "expected header 'n m'");
      std::string rest;
      if (ls >> rest) fail(source_name, line_no, "trailing token '" + rest + "' after header");
      continue;
    }
    long long u, v;
    if (!(ls >> u >> v)) fail(source_name, line_no, "expected edge 'u v'");
    std::string rest;
    if (ls >> rest) fail(source_name, line_no, "trailing token '" + rest + "' after edge");
    if (static_cast<long long>(raw_edges.size()) == m)
      fail(source_name, line_no, "more than the declared " + std::to_string(m) + " edges");
    raw_edges.emplace_back(u, v);
    edge_lines.push_back(line_no);
  }
  if (n < 0) throw Error(ErrorCode::ValidationFailed, source_name + ": empty input");
  if (static_cast<long long>(raw_edges.size()) != m)
    throw Error(ErrorCode::ValidationFailed,
                source_name + ": declared " + std::to_string(m) + " edges but found " +
                    std::to_string(raw_edges.size()));

  // Re-map arbitrary labels to dense ids 1..n (ascending label order keeps the
  // mapping reproducible).  Exact 1..n labels map to themselves.
  std::set<long long> labels;
  for (auto& [u, v] : raw_edges) {
    labels.insert(u);
    labels.insert(v);
  }
  if (static_cast<long long>(labels.size()) > n)
    throw Error(ErrorCode::ValidationFailed,
                source_name + ": " + std::to_string(labels.size()) +
                    " distinct labels exceed declared n = " + std::to_string(n));
  std::map<long long, int> id_of;
  int next_id = 1;
  for (long long label : labels) id_of[label] = next_id++;

  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;
  edges.reserve(raw_edges.size());
  for (std::size_t i = 0; i < raw_edges.size(); ++i) {
    int u = id_of[raw_edges[i].first];
    int v = id_of[raw_edges[i].second];
    if (u == v)
      fail(source_name, edge_lines[i], "self-loop at vertex " + std::to_string(raw_edges[i].first));
    auto key = std::minmax(u, v);
    if (!seen.insert({key.first, key.second}).second)
      fail(source_name, edge_lines[i], "duplicate edge");
    edges.emplace_back(u, v);
  }
  if (static_cast<long long>(labels.size()) < n)
    throw Error(ErrorCode::ValidationFailed,
                source_name + ": only " + std::to_string(labels.size()) +
                    " of the declared " + std::to_string(n) +
                    " vertices appear in edges (isolated vertices are not allowed)");

  try {
    return Graph::from_edges(static_cast<int>(n), edges);
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationFailed, source_name + ": " + e.what());
  }
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, path);
  return parse_edge_list(in, path);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << " " << g.edge_count() << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

}  // namespace condtest
