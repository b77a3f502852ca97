#pragma once

#include <iosfwd>
#include <string>

#include "condtest/graph.hpp"

namespace condtest {

/// Edge-list text format: first significant line `n m`, then m lines `u v`.
/// Blank lines and `#` comments are ignored.  Labels may be arbitrary
/// integers; when they are not exactly 1..n they are remapped to 1..n in
/// ascending label order.  Errors carry 1-based line numbers.
Graph parse_edge_list(std::istream& in, const std::string& source_name);

/// Loads from a file; throws FileNotFound / ValidationFailed.
Graph load_edge_list(const std::string& path);

void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace condtest
