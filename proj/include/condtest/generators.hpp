#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "condtest/graph.hpp"

namespace condtest {

Graph make_complete(int n);
Graph make_cycle(int n);
Graph make_path(int n);

/// Two K_k cliques joined by a single bridge edge (vertices k and k+1); n = 2k.
Graph make_dumbbell(int k);

/// Two K_k cliques joined by a path of `len` extra vertices; len = 0 is the
/// plain dumbbell.  n = 2k + len.
Graph make_barbell_path(int k, int len);

/// Random d-regular simple connected graph via the configuration model with
/// rejection; deterministic for a fixed seed.  Requires n*d even, 1 <= d < n.
Graph make_random_regular(int n, int d, std::uint64_t seed);

/// Parsed `family:param[:param]` generator description.
/// Families: complete:N, cycle:N, path:N, dumbbell:K, regular:N:D, barbell:K:LEN.
struct GenSpec {
  std::string family;
  std::vector<long long> params;
};

GenSpec parse_gen_spec(const std::string& text);  // throws BadFlags
Graph generate(const GenSpec& spec, std::uint64_t seed);
std::string describe(const GenSpec& spec);

}  // namespace condtest
