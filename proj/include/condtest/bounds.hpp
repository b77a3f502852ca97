#pragma once

#include <vector>

#include "condtest/conductance.hpp"
#include "condtest/spectral.hpp"

namespace condtest {

inline constexpr double kBoundTolerance = 1e-9;

struct TrapBoundRow {
  long long ell;
  double trap;
  double bound;
  bool pass;
};

struct TrapBoundReport {
  double delta = 0;  // cut conductance plugged into the bound
  double eta = 0;    // subset form only; 0 for the whole-set form
  std::vector<TrapBoundRow> rows;
  bool all_pass = true;
};

/// Exact average trap probability of the cut side against the lower bound
/// vol(S)/2m + (5/6 - vol(S)/2m)(1-3d)^l, for l = 0..ell_max.
/// Throws DeltaTooLarge when the cut conductance is >= 1/3.
TrapBoundReport verify_trap_bound(const SpectralBundle& b, const Cut& s, long long ell_max);

/// Subset variant: trap(T, l) against
/// vol(T)/2m + ((5/6)(1 - sqrt(6 eta/5))^2 - vol(T)/2m)(1-3d)^l with
/// eta = 1 - vol(T)/vol(S).  T = S (eta = 0) degenerates to the whole-set
/// bound.  Throws NotSubset / EtaOutOfRange / DeltaTooLarge.
TrapBoundReport verify_subset_trap_bound(const SpectralBundle& b, const Cut& s,
                                         const VertexSet& t, long long ell_max);

struct StickyVertex {
  int vertex;
  double trap;            // trap(vertex, region, ell)
  double bound;           // subset bound evaluated for the recorded region
  double eta_effective;   // 1 - vol(region)/vol(S)
  std::vector<int> region;
};

struct StickySetResult {
  VertexSet members;
  std::vector<StickyVertex> detail;
};

/// Iteratively extracts vertices whose walks end, with probability above the
/// subset bound, inside a recorded region of volume >= (1-eta) vol(S).
/// Candidate regions are filled greedily by descending individual trap
/// probability over the remaining vertices.  vol(members) ends up > eta vol(S).
StickySetResult sticky_set(const SpectralBundle& b, const Cut& s, double eta, long long ell);

struct CheegerReport {
  double phi_star;
  double lambda2;
  double spectral_gap;  // 1 - lambda2
  bool lower_pass;      // phi*^2/2 <= gap
  bool upper_pass;      // gap <= 2 phi*
  bool pass() const { return lower_pass && upper_pass; }
};

/// phi*^2/2 <= 1 - lambda2 <= 2 phi*, with phi* from the exhaustive search
/// (n <= kBruteForceMaxVertices), tolerance 1e-8.
CheegerReport verify_cheeger_bounds(const SpectralBundle& b, const Graph& g);

struct MixingReport {
  long long ell;
  double max_deviation;  // max over (u,v) of |M^l(v,u) - deg(v)/2m|
  double bound;          // lambda2^l
  double max_violation;  // max(0, max_deviation - bound)
  bool pass;             // max_violation <= 1e-9
};

MixingReport verify_mixing_bound(const SpectralBundle& b, long long ell);

}  // namespace condtest
