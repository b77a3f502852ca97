#include "condtest/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace condtest {

namespace {

// Walks the exact distribution forward once per row; trap values for
// consecutive lengths share the matvec chain.
TrapBoundReport bound_rows(const SpectralBundle& b, const VertexSet& region, double delta,
                           double eta, double limit_term, double head_coefficient,
                           long long ell_max) {
  TrapBoundReport report;
  report.delta = delta;
  report.eta = eta;

  Eigen::VectorXd p = Eigen::VectorXd::Zero(b.n);
  for (int v : region.members()) p(v - 1) = b.degrees(v - 1);
  p /= static_cast<double>(region.volume());

  const double base = 1.0 - 3.0 * delta;
  for (long long ell = 0; ell <= ell_max; ++ell) {
    double trap = 0;
    for (int v : region.members()) trap += p(v - 1);
    const double bound = limit_term + (head_coefficient - limit_term) * std::pow(base, static_cast<double>(ell));
    const bool pass = trap >= bound - kBoundTolerance;
    report.rows.push_back(TrapBoundRow{ell, trap, bound, pass});
    report.all_pass = report.all_pass && pass;
    if (ell < ell_max) {
      p = b.walk_matrix * p;
      if ((ell + 1) % 64 == 0) p /= p.sum();
    }
  }
  return report;
}

double subset_head_coefficient(double eta) {
  const double shrink = 1.0 - std::sqrt(6.0 * eta / 5.0);
  return (5.0 / 6.0) * shrink * shrink;
}

}  // namespace

TrapBoundReport verify_trap_bound(const SpectralBundle& b, const Cut& s, long long ell_max) {
  const double delta = s.conductance;
  if (delta >= 1.0 / 3.0)
    throw Error(ErrorCode::DeltaTooLarge, "cut conductance " + std::to_string(delta) + " is >= 1/3");
  const double pi_s = static_cast<double>(s.side.volume()) / static_cast<double>(2 * b.edge_count);
  return bound_rows(b, s.side, delta, 0.0, pi_s, 5.0 / 6.0, ell_max);
}

TrapBoundReport verify_subset_trap_bound(const SpectralBundle& b, const Cut& s,
                                         const VertexSet& t, long long ell_max) {
  for (int v : t.members())
    if (!s.side.contains(v))
      throw Error(ErrorCode::NotSubset, "vertex " + std::to_string(v) + " is not in the cut side");
  if (t.empty()) throw std::invalid_argument("subset must be nonempty");
  const double delta = s.conductance;
  if (delta >= 1.0 / 3.0)
    throw Error(ErrorCode::DeltaTooLarge, "cut conductance " + std::to_string(delta) + " is >= 1/3");
  const double eta =
      1.0 - static_cast<double>(t.volume()) / static_cast<double>(s.side.volume());
  if (eta >= 5.0 / 6.0)
    throw Error(ErrorCode::EtaOutOfRange, "eta = " + std::to_string(eta) + " must be < 5/6");
  const double pi_t = static_cast<double>(t.volume()) / static_cast<double>(2 * b.edge_count);
  return bound_rows(b, t, delta, eta, pi_t, subset_head_coefficient(eta), ell_max);
}

StickySetResult sticky_set(const SpectralBundle& b, const Cut& s, double eta, long long ell) {
  const Graph& g = s.side.graph();
  if (g.vertex_count() > kBruteForceMaxVertices)
    throw Error(ErrorCode::TooLarge,
                "sticky-set extraction limited to n <= " + std::to_string(kBruteForceMaxVertices));
  if (eta < 0.0 || eta >= 5.0 / 6.0)
    throw Error(ErrorCode::EtaOutOfRange, "eta must lie in [0, 5/6)");
  const double delta = s.conductance;
  if (delta >= 1.0 / 3.0)
    throw Error(ErrorCode::DeltaTooLarge, "cut conductance " + std::to_string(delta) + " is >= 1/3");

  const long long vol_s = s.side.volume();
  const double target_volume = (1.0 - eta) * static_cast<double>(vol_s);

  StickySetResult result{VertexSet(g), {}};
  std::vector<int> remaining = s.side.members();

  while (true) {
    long long remaining_volume = 0;
    for (int v : remaining) remaining_volume += g.degree(v);
    if (static_cast<double>(remaining_volume) < target_volume) break;

    // Rank the remaining vertices by how much of their walk mass stays among
    // the remaining set, then fill the candidate region to the volume target.
    VertexSet remaining_set = VertexSet::of(g, remaining);
    std::vector<std::pair<double, int>> ranked;
    for (int v : remaining)
      ranked.emplace_back(trap_probability(b, v, remaining_set, ell), v);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& c) {
      if (a.first != c.first) return a.first > c.first;
      return a.second < c.second;
    });

    VertexSet region(g);
    long long region_volume = 0;
    for (const auto& [score, v] : ranked) {
      if (static_cast<double>(region_volume) >= target_volume) break;
      region.insert(v);
      region_volume += g.degree(v);
    }
    if (static_cast<double>(region_volume) < target_volume) break;

    const double eta_effective =
        1.0 - static_cast<double>(region.volume()) / static_cast<double>(vol_s);
    const double pi_t =
        static_cast<double>(region.volume()) / static_cast<double>(2 * b.edge_count);
    const double bound =
        pi_t + (subset_head_coefficient(std::max(eta_effective, 0.0)) - pi_t) *
                   std::pow(1.0 - 3.0 * delta, static_cast<double>(ell));

    // The region's average trap probability meets the bound, so its best
    // vertex does too.
    int best_vertex = -1;
    double best_trap = -1.0;
    for (int v : region.members()) {
      const double tv = trap_probability(b, v, region, ell);
      if (tv > best_trap) {
        best_trap = tv;
        best_vertex = v;
      }
    }
    result.members.insert(best_vertex);
    result.detail.push_back(
        StickyVertex{best_vertex, best_trap, bound, eta_effective, region.members()});
    remaining.erase(std::find(remaining.begin(), remaining.end(), best_vertex));
    if (remaining.empty()) break;
  }
  return result;
}

CheegerReport verify_cheeger_bounds(const SpectralBundle& b, const Graph& g) {
  const double phi_star = cheeger_constant_lazy(g);
  const double lambda2 = b.lambda2();
  const double gap = 1.0 - lambda2;
  constexpr double tol = 1e-8;
  return CheegerReport{phi_star, lambda2, gap,
                       phi_star * phi_star / 2.0 <= gap + tol,
                       gap <= 2.0 * phi_star + tol};
}

MixingReport verify_mixing_bound(const SpectralBundle& b, long long ell) {
  Eigen::MatrixXd power = walk_matrix_power(b, ell);
  double max_dev = 0;
  for (int u = 0; u < b.n; ++u)
    for (int v = 0; v < b.n; ++v)
      max_dev = std::max(max_dev, std::abs(power(v, u) - b.stationary(v)));
  const double bound = std::pow(b.lambda2(), static_cast<double>(ell));
  const double violation = std::max(0.0, max_dev - bound);
  return MixingReport{ell, max_dev, bound, violation, violation <= kBoundTolerance};
}

}  // namespace condtest
