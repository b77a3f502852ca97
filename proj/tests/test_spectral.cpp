#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>

#include "condtest/bounds.hpp"
#include "condtest/conductance.hpp"
#include "condtest/generators.hpp"
#include "condtest/rng.hpp"
#include "condtest/spectral.hpp"

using namespace condtest;

namespace {

std::vector<Graph> fixture_graphs() {
  std::vector<Graph> graphs;
  graphs.push_back(make_complete(2));
  graphs.push_back(make_complete(4));
  graphs.push_back(make_cycle(4));
  graphs.push_back(make_cycle(9));
  graphs.push_back(make_path(6));
  graphs.push_back(make_dumbbell(4));
  graphs.push_back(make_dumbbell(5));
  graphs.push_back(make_random_regular(10, 3, 7));
  graphs.push_back(make_barbell_path(4, 3));
  return graphs;
}

VertexSet random_proper_subset(const Graph& g, std::mt19937_64& rng) {
  while (true) {
    VertexSet s(g);
    for (int v = 1; v <= g.vertex_count(); ++v)
      if (rng() & 1) s.insert(v);
    if (!s.empty() && s.size() < g.vertex_count()) return s;
  }
}

}  // namespace

TEST_CASE("K2 bundle by hand") {
  SpectralBundle b = build_spectral(make_complete(2));
  CHECK(b.walk_matrix(0, 0) == doctest::Approx(0.5));
  CHECK(b.walk_matrix(1, 0) == doctest::Approx(0.5));
  CHECK(b.walk_matrix(0, 1) == doctest::Approx(0.5));
  CHECK(b.omegas(0) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(b.omegas(1) == doctest::Approx(2.0));
  CHECK(b.lambdas(0) == doctest::Approx(1.0));
  CHECK(b.lambdas(1) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("K4 laplacian spectrum is {0, 4/3, 4/3, 4/3}") {
  SpectralBundle b = build_spectral(make_complete(4));
  CHECK(b.omegas(0) == doctest::Approx(0.0).epsilon(1e-10));
  for (int i = 1; i < 4; ++i) CHECK(b.omegas(i) == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("C4 stationary distribution is uniform") {
  SpectralBundle b = build_spectral(make_cycle(4));
  for (int i = 0; i < 4; ++i) CHECK(b.stationary(i) == doctest::Approx(0.25));
}

TEST_CASE("bundle invariants hold on the fixture graphs") {
  for (const Graph& g : fixture_graphs()) {
    CAPTURE(g.vertex_count());
    SpectralBundle b = build_spectral(g);
    const int n = b.n;

    // column stochastic, entrywise match with (I + A D^-1)/2
    for (int j = 0; j < n; ++j) {
      CHECK(b.walk_matrix.col(j).sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(b.walk_matrix.col(j).minCoeff() >= 0.0);
      for (int i = 0; i < n; ++i) {
        double expect = 0.0;
        if (i == j) expect = 0.5;
        else if (g.has_edge(i + 1, j + 1)) expect = 0.5 / g.degree(j + 1);
        CHECK(std::abs(b.walk_matrix(i, j) - expect) <= 1e-12);
      }
    }

    // symmetric laplacian, eigenvalues in [0, 2], omega_1 ~ 0
    CHECK((b.laplacian - b.laplacian.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(b.omegas(0) <= 1e-8);
    CHECK(b.omegas(n - 1) <= 2.0 + 1e-9);
    for (int i = 1; i < n; ++i) CHECK(b.omegas(i) >= b.omegas(i - 1));

    // first eigenvector proportional to sqrt(d), positive by sign convention
    Eigen::VectorXd sqrt_d = b.degrees.array().sqrt();
    sqrt_d.normalize();
    CHECK((b.eigenvectors.col(0) - sqrt_d).cwiseAbs().maxCoeff() <= 1e-8);

    // orthonormality
    Eigen::MatrixXd gram = b.eigenvectors.transpose() * b.eigenvectors;
    CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-8);

    // stationary: sums to one and is fixed by M
    CHECK(b.stationary.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((b.walk_matrix * b.stationary - b.stationary).cwiseAbs().maxCoeff() <= 1e-10);

    // spectral reconstruction of N
    Eigen::MatrixXd recon = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      recon += b.omegas(i) * b.eigenvectors.col(i) * b.eigenvectors.col(i).transpose();
    CHECK((recon - b.laplacian).cwiseAbs().maxCoeff() <= 1e-7);
  }
}

TEST_CASE("jacobi agrees with an independent dense symmetric solver") {
  for (const Graph& g : fixture_graphs()) {
    SpectralBundle b = build_spectral(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> reference(b.laplacian);
    REQUIRE(reference.info() == Eigen::Success);
    for (int i = 0; i < b.n; ++i)
      CHECK(b.omegas(i) == doctest::Approx(reference.eigenvalues()(i)).epsilon(1e-9));
  }
}

TEST_CASE("jacobi reports NoConvergence when the sweep cap is hit") {
  JacobiOptions opts;
  opts.max_sweeps = 0;
  Eigen::MatrixXd a(2, 2);
  a << 1, 0.5, 0.5, 1;
  CHECK_THROWS_AS(jacobi_eigendecomposition(a, opts), Error);
}

TEST_CASE("build_spectral rejects oversized graphs") {
  Graph g = make_cycle(kSpectralMaxVertices + 1);
  try {
    build_spectral(g);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("walk distributions") {
  SUBCASE("zero steps is a point mass") {
    SpectralBundle b = build_spectral(make_dumbbell(4));
    Eigen::VectorXd p = walk_distribution(b, 3, 0);
    CHECK(p(2) == doctest::Approx(1.0));
    CHECK(p.sum() == doctest::Approx(1.0));
  }
  SUBCASE("K2 one step") {
    SpectralBundle b = build_spectral(make_complete(2));
    Eigen::VectorXd p = walk_distribution(b, 1, 1);
    CHECK(p(0) == doctest::Approx(0.5));
    CHECK(p(1) == doctest::Approx(0.5));
  }
  SUBCASE("K4 after 50 steps is stationary") {
    SpectralBundle b = build_spectral(make_complete(4));
    Eigen::VectorXd p = walk_distribution(b, 1, 50);
    CHECK((p - b.stationary).cwiseAbs().maxCoeff() <= 1e-10);
  }
  SUBCASE("long walks stay normalized") {
    SpectralBundle b = build_spectral(make_cycle(9));
    Eigen::VectorXd p = walk_distribution(b, 1, 100000);
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("trap probabilities") {
  SUBCASE("zero-length walk is trapped when it starts inside") {
    Graph g = make_dumbbell(4);
    SpectralBundle b = build_spectral(g);
    auto side = VertexSet::of(g, {1, 2, 3, 4});
    CHECK(trap_probability(b, 2, side, 0) == doctest::Approx(1.0));
  }
  SUBCASE("K2 laziness") {
    Graph g = make_complete(2);
    SpectralBundle b = build_spectral(g);
    CHECK(trap_probability(b, 1, VertexSet::of(g, {1}), 1) == doctest::Approx(0.5));
  }
  SUBCASE("start outside the region") {
    Graph g = make_complete(4);
    SpectralBundle b = build_spectral(g);
    CHECK_THROWS_AS(trap_probability(b, 4, VertexSet::of(g, {1, 2}), 3), Error);
  }
  SUBCASE("averaged form equals the degree-weighted mixture") {
    Graph g = make_dumbbell(4);
    SpectralBundle b = build_spectral(g);
    auto side = VertexSet::of(g, {1, 2, 3, 4});
    double mixture = 0;
    for (int v : side.members())
      mixture += g.degree(v) * trap_probability(b, v, side, 10);
    mixture /= static_cast<double>(side.volume());
    CHECK(trap_probability(b, side, 10) == doctest::Approx(mixture).epsilon(1e-12));
  }
  SUBCASE("matvec route equals spectral route") {
    auto rng = make_stream(17, 3);
    for (const Graph& g : fixture_graphs()) {
      SpectralBundle b = build_spectral(g);
      for (int i = 0; i < 10; ++i) {
        VertexSet s = random_proper_subset(g, rng);
        for (long long ell : {0LL, 1LL, 7LL, 25LL}) {
          CHECK(std::abs(trap_probability(b, s, ell) - trap_probability_spectral(b, s, ell)) <=
                1e-9);
        }
      }
    }
  }
}

TEST_CASE("indicator coefficient identities") {
  auto rng = make_stream(23, 5);
  for (const Graph& g : fixture_graphs()) {
    SpectralBundle b = build_spectral(g);
    const double sqrt_2m = std::sqrt(static_cast<double>(g.total_volume()));
    for (int i = 0; i < 50; ++i) {
      VertexSet s = random_proper_subset(g, rng);
      Eigen::VectorXd alphas = indicator_coefficients(b, s);
      // coefficient sum = vol(S)
      CHECK(alphas.squaredNorm() == doctest::Approx(static_cast<double>(s.volume())).epsilon(1e-8));
      // alpha_1 = vol(S)/sqrt(2m) under the positive-e1 sign convention
      CHECK(alphas(0) == doctest::Approx(static_cast<double>(s.volume()) / sqrt_2m).epsilon(1e-8));
      // quadratic form of N equals the crossing-edge count
      Eigen::VectorXd scaled = Eigen::VectorXd::Zero(b.n);
      for (int v : s.members()) scaled(v - 1) = std::sqrt(b.degrees(v - 1));
      const double quad = scaled.transpose() * b.laplacian * scaled;
      CHECK(quad == doctest::Approx(static_cast<double>(crossing_edges(g, s))).epsilon(1e-8));
    }
  }
}

TEST_CASE("heavy coefficient mass for low-conductance cuts") {
  auto rng = make_stream(31, 9);
  int found = 0;
  for (const Graph& g : fixture_graphs()) {
    SpectralBundle b = build_spectral(g);
    for (int i = 0; i < 200 && found < 40; ++i) {
      VertexSet s = random_proper_subset(g, rng);
      const double delta = cut_conductance(g, s);
      if (delta >= 1.0 / 3.0) continue;
      ++found;
      CHECK(heavy_coefficient_mass(b, s, delta) >=
            5.0 / 6.0 * static_cast<double>(s.volume()) - 1e-8);
    }
  }
  CHECK(found >= 20);
}

TEST_CASE("whole-set trap bound") {
  SUBCASE("dumbbell sides pass for all lengths up to 50") {
    for (int k : {4, 5}) {
      Graph g = make_dumbbell(k);
      SpectralBundle b = build_spectral(g);
      Cut cut = make_cut(g, min_conductance_bruteforce(g).witness);
      TrapBoundReport report = verify_trap_bound(b, cut, 50);
      CHECK(report.all_pass);
      CHECK(report.rows.size() == 51);
      CHECK(report.rows.front().trap == doctest::Approx(1.0));
    }
  }
  SUBCASE("delta >= 1/3 is rejected") {
    Graph g = make_complete(4);
    SpectralBundle b = build_spectral(g);
    Cut cut = make_cut(g, VertexSet::of(g, {1}));
    CHECK_THROWS_AS(verify_trap_bound(b, cut, 10), Error);
  }
  SUBCASE("near-disconnected barbell path has tiny delta and passes") {
    Graph g = make_barbell_path(4, 3);
    SpectralBundle b = build_spectral(g);
    Cut cut = make_cut(g, min_conductance_bruteforce(g).witness);
    CHECK(cut.conductance < 0.1);
    CHECK(verify_trap_bound(b, cut, 30).all_pass);
  }
}

TEST_CASE("subset trap bound") {
  SUBCASE("T = S reduces to the whole-set bound") {
    Graph g = make_dumbbell(4);
    SpectralBundle b = build_spectral(g);
    Cut cut = make_cut(g, min_conductance_bruteforce(g).witness);
    TrapBoundReport whole = verify_trap_bound(b, cut, 20);
    TrapBoundReport subset = verify_subset_trap_bound(b, cut, cut.side, 20);
    CHECK(subset.eta == doctest::Approx(0.0));
    for (std::size_t i = 0; i < whole.rows.size(); ++i)
      CHECK(subset.rows[i].bound == doctest::Approx(whole.rows[i].bound).epsilon(1e-12));
  }
  SUBCASE("dumbbell(5) minus the lowest-degree vertex passes up to 50") {
    Graph g = make_dumbbell(5);
    SpectralBundle b = build_spectral(g);
    Cut cut = make_cut(g, min_conductance_bruteforce(g).witness);
    VertexSet t = cut.side;
    t.erase(1);  // clique-interior vertex, degree 4
    TrapBoundReport report = verify_subset_trap_bound(b, cut, t, 50);
    CHECK(report.eta > 0.0);
    CHECK(report.eta < 5.0 / 6.0);
    CHECK(report.all_pass);
  }
  SUBCASE("eta out of range") {
    Graph g = make_path(12);
    SpectralBundle b = build_spectral(g);
    Cut cut = make_cut(g, VertexSet::of(g, {1, 2, 3, 4, 5, 6}));  // delta = 1/11
    VertexSet t(g);
    t.insert(1);  // vol 1 of 11: eta = 10/11 >= 5/6
    try {
      verify_subset_trap_bound(b, cut, t, 10);
      FAIL("expected EtaOutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EtaOutOfRange);
    }
  }
  SUBCASE("subset must lie inside the cut side") {
    Graph g = make_dumbbell(4);
    SpectralBundle b = build_spectral(g);
    Cut cut = make_cut(g, VertexSet::of(g, {1, 2, 3, 4}));
    CHECK_THROWS_AS(verify_subset_trap_bound(b, cut, VertexSet::of(g, {3, 4, 5}), 10), Error);
  }
}

TEST_CASE("sticky set extraction on dumbbell(4)") {
  Graph g = make_dumbbell(4);
  SpectralBundle b = build_spectral(g);
  Cut cut = make_cut(g, min_conductance_bruteforce(g).witness);
  StickySetResult sticky = sticky_set(b, cut, 0.1, 20);
  CHECK(!sticky.members.empty());
  for (int v : sticky.members.members()) CHECK(cut.side.contains(v));
  CHECK(static_cast<double>(sticky.members.volume()) >
        0.1 * static_cast<double>(cut.side.volume()) - 1e-9);
  // re-check every extracted vertex against its recorded region and bound
  for (const StickyVertex& entry : sticky.detail) {
    VertexSet region = VertexSet::of(g, entry.region);
    CHECK(trap_probability(b, entry.vertex, region, 20) >= entry.bound - 1e-9);
    CHECK(entry.trap >= entry.bound - 1e-9);
  }
}

TEST_CASE("sticky set at eta = 0 still yields a vertex meeting the whole-set bound") {
  Graph g = make_dumbbell(4);
  SpectralBundle b = build_spectral(g);
  Cut cut = make_cut(g, min_conductance_bruteforce(g).witness);
  StickySetResult sticky = sticky_set(b, cut, 0.0, 20);
  REQUIRE(sticky.detail.size() == 1);  // first extraction empties the volume budget
  CHECK(sticky.detail[0].trap >= sticky.detail[0].bound - 1e-9);
  CHECK_THROWS_AS(sticky_set(b, cut, 5.0 / 6.0, 20), Error);
}

TEST_CASE("cheeger sandwich") {
  SUBCASE("K2 by hand") {
    Graph g = make_complete(2);
    CheegerReport r = verify_cheeger_bounds(build_spectral(g), g);
    CHECK(r.phi_star == doctest::Approx(0.5));
    CHECK(r.lambda2 == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(r.pass());
  }
  SUBCASE("K4 sits on the upper bound") {
    Graph g = make_complete(4);
    CheegerReport r = verify_cheeger_bounds(build_spectral(g), g);
    CHECK(r.phi_star == doctest::Approx(1.0 / 3.0));
    CHECK(r.spectral_gap == doctest::Approx(2.0 / 3.0));
    CHECK(r.pass());
  }
  SUBCASE("dumbbell(4)") {
    Graph g = make_dumbbell(4);
    CHECK(verify_cheeger_bounds(build_spectral(g), g).pass());
  }
}

TEST_CASE("mixing bound") {
  SUBCASE("any graph at length 0") {
    Graph g = make_dumbbell(4);
    MixingReport r = verify_mixing_bound(build_spectral(g), 0);
    CHECK(r.bound == doctest::Approx(1.0));
    CHECK(r.pass);
  }
  SUBCASE("K2 at length 1 has zero deviation and zero bound") {
    Graph g = make_complete(2);
    MixingReport r = verify_mixing_bound(build_spectral(g), 1);
    CHECK(r.max_deviation <= 1e-12);
    CHECK(r.pass);
  }
  SUBCASE("K16 at length 20") {
    Graph g = make_complete(16);
    MixingReport r = verify_mixing_bound(build_spectral(g), 20);
    CHECK(r.pass);
  }
}
