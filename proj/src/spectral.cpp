#include "condtest/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace condtest {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  double sum = 0;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) sum += a(p, q) * a(p, q);
  return std::sqrt(2.0 * sum);
}

}  // namespace

JacobiResult jacobi_eigendecomposition(Eigen::MatrixXd a, const JacobiOptions& opts) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("jacobi: matrix must be square");

  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  int sweep = 0;
  while (off_diagonal_norm(a) > opts.off_diagonal_threshold) {
    if (sweep >= opts.max_sweeps)
      throw Error(ErrorCode::NoConvergence,
                  "jacobi sweep cap " + std::to_string(opts.max_sweeps) + " reached");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = a(p, i) = c * aip - s * aiq;
          a(i, q) = a(q, i) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
    ++sweep;
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i) < a(j, j); });

  JacobiResult result;
  result.values.resize(n);
  result.vectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    result.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    result.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  result.sweeps = sweep;
  return result;
}

SpectralBundle build_spectral(const Graph& g, const JacobiOptions& opts) {
  const int n = g.vertex_count();
  if (n > kSpectralMaxVertices)
    throw Error(ErrorCode::TooLarge,
                "dense spectral bundle limited to n <= " + std::to_string(kSpectralMaxVertices));

  SpectralBundle b;
  b.n = n;
  b.edge_count = g.edge_count();
  b.degrees.resize(n);
  for (int v = 1; v <= n; ++v) b.degrees(v - 1) = static_cast<double>(g.degree(v));

  b.walk_matrix = Eigen::MatrixXd::Zero(n, n);
  b.laplacian = Eigen::MatrixXd::Identity(n, n);
  for (int v = 1; v <= n; ++v) {
    b.walk_matrix(v - 1, v - 1) = 0.5;
    for (int w : g.neighbors(v)) {
      // column v: mass leaving v
      b.walk_matrix(w - 1, v - 1) = 0.5 / b.degrees(v - 1);
      b.laplacian(w - 1, v - 1) = -1.0 / std::sqrt(b.degrees(v - 1) * b.degrees(w - 1));
    }
  }

  JacobiResult eig = jacobi_eigendecomposition(b.laplacian, opts);
  b.omegas = eig.values;
  b.eigenvectors = eig.vectors;

  // Sign convention: first component of magnitude > 1e-12 made positive.
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < n; ++r) {
      const double x = b.eigenvectors(r, i);
      if (std::abs(x) > 1e-12) {
        if (x < 0) b.eigenvectors.col(i) *= -1.0;
        break;
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    if (b.omegas(i) < 0.0) {
      if (b.omegas(i) < -1e-9)
        throw Error(ErrorCode::NoConvergence, "negative eigenvalue beyond tolerance");
      b.omegas(i) = 0.0;
    }
  }
  if (b.omegas(0) > 1e-8)
    throw Error(ErrorCode::NoConvergence, "smallest laplacian eigenvalue did not vanish");
  if (b.omegas(n - 1) > 2.0 + 1e-9)
    throw Error(ErrorCode::NoConvergence, "laplacian eigenvalue above 2");

  b.lambdas = (1.0 - b.omegas.array() / 2.0).matrix();
  b.stationary = b.degrees / static_cast<double>(g.total_volume());
  return b;
}

namespace {

Eigen::VectorXd iterate_walk(const SpectralBundle& b, Eigen::VectorXd x, long long steps) {
  if (steps < 0 || steps > kMaxWalkSteps)
    throw std::invalid_argument("walk length out of range");
  for (long long step = 1; step <= steps; ++step) {
    x = b.walk_matrix * x;
    if (step % 64 == 0) x /= x.sum();  // damp rounding drift
  }
  return x;
}

void check_region(const SpectralBundle& b, const VertexSet& region) {
  if (region.graph().vertex_count() != b.n)
    throw std::invalid_argument("region belongs to a different graph");
  if (region.empty()) throw std::invalid_argument("region must be nonempty");
}

double mass_inside(const VertexSet& region, const Eigen::VectorXd& p) {
  double total = 0;
  for (int v : region.members()) total += p(v - 1);
  return total;
}

}  // namespace

Eigen::VectorXd walk_distribution(const SpectralBundle& b, int start, long long steps) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(b.n);
  x(start - 1) = 1.0;
  return iterate_walk(b, std::move(x), steps);
}

double trap_probability(const SpectralBundle& b, int start, const VertexSet& region,
                        long long steps) {
  check_region(b, region);
  if (!region.contains(start))
    throw Error(ErrorCode::StartOutsideRegion,
                "vertex " + std::to_string(start) + " is not in the region");
  return mass_inside(region, walk_distribution(b, start, steps));
}

double trap_probability(const SpectralBundle& b, const VertexSet& region, long long steps) {
  check_region(b, region);
  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(b.n);
  for (int v : region.members()) p0(v - 1) = b.degrees(v - 1);
  p0 /= static_cast<double>(region.volume());
  return mass_inside(region, iterate_walk(b, std::move(p0), steps));
}

Eigen::VectorXd indicator_coefficients(const SpectralBundle& b, const VertexSet& s) {
  check_region(b, s);
  Eigen::VectorXd scaled = Eigen::VectorXd::Zero(b.n);
  for (int v : s.members()) scaled(v - 1) = std::sqrt(b.degrees(v - 1));
  return b.eigenvectors.transpose() * scaled;
}

double trap_probability_spectral(const SpectralBundle& b, const VertexSet& s, long long steps) {
  Eigen::VectorXd alphas = indicator_coefficients(b, s);
  double total = 0;
  for (int i = 0; i < b.n; ++i)
    total += alphas(i) * alphas(i) * std::pow(b.lambdas(i), static_cast<double>(steps));
  return total / static_cast<double>(s.volume());
}

double heavy_coefficient_mass(const SpectralBundle& b, const VertexSet& s, double delta) {
  Eigen::VectorXd alphas = indicator_coefficients(b, s);
  const double floor = 1.0 - 3.0 * delta;
  double mass = 0;
  for (int i = 0; i < b.n; ++i)
    if (b.lambdas(i) >= floor) mass += alphas(i) * alphas(i);
  return mass;
}

Eigen::MatrixXd walk_matrix_power(const SpectralBundle& b, long long steps) {
  if (steps < 0 || steps > kMaxWalkSteps)
    throw std::invalid_argument("walk length out of range");
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(b.n, b.n);
  Eigen::MatrixXd base = b.walk_matrix;
  long long e = steps;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

}  // namespace condtest
