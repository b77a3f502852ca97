#pragma once

#include <Eigen/Dense>

#include "condtest/graph.hpp"

namespace condtest {

inline constexpr int kSpectralMaxVertices = 2000;

struct JacobiOptions {
  double off_diagonal_threshold = 1e-10;  // Frobenius norm of the off-diagonal part
  int max_sweeps = 100;
};

struct JacobiResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns, col i pairs with values[i]
  int sweeps = 0;
};

/// Cyclic-by-row Jacobi rotations on a symmetric matrix.  Throws NoConvergence
/// when the sweep cap is reached before the off-diagonal norm falls below the
/// threshold.
JacobiResult jacobi_eigendecomposition(Eigen::MatrixXd a, const JacobiOptions& opts = {});

/// Dense exact linear-algebra view of a graph's lazy random walk.
struct SpectralBundle {
  int n = 0;
  long long edge_count = 0;
  Eigen::VectorXd degrees;
  Eigen::MatrixXd walk_matrix;   // M = (I + A D^-1)/2; column j is the step
                                 // distribution out of vertex j
  Eigen::MatrixXd laplacian;     // N = I - D^-1/2 A D^-1/2
  Eigen::VectorXd omegas;        // eigenvalues of N, ascending, omega_1 = 0
  Eigen::VectorXd lambdas;       // 1 - omega/2, descending, lambda_1 = 1
  Eigen::MatrixXd eigenvectors;  // unit eigenvectors of N (columns); first
                                 // nonzero component positive
  Eigen::VectorXd stationary;    // pi = d / 2m

  double lambda2() const { return lambdas(1); }
};

SpectralBundle build_spectral(const Graph& g, const JacobiOptions& opts = {});

inline constexpr long long kMaxWalkSteps = 1'000'000;

/// M^steps applied to a point mass at `start` (1-based), by repeated
/// matrix-vector products with periodic renormalization.
Eigen::VectorXd walk_distribution(const SpectralBundle& b, int start, long long steps);

/// Probability that a walk of length `steps` from `start` ends inside `region`.
/// Throws StartOutsideRegion when start is not a member.
double trap_probability(const SpectralBundle& b, int start, const VertexSet& region,
                        long long steps);

/// Degree-weighted average of the above over starts in `region`.
double trap_probability(const SpectralBundle& b, const VertexSet& region, long long steps);

/// Coefficients alpha_i = <D^{1/2} 1_S, e_i> of the scaled indicator in the
/// eigenbasis of N.
Eigen::VectorXd indicator_coefficients(const SpectralBundle& b, const VertexSet& s);

/// Average trap probability through the eigendecomposition:
/// (1/vol S) * sum_i alpha_i^2 lambda_i^steps.
double trap_probability_spectral(const SpectralBundle& b, const VertexSet& s, long long steps);

/// Sum of alpha_i^2 over eigenvalues with lambda_i >= 1 - 3*delta.
double heavy_coefficient_mass(const SpectralBundle& b, const VertexSet& s, double delta);

/// M^steps by binary exponentiation (exact dense power, no sampling).
Eigen::MatrixXd walk_matrix_power(const SpectralBundle& b, long long steps);

}  // namespace condtest
