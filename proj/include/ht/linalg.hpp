#pragma once

#include <cstddef>
#include <vector>

#include "ht/matrix.hpp"

namespace ht::linalg {

// Convergence target for the Jacobi sweeps: off-diagonal Frobenius norm
// relative to the (rotation-invariant) Frobenius norm of the input.
inline constexpr double kDefaultJacobiTol = 1e-14;

// Eigenpairs of a symmetric matrix, values in descending order. Ties keep
// the diagonal position order, which makes the output deterministic.
struct SymmetricEig {
  Matrix vectors;  // column k pairs with values[k]
  std::vector<double> values;
  std::size_t sweeps = 0;
};

// Classic cyclic Jacobi (upper-triangle order); serial reference.
SymmetricEig jacobi_eig_serial(Matrix a, double tol = kDefaultJacobiTol);

// Round-robin Jacobi. Each round rotates floor(n/2) disjoint pivots whose
// angles come from the round-start matrix; the rotations are applied as a
// row phase followed by a column phase, so no two updates share an output
// element. Results are identical for any thread count.
SymmetricEig jacobi_eig(Matrix a, double tol = kDefaultJacobiTol);

struct TruncatedSVD {
  Matrix left_vectors;                  // d x k', orthonormal columns
  std::vector<double> singular_values;  // k' values, nonincreasing, >= 0

  std::size_t k() const { return singular_values.size(); }
};

// Top-k left singular pairs of w via eigendecomposition of w w^T.
// k is clamped to min(rows, cols). Sign convention: the entry of largest
// magnitude in each vector is made positive, ties broken by lowest index,
// which keeps the output bit-stable across runs.
TruncatedSVD top_k_svd(const Matrix& w, int k, double tol = kDefaultJacobiTol);

}  // namespace ht::linalg
