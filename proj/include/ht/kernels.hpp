#pragma once

#include <span>
#include <vector>

#include "ht/matrix.hpp"

namespace ht::kernels {

// The OpenMP versions below parallelize over output elements only; every
// element is accumulated serially in the same order as the serial reference,
// so both variants produce bit-identical results for any thread count.

// w * w^T (symmetric, rows x rows).
Matrix gram(const Matrix& w);

// ||h_k^T w||^2 for each topic column h_k of `topics`.
std::vector<double> projection_energies(const Matrix& topics, const Matrix& w);

// ||w_j - H H^T w_j||^2 for each column j of w.
std::vector<double> column_reconstruction_errors(const Matrix& topics, const Matrix& w);

// |cos(h, s)| via the rank-1 reconstruction h h^T s, clamped to [0, 1];
// returns 0 when the reconstruction norm falls below 1e-12.
double projection_cosine(std::span<const double> h, std::span<const double> s);

// Mean projection cosine over the columns of s, one value per topic column.
std::vector<double> topic_summary_means(const Matrix& topics, const Matrix& s);

namespace ref {

// Serial reference implementations, kept for tests and the benchmark.
Matrix gram(const Matrix& w);
std::vector<double> projection_energies(const Matrix& topics, const Matrix& w);
std::vector<double> column_reconstruction_errors(const Matrix& topics, const Matrix& w);
std::vector<double> topic_summary_means(const Matrix& topics, const Matrix& s);

}  // namespace ref

}  // namespace ht::kernels
