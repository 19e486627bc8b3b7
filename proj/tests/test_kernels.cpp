#include <doctest.h>

#include <random>
#include <vector>

#include "ht/kernels.hpp"
#include "ht/linalg.hpp"
#include "ht/matrix.hpp"
#include "support/test_util.hpp"

using ht::Matrix;
using ht::testing::random_matrix;
namespace kernels = ht::kernels;

TEST_CASE("gram matches a hand-computed case") {
  // w = [(1,2) | (3,4)]: w w^T = [[10, 14], [14, 20]]
  Matrix w(2, 2);
  w(0, 0) = 1;
  w(1, 0) = 2;
  w(0, 1) = 3;
  w(1, 1) = 4;
  const auto g = kernels::gram(w);
  CHECK(g(0, 0) == 10.0);
  CHECK(g(0, 1) == 14.0);
  CHECK(g(1, 0) == 14.0);
  CHECK(g(1, 1) == 20.0);
}

TEST_CASE("parallel kernels are bit-identical to the serial references") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + rng() % 30;
    const std::size_t n = 1 + rng() % 40;
    const std::size_t k = 1 + rng() % d;
    const Matrix w = random_matrix(d, n, rng);
    const Matrix topics = random_matrix(d, k, rng);
    const Matrix summary = random_matrix(d, 1 + rng() % 10, rng);

    CHECK(kernels::gram(w) == kernels::ref::gram(w));
    CHECK(kernels::projection_energies(topics, w) ==
          kernels::ref::projection_energies(topics, w));
    CHECK(kernels::column_reconstruction_errors(topics, w) ==
          kernels::ref::column_reconstruction_errors(topics, w));
    CHECK(kernels::topic_summary_means(topics, summary) ==
          kernels::ref::topic_summary_means(topics, summary));
  }
}

TEST_CASE("gram is exactly symmetric") {
  std::mt19937_64 rng(7);
  const Matrix w = random_matrix(13, 21, rng);
  const auto g = kernels::gram(w);
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) CHECK(g(i, j) == g(j, i));
  }
}

TEST_CASE("projection_cosine basics") {
  const std::vector<double> h = {1.0, 0.0};
  CHECK(kernels::projection_cosine(h, std::vector<double>{3.0, 4.0}) == doctest::Approx(0.6));
  CHECK(kernels::projection_cosine(h, std::vector<double>{0.0, 2.0}) == 0.0);
  CHECK(kernels::projection_cosine(h, std::vector<double>{-5.0, 0.0}) == 1.0);
}

TEST_CASE("projection energies agree with the Frobenius identity") {
  // sum_k ||h_k^T W||^2 == ||W||_F^2 when the h_k span everything
  std::mt19937_64 rng(3);
  const std::size_t d = 4;
  const Matrix w = random_matrix(d, 9, rng);
  const Matrix basis = Matrix::identity(d);
  const auto energies = kernels::projection_energies(basis, w);
  double total = 0.0;
  for (double e : energies) total += e;
  CHECK(total == doctest::Approx(ht::frobenius_sq(w)).epsilon(1e-12));
}
