#include "ht/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "ht/kernels.hpp"

namespace ht::linalg {

namespace {

using index_t = std::ptrdiff_t;

struct Rotation {
  std::size_t p, q;  // p < q
  double c, s;
};

// Angle that annihilates a(p,q) under a <- J^T a J, computed the stable way.
Rotation make_rotation(std::size_t p, std::size_t q, double app, double aqq, double apq) {
  const double tau = (aqq - app) / (2.0 * apq);
  double t;
  if (std::abs(tau) > 1e150) {
    t = 1.0 / (2.0 * tau);  // tau^2 would overflow
  } else {
    t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {p, q, c, t * c};
}

// a <- a J: columns p and q mix.
void apply_col(Matrix& a, const Rotation& r) {
  const std::size_t n = a.rows();
  double* colp = a.data() + r.p * n;
  double* colq = a.data() + r.q * n;
  for (std::size_t i = 0; i < n; ++i) {
    const double vp = colp[i];
    const double vq = colq[i];
    colp[i] = r.c * vp - r.s * vq;
    colq[i] = r.s * vp + r.c * vq;
  }
}

// a <- J^T a: rows p and q mix.
void apply_row(Matrix& a, const Rotation& r) {
  const std::size_t n = a.cols();
  const std::size_t stride = a.rows();
  double* base = a.data();
  for (std::size_t i = 0; i < n; ++i) {
    double* vp = base + i * stride + r.p;
    double* vq = base + i * stride + r.q;
    const double tp = *vp;
    const double tq = *vq;
    *vp = r.c * tp - r.s * tq;
    *vq = r.s * tp + r.c * tq;
  }
}

double off_diag_norm(const Matrix& a) {
  const std::size_t n = a.rows();
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

void validate_square(const Matrix& a, double tol) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw std::invalid_argument("matrix must be square and nonempty");
  }
  if (!all_finite(a)) throw std::invalid_argument("matrix contains non-finite values");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

// Diagonal -> eigenvalues, sorted descending; ties keep diagonal order.
SymmetricEig finish(const Matrix& a, const Matrix& v, std::size_t sweeps) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  SymmetricEig out;
  out.vectors = Matrix(n, n);
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    auto src = v.col(order[k]);
    auto dst = out.vectors.col(k);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  out.sweeps = sweeps;
  return out;
}

constexpr std::size_t kMaxSweeps = 100;

// Below this order the barrier traffic of the round loop costs more than
// the rotations; run the same schedule on the calling thread instead.
constexpr std::size_t kParallelCutoff = 64;

}  // namespace

SymmetricEig jacobi_eig_serial(Matrix a, double tol) {
  validate_square(a, tol);
  const std::size_t n = a.rows();
  Matrix v = Matrix::identity(n);
  const double norm = std::sqrt(frobenius_sq(a));
  if (norm == 0.0) return finish(a, v, 0);
  const double target = tol * norm;
  const double skip = target / (10.0 * static_cast<double>(n));

  std::size_t sweeps = 0;
  while (sweeps < kMaxSweeps && off_diag_norm(a) > target) {
    ++sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) <= skip) continue;
        const Rotation r = make_rotation(p, q, a(p, p), a(q, q), a(p, q));
        apply_row(a, r);
        apply_col(a, r);
        apply_col(v, r);
      }
    }
  }
  return finish(a, v, sweeps);
}

SymmetricEig jacobi_eig(Matrix a, double tol) {
  validate_square(a, tol);
  const std::size_t n = a.rows();
  Matrix v = Matrix::identity(n);
  const double norm = std::sqrt(frobenius_sq(a));
  if (norm == 0.0 || n == 1) return finish(a, v, 0);
  const double target = tol * norm;
  const double skip = target / (10.0 * static_cast<double>(n));

  // Round-robin schedule: index n acts as the bye slot for odd sizes.
  const std::size_t m = n + (n % 2);
  std::vector<std::size_t> players(m);
  std::vector<Rotation> rotations;
  rotations.reserve(m / 2);

  std::size_t sweeps = 0;
  while (sweeps < kMaxSweeps && off_diag_norm(a) > target) {
    ++sweeps;
    std::iota(players.begin(), players.end(), std::size_t{0});
    // One parallel region per sweep; the worksharing barriers keep the row
    // and column phases of each round in lockstep. The element updates do
    // not depend on the thread count, so results are identical whether the
    // if clause engages a team or not.
#pragma omp parallel if (n >= kParallelCutoff)
    for (std::size_t round = 0; round + 1 < m; ++round) {
#pragma omp single
      {
        rotations.clear();
        for (std::size_t i = 0; i < m / 2; ++i) {
          const std::size_t x = players[i];
          const std::size_t y = players[m - 1 - i];
          if (x >= n || y >= n) continue;
          const std::size_t p = std::min(x, y);
          const std::size_t q = std::max(x, y);
          if (std::abs(a(p, q)) <= skip) continue;
          rotations.push_back(make_rotation(p, q, a(p, p), a(q, q), a(p, q)));
        }
      }

      // Row phase a <- J^T a, parallel over columns: the pivots are disjoint,
      // so each element is written by exactly one rotation and each thread
      // stays inside its own contiguous column block.
#pragma omp for schedule(static)
      for (index_t c = 0; c < static_cast<index_t>(n); ++c) {
        double* ac = a.data() + static_cast<std::size_t>(c) * n;
        for (const Rotation& r : rotations) {
          const double tp = ac[r.p];
          const double tq = ac[r.q];
          ac[r.p] = r.c * tp - r.s * tq;
          ac[r.q] = r.s * tp + r.c * tq;
        }
      }
      // Column phase a <- a J (and the accumulator v <- v J), parallel over
      // rotations: each rotation owns two whole columns.
      const auto nrot = static_cast<index_t>(rotations.size());
#pragma omp for schedule(static)
      for (index_t i = 0; i < nrot; ++i) {
        apply_col(a, rotations[i]);
        apply_col(v, rotations[i]);
      }

#pragma omp single
      {
        // advance the circle: slot 0 stays, the rest rotate by one
        const std::size_t last = players[m - 1];
        for (std::size_t i = m - 1; i >= 2; --i) players[i] = players[i - 1];
        players[1] = last;
      }
    }
  }
  return finish(a, v, sweeps);
}

namespace {

void fix_sign(std::span<double> v) {
  std::size_t arg = 0;
  double best = std::abs(v[0]);
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > best) {  // strict: ties keep the lowest index
      best = std::abs(v[i]);
      arg = i;
    }
  }
  if (v[arg] < 0.0) {
    for (double& x : v) x = -x;
  }
}

}  // namespace

TruncatedSVD top_k_svd(const Matrix& w, int k, double tol) {
  if (k <= 0) throw std::invalid_argument("K must be positive");
  if (w.rows() == 0 || w.cols() == 0) throw std::invalid_argument("matrix must be nonempty");
  if (!all_finite(w)) throw std::invalid_argument("matrix contains non-finite values");

  const std::size_t kk =
      std::min(static_cast<std::size_t>(k), std::min(w.rows(), w.cols()));
  const SymmetricEig eig = jacobi_eig(kernels::gram(w), tol);

  TruncatedSVD out;
  out.left_vectors = Matrix(w.rows(), kk);
  out.singular_values.resize(kk);
  for (std::size_t c = 0; c < kk; ++c) {
    auto src = eig.vectors.col(c);
    auto dst = out.left_vectors.col(c);
    std::copy(src.begin(), src.end(), dst.begin());
    fix_sign(dst);
    out.singular_values[c] = std::sqrt(std::max(eig.values[c], 0.0));
  }
  return out;
}

}  // namespace ht::linalg
