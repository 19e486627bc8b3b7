#include "ht/kernels.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace ht::kernels {

namespace {

using index_t = std::ptrdiff_t;

double dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

// Column i of the Gram matrix, rows i..d-1 (the lower triangle), accumulated
// column-by-column of w so the summation order is fixed.
void gram_column_lower(const Matrix& w, std::size_t i, double* gcol) {
  const std::size_t d = w.rows();
  const std::size_t n = w.cols();
  for (std::size_t c = 0; c < n; ++c) {
    const double* wc = w.data() + c * d;
    const double wi = wc[i];
    for (std::size_t j = i; j < d; ++j) gcol[j] += wi * wc[j];
  }
}

// ||w_j - H H^T w_j||^2 for one column: materialize the reconstruction and
// subtract, as the direct form of the error.
double column_error(const Matrix& topics, const double* wc, double* recon) {
  const std::size_t d = topics.rows();
  const std::size_t k = topics.cols();
  for (std::size_t r = 0; r < d; ++r) recon[r] = 0.0;
  for (std::size_t t = 0; t < k; ++t) {
    const double* h = topics.data() + t * d;
    const double coeff = dot(h, wc, d);
    for (std::size_t r = 0; r < d; ++r) recon[r] += coeff * h[r];
  }
  double err = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    const double diff = wc[r] - recon[r];
    err += diff * diff;
  }
  return err;
}

double projection_cosine_with_norm(const double* h, double h_norm, const double* s,
                                   std::size_t d) {
  const double t = dot(h, s, d);
  if (std::abs(t) * h_norm < 1e-12) return 0.0;  // word orthogonal to the topic
  const double s_norm = std::sqrt(dot(s, s, d));
  const double r = std::abs(t) / (s_norm * h_norm);
  return r > 1.0 ? 1.0 : r;
}

double topic_energy(const Matrix& w, const double* h) {
  const std::size_t d = w.rows();
  const std::size_t n = w.cols();
  double sum = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    const double t = dot(h, w.data() + c * d, d);
    sum += t * t;
  }
  return sum;
}

double topic_mean_relevance(const Matrix& s, const double* h) {
  const std::size_t d = s.rows();
  const std::size_t m = s.cols();
  const double h_norm = std::sqrt(dot(h, h, d));
  double sum = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    sum += projection_cosine_with_norm(h, h_norm, s.data() + j * d, d);
  }
  return sum / static_cast<double>(m);
}

void check_dims(const Matrix& topics, const Matrix& w) {
  if (topics.rows() != w.rows()) {
    throw std::invalid_argument("topic and word matrices disagree on dimension");
  }
}

}  // namespace

Matrix gram(const Matrix& w) {
  const std::size_t d = w.rows();
  Matrix g(d, d);
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < static_cast<index_t>(d); ++i) {
    gram_column_lower(w, static_cast<std::size_t>(i), g.data() + i * static_cast<index_t>(d));
  }
#pragma omp parallel for schedule(static)
  for (index_t j = 1; j < static_cast<index_t>(d); ++j) {
    for (index_t i = 0; i < j; ++i) {
      g(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          g(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
    }
  }
  return g;
}

std::vector<double> projection_energies(const Matrix& topics, const Matrix& w) {
  check_dims(topics, w);
  const std::size_t k = topics.cols();
  std::vector<double> out(k, 0.0);
#pragma omp parallel for schedule(static)
  for (index_t t = 0; t < static_cast<index_t>(k); ++t) {
    out[t] = topic_energy(w, topics.data() + t * static_cast<index_t>(topics.rows()));
  }
  return out;
}

std::vector<double> column_reconstruction_errors(const Matrix& topics, const Matrix& w) {
  check_dims(topics, w);
  const std::size_t n = w.cols();
  std::vector<double> out(n, 0.0);
#pragma omp parallel
  {
    std::vector<double> recon(w.rows());
#pragma omp for schedule(static)
    for (index_t j = 0; j < static_cast<index_t>(n); ++j) {
      out[j] = column_error(topics, w.data() + j * static_cast<index_t>(w.rows()),
                            recon.data());
    }
  }
  return out;
}

double projection_cosine(std::span<const double> h, std::span<const double> s) {
  const double h_norm = std::sqrt(dot(h.data(), h.data(), h.size()));
  return projection_cosine_with_norm(h.data(), h_norm, s.data(), s.size());
}

std::vector<double> topic_summary_means(const Matrix& topics, const Matrix& s) {
  check_dims(topics, s);
  const std::size_t k = topics.cols();
  std::vector<double> out(k, 0.0);
#pragma omp parallel for schedule(static)
  for (index_t t = 0; t < static_cast<index_t>(k); ++t) {
    out[t] = topic_mean_relevance(s, topics.data() + t * static_cast<index_t>(topics.rows()));
  }
  return out;
}

namespace ref {

Matrix gram(const Matrix& w) {
  const std::size_t d = w.rows();
  Matrix g(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    gram_column_lower(w, i, g.data() + i * d);
  }
  for (std::size_t j = 1; j < d; ++j) {
    for (std::size_t i = 0; i < j; ++i) g(i, j) = g(j, i);
  }
  return g;
}

std::vector<double> projection_energies(const Matrix& topics, const Matrix& w) {
  check_dims(topics, w);
  std::vector<double> out(topics.cols(), 0.0);
  for (std::size_t t = 0; t < topics.cols(); ++t) {
    out[t] = topic_energy(w, topics.data() + t * topics.rows());
  }
  return out;
}

std::vector<double> column_reconstruction_errors(const Matrix& topics, const Matrix& w) {
  check_dims(topics, w);
  std::vector<double> out(w.cols(), 0.0);
  std::vector<double> recon(w.rows());
  for (std::size_t j = 0; j < w.cols(); ++j) {
    out[j] = column_error(topics, w.data() + j * w.rows(), recon.data());
  }
  return out;
}

std::vector<double> topic_summary_means(const Matrix& topics, const Matrix& s) {
  check_dims(topics, s);
  std::vector<double> out(topics.cols(), 0.0);
  for (std::size_t t = 0; t < topics.cols(); ++t) {
    out[t] = topic_mean_relevance(s, topics.data() + t * topics.rows());
  }
  return out;
}

}  // namespace ref

}  // namespace ht::kernels
