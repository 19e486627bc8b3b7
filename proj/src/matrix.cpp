#include "ht/matrix.hpp"

#include <cmath>

namespace ht {

double frobenius_sq(const Matrix& m) {
  double sum = 0.0;
  const double* p = m.data();
  const std::size_t n = m.rows() * m.cols();
  for (std::size_t i = 0; i < n; ++i) sum += p[i] * p[i];
  return sum;
}

bool all_finite(const Matrix& m) {
  const double* p = m.data();
  const std::size_t n = m.rows() * m.cols();
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(p[i])) return false;
  }
  return true;
}

}  // namespace ht
