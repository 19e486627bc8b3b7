// Times the OpenMP kernels against their serial references and prints a
// speedup table. Not part of the test suite.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ht/kernels.hpp"
#include "ht/linalg.hpp"
#include "ht/matrix.hpp"

namespace {

ht::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ht::Matrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = dist(rng);
  }
  return m;
}

template <typename Fn>
double time_ms(Fn fn, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return best;
}

void report(const std::string& name, double serial_ms, double parallel_ms, double max_diff) {
  std::printf("%-28s %10.2f %10.2f %8.2fx   %.3g\n", name.c_str(), serial_ms, parallel_ms,
              serial_ms / parallel_ms, max_diff);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t dim = 300;
  std::size_t cols = 2000;
  int reps = 3;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    const auto value = static_cast<std::size_t>(std::stoull(argv[i + 1]));
    if (flag == "--dim") dim = value;
    else if (flag == "--cols") cols = value;
    else if (flag == "--reps") reps = static_cast<int>(value);
  }

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("word matrix: %zu x %zu\n\n", dim, cols);
  std::printf("%-28s %10s %10s %9s   %s\n", "kernel", "serial ms", "omp ms", "speedup",
              "max |diff|");

  const ht::Matrix w = random_matrix(dim, cols, 1);
  const std::size_t k = 15;

  ht::Matrix gram_serial, gram_parallel;
  {
    const double t_serial = time_ms([&] { gram_serial = ht::kernels::ref::gram(w); }, reps);
    const double t_parallel = time_ms([&] { gram_parallel = ht::kernels::gram(w); }, reps);
    double diff = 0.0;
    for (std::size_t i = 0; i < dim * dim; ++i) {
      diff = std::max(diff, std::abs(gram_serial.data()[i] - gram_parallel.data()[i]));
    }
    report("gram", t_serial, t_parallel, diff);
  }

  {
    ht::linalg::SymmetricEig eig_serial, eig_parallel;
    const double t_serial =
        time_ms([&] { eig_serial = ht::linalg::jacobi_eig_serial(gram_serial); }, reps);
    const double t_parallel =
        time_ms([&] { eig_parallel = ht::linalg::jacobi_eig(gram_parallel); }, reps);
    report("jacobi_eig", t_serial, t_parallel,
           max_abs_diff(eig_serial.values, eig_parallel.values));
  }

  const auto svd = ht::linalg::top_k_svd(w, static_cast<int>(k));
  const ht::Matrix& topics = svd.left_vectors;
  std::vector<double> a, b;

  {
    const double t_serial =
        time_ms([&] { a = ht::kernels::ref::projection_energies(topics, w); }, reps);
    const double t_parallel =
        time_ms([&] { b = ht::kernels::projection_energies(topics, w); }, reps);
    report("projection_energies", t_serial, t_parallel, max_abs_diff(a, b));
  }

  {
    const double t_serial =
        time_ms([&] { a = ht::kernels::ref::column_reconstruction_errors(topics, w); }, reps);
    const double t_parallel =
        time_ms([&] { b = ht::kernels::column_reconstruction_errors(topics, w); }, reps);
    report("column_reconstruction_err", t_serial, t_parallel, max_abs_diff(a, b));
  }

  {
    const ht::Matrix summary = random_matrix(dim, 100, 2);
    const double t_serial =
        time_ms([&] { a = ht::kernels::ref::topic_summary_means(topics, summary); }, reps);
    const double t_parallel =
        time_ms([&] { b = ht::kernels::topic_summary_means(topics, summary); }, reps);
    report("topic_summary_means", t_serial, t_parallel, max_abs_diff(a, b));
  }

  return 0;
}
