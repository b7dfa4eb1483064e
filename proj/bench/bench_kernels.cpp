// Wall-clock comparison of the OpenMP kernels against their serial references.
// Usage: bench_kernels [n] [repeats]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>

#include "aspatp/la.hpp"

using namespace aspatp::la;

namespace {

DenseMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = u(g);
  return a;
}

double best_of(int repeats, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-18s %12.6f %12.6f %8.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 600;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;
  const DenseMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  const DenseMatrix spd = shifted(serial::gram(a), static_cast<double>(n));
  const Vector x(n, 1.0);
  volatile double sink = 0.0;

  std::printf("n=%zu repeats=%d threads=%d\n", n, repeats, omp_get_max_threads());
  std::printf("%-18s %12s %12s %9s\n", "kernel", "serial_s", "parallel_s", "speedup");
  row("matvec", best_of(repeats * 20, [&] { sink = serial::matvec(a, x)[0]; }),
      best_of(repeats * 20, [&] { sink = matvec(a, x)[0]; }));
  row("matvec_transposed", best_of(repeats * 20, [&] { sink = serial::matvec_transposed(a, x)[0]; }),
      best_of(repeats * 20, [&] { sink = matvec_transposed(a, x)[0]; }));
  row("gram", best_of(repeats, [&] { sink = serial::gram(a)(0, 0); }), best_of(repeats, [&] { sink = gram(a)(0, 0); }));
  row("matmul", best_of(repeats, [&] { sink = serial::matmul(a, b)(0, 0); }),
      best_of(repeats, [&] { sink = matmul(a, b)(0, 0); }));
  row("lu_factor", best_of(repeats, [&] { sink = lu_factor(a, Exec::Serial).lu(0, 0); }),
      best_of(repeats, [&] { sink = lu_factor(a, Exec::Parallel).lu(0, 0); }));
  row("cholesky_factor", best_of(repeats, [&] { sink = cholesky_factor(spd, Exec::Serial).l(0, 0); }),
      best_of(repeats, [&] { sink = cholesky_factor(spd, Exec::Parallel).l(0, 0); }));
  (void)sink;
  return 0;
}
