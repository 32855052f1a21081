// Timing comparison of the parallel elimination kernels against the serial
// reference on random rational matrices. Not a test; the equality line at
// the end is a sanity print, the real cross-checks live in test_parallel.

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

#include "voa/exactlin.hpp"

using namespace voa;
namespace chrono = std::chrono;

namespace {

lin::Mat random_mat(int rows, int cols, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  lin::Mat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.at(r, c) = frac(num(gen), den(gen));
  return m;
}

template <class F>
long ms(F&& f) {
  auto t0 = chrono::steady_clock::now();
  f();
  auto t1 = chrono::steady_clock::now();
  return chrono::duration_cast<chrono::milliseconds>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 90;
  std::cout << "threads " << omp_get_max_threads() << "\n";

  lin::Mat m = random_mat(n, n + n / 2, 42);
  lin::Rref prod, ref;
  long t_prod = ms([&] { prod = lin::rref(m); });
  long t_ref = ms([&] { ref = lin::rref_reference(m); });
  std::cout << "rref " << n << "x" << (n + n / 2) << ": production " << t_prod
            << " ms, reference " << t_ref << " ms\n";

  lin::Mat sq = random_mat(n, n, 43);
  Rat det;
  long t_det = ms([&] { det = lin::determinant(sq); });
  std::cout << "determinant " << n << "x" << n << ": " << t_det << " ms\n";

  bool same = prod.rank == ref.rank && prod.r == ref.r;
  std::cout << "paths agree: " << (same ? "yes" : "NO") << "\n";
  return same ? 0 : 1;
}
