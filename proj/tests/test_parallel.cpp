#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <omp.h>

#include <random>

#include "voa/exactlin.hpp"

using namespace voa;

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

Rat cofactor_det(const lin::Mat& m) {
  int n = m.rows;
  if (n == 1) return m.at(0, 0);
  Rat d = 0;
  for (int c = 0; c < n; ++c) {
    if (is_zero(m.at(0, c))) continue;
    lin::Mat minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int k = 0; k < n; ++k) {
        if (k == c) continue;
        minor.at(r - 1, cc++) = m.at(r, k);
      }
    }
    Rat term = m.at(0, c) * cofactor_det(minor);
    d += (c & 1) ? Rat(-term) : term;
  }
  return d;
}

}  // namespace

TEST_CASE("parallel elimination matches the serial reference") {
  omp_set_num_threads(4);
  int shapes[][2] = {{1, 1},  {5, 8},   {8, 5},  {20, 20},
                     {30, 45}, {45, 30}, {60, 60}};
  for (auto& s : shapes)
    for (unsigned seed = 1; seed <= 3; ++seed) {
      lin::Mat m = random_mat(s[0], s[1], 97 * seed + s[0]);
      lin::Rref a = lin::rref(m);
      lin::Rref b = lin::rref_reference(m);
      REQUIRE(a.rank == b.rank);
      REQUIRE(a.pivots == b.pivots);
      REQUIRE(a.r == b.r);
    }
}

TEST_CASE("rank deficient inputs agree between the two paths") {
  omp_set_num_threads(4);
  lin::Mat base = random_mat(12, 20, 11);
  lin::Mat m(20, 20);
  for (int r = 0; r < 12; ++r)
    for (int c = 0; c < 20; ++c) m.at(r, c) = base.at(r, c);
  for (int r = 12; r < 20; ++r)
    for (int c = 0; c < 20; ++c)
      m.at(r, c) = base.at(r - 12, c) * Rat(r) + base.at((r + 3) % 12, c);
  lin::Rref a = lin::rref(m);
  lin::Rref b = lin::rref_reference(m);
  CHECK(a.rank == b.rank);
  CHECK(a.rank <= 12);
  CHECK(a.r == b.r);
  // kernel vectors of the production result annihilate the original matrix
  auto ker = lin::kernel_basis(m);
  CHECK(int(ker.size()) == 20 - a.rank);
  for (const auto& k : ker)
    for (int r = 0; r < m.rows; ++r) {
      Rat s = 0;
      for (int c = 0; c < m.cols; ++c) s += m.at(r, c) * k[c];
      CHECK(is_zero(s));
    }
}

TEST_CASE("parallel determinant matches cofactor expansion") {
  omp_set_num_threads(4);
  for (int n = 1; n <= 6; ++n)
    for (unsigned seed = 1; seed <= 2; ++seed) {
      lin::Mat m = random_mat(n, n, 31 * seed + n);
      CHECK(lin::determinant(m) == cofactor_det(m));
    }
  CHECK(lin::determinant(lin::Mat::identity(30)) == 1);
  lin::Mat sing = random_mat(10, 10, 7);
  for (int c = 0; c < 10; ++c) sing.at(9, c) = sing.at(0, c) + sing.at(1, c);
  CHECK(lin::determinant(sing) == 0);
}
