#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "voa/exactlin.hpp"
#include "voa/partitions.hpp"
#include "voa/rational.hpp"

using namespace voa;
using namespace voa::lin;

namespace {

Mat from_rows(const std::vector<std::vector<long>>& rows) {
  int r = int(rows.size());
  int c = r ? int(rows[0].size()) : 0;
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  return m;
}

Mat random_mat(std::mt19937& rng, int r, int c) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> zero(0, 2);
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (zero(rng) != 0) m.at(i, j) = frac(num(rng), den(rng));
  return m;
}

}  // namespace

TEST_CASE("rational parse and print round trip") {
  CHECK(rat_str(Rat(-128)) == "-128");
  CHECK(rat_str(Rat(3, 4)) == "3/4");
  CHECK(rat_str(frac(-6, 4)) == "-3/2");
  CHECK(frac(2, 4) == Rat(1, 2));
  CHECK(rat_str(Rat(0)) == "0");
  CHECK(*rat_parse("-128") == Rat(-128));
  CHECK(*rat_parse("3/4") == Rat(3, 4));
  CHECK(*rat_parse("-6/4") == Rat(-3, 2));
  CHECK(!rat_parse("1/0"));
  CHECK(!rat_parse(""));
  CHECK(!rat_parse("x"));
  CHECK(!rat_parse("1/2/3"));
  CHECK(!rat_parse("1.5"));
}

TEST_CASE("binomials, including negative upper index") {
  CHECK(binom(5, 2) == 10);
  CHECK(binom(0, 0) == 1);
  CHECK(binom_gen(4, 2) == 6);
  CHECK(binom_gen(-1, 0) == 1);
  CHECK(binom_gen(-1, 1) == -1);
  CHECK(binom_gen(-1, 2) == 1);
  CHECK(binom_gen(-2, 3) == -4);
  // C(m+i-1, i) family used by the mode recursion
  CHECK(binom_gen(2, 2) == 1);   // m=1, i=2
  CHECK(binom_gen(-3, 2) == 6);  // m=-2, i=2: C(-3,2)=6
}

TEST_CASE("kernel of a single relation") {
  Mat m = from_rows({{1, -1}});
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == DenseVec{Rat(1), Rat(1)});
}

TEST_CASE("kernel of an adjoint-action matrix") {
  // ad(e) on the ordered basis (a, e, f) of a three dimensional simple
  // algebra with [a,e]=2e, [a,f]=-2f, [e,f]=a: columns are images.
  Mat m = from_rows({{0, 0, 1}, {-2, 0, 0}, {0, 0, 0}});
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == DenseVec{Rat(0), Rat(1), Rat(0)});
  CHECK(rank(m) == 2);
}

TEST_CASE("determinants of small pairing matrices") {
  CHECK(determinant(from_rows({{0, 4}, {4, 0}})) == Rat(-16));
  CHECK(determinant(from_rows({{8, 0, 0}, {0, 0, 4}, {0, 4, 0}})) ==
        Rat(-128));
  CHECK(determinant(from_rows({{2}})) == Rat(2));
  CHECK(determinant(Mat::identity(4)) == Rat(1));
  CHECK(determinant(from_rows({{1, 2}, {2, 4}})) == Rat(0));
  Mat q(2, 2);
  q.at(0, 0) = Rat(1, 2);
  q.at(0, 1) = Rat(1, 3);
  q.at(1, 0) = Rat(1, 4);
  q.at(1, 1) = Rat(1, 5);
  CHECK(determinant(q) == Rat(1, 10) - Rat(1, 12));
}

TEST_CASE("production rref agrees with the serial reference") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 1 + int(rng() % 8), c = 1 + int(rng() % 8);
    Mat m = random_mat(rng, r, c);
    Rref fast = rref(m);
    Rref slow = rref_reference(m);
    CHECK(fast.rank == slow.rank);
    CHECK(fast.pivots == slow.pivots);
    CHECK(fast.r == slow.r);
  }
}

TEST_CASE("rref is deterministic across repeated runs") {
  std::mt19937 rng(777);
  Mat m = random_mat(rng, 7, 9);
  Rref a = rref(m);
  Rref b = rref(m);
  CHECK(a.r == b.r);
  CHECK(a.pivots == b.pivots);
}

TEST_CASE("rank-nullity on generated matrices") {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 30; ++trial) {
    int r = 1 + int(rng() % 7), c = 1 + int(rng() % 7);
    Mat m = random_mat(rng, r, c);
    auto k = kernel_basis(m);
    CHECK(rank(m) + int(k.size()) == c);
    for (const auto& v : k) {
      DenseVec im = mul(m, v);
      for (const auto& x : im) CHECK(is_zero(x));
    }
  }
}

TEST_CASE("solve returns a verified solution or reports inconsistency") {
  Mat m = from_rows({{1, 2}, {3, 4}});
  auto x = solve(m, {Rat(5), Rat(6)});
  REQUIRE(x.has_value());
  CHECK(mul(m, *x) == DenseVec{Rat(5), Rat(6)});
  Mat sing = from_rows({{1, 1}, {1, 1}});
  CHECK(!solve(sing, {Rat(0), Rat(1)}).has_value());
  auto y = solve(sing, {Rat(2), Rat(2)});
  REQUIRE(y.has_value());
  CHECK(mul(sing, *y) == DenseVec{Rat(2), Rat(2)});
}

TEST_CASE("inverse round trips") {
  Mat m = from_rows({{2, 1}, {7, 4}});
  auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK(mul(m, *inv) == Mat::identity(2));
  CHECK(mul(*inv, m) == Mat::identity(2));
  CHECK(!inverse(from_rows({{1, 2}, {2, 4}})).has_value());
}

TEST_CASE("incremental rref accumulates rank and reports membership") {
  IncRref acc(3);
  CHECK(acc.add_row({Rat(1), Rat(2), Rat(3)}));
  CHECK(!acc.add_row({Rat(2), Rat(4), Rat(6)}));
  CHECK(acc.add_row({Rat(0), Rat(1), Rat(1)}));
  CHECK(acc.rank() == 2);
  CHECK(acc.contains({Rat(1), Rat(3), Rat(4)}));
  CHECK(!acc.contains({Rat(0), Rat(0), Rat(1)}));
  auto k = acc.kernel();
  REQUIRE(k.size() == 1);
  // kernel vector must annihilate every accumulated row
  for (const auto& row : acc.rows()) {
    Rat dot = 0;
    for (int j = 0; j < 3; ++j) dot += row[j] * k[0][j];
    CHECK(is_zero(dot));
  }
}

TEST_CASE("incremental rref matches batch rref row space") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    int r = 1 + int(rng() % 8), c = 2 + int(rng() % 6);
    Mat m = random_mat(rng, r, c);
    IncRref acc(c);
    for (int i = 0; i < r; ++i) {
      DenseVec row(c);
      for (int j = 0; j < c; ++j) row[j] = m.at(i, j);
      acc.add_row(std::move(row));
    }
    Rref rr = rref(m);
    CHECK(acc.rank() == rr.rank);
    for (int i = 0; i < rr.rank; ++i) {
      DenseVec row(c);
      for (int j = 0; j < c; ++j) row[j] = rr.r.at(i, j);
      CHECK(acc.rows()[i] == row);  // both are the unique RREF basis
    }
  }
}

TEST_CASE("kernel tracker shrinks to the batch kernel") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    int r = 1 + int(rng() % 10), c = 2 + int(rng() % 6);
    Mat m = random_mat(rng, r, c);
    KernelTracker kt(c);
    for (int i = 0; i < r; ++i) {
      SpVec row;
      for (int j = 0; j < c; ++j)
        if (!is_zero(m.at(i, j))) row.emplace_back(j, m.at(i, j));
      kt.add_row(row);
    }
    auto expect = kernel_basis(m);
    CHECK(kt.dim() == int(expect.size()));
    // same subspace: every tracker basis vector is killed by m and the
    // spans have equal dimension
    IncRref span(c);
    for (const auto& v : expect) span.add_row(v);
    for (const auto& v : kt.basis()) {
      for (const auto& x : mul(m, v)) CHECK(is_zero(x));
      CHECK(span.contains(v));
    }
  }
}

TEST_CASE("sparse matrix builder accumulates and cancels") {
  SparseMat sm(2, 2);
  sm.add(0, 0, Rat(1, 2));
  sm.add(0, 0, Rat(1, 2));
  sm.add(1, 1, Rat(3));
  sm.add(1, 1, Rat(-3));
  Mat m = sm.dense();
  CHECK(m.at(0, 0) == Rat(1));
  CHECK(is_zero(m.at(1, 1)));
  CHECK(sm.entries.size() == 1);
}

TEST_CASE("sparse vector helpers") {
  DenseVec d{Rat(0), Rat(2), Rat(0), Rat(-1)};
  SpVec s = spv_from_dense(d);
  REQUIRE(s.size() == 2);
  CHECK(spv_to_dense(s, 4) == d);
  DenseVec acc(4);
  spv_axpy(acc, Rat(3), s);
  CHECK(acc == DenseVec{Rat(0), Rat(6), Rat(0), Rat(-3)});
  SpVec t{{1, Rat(-2)}, {2, Rat(5)}};
  SpVec u = spv_add(s, t);
  CHECK(u == SpVec{{2, Rat(5)}, {3, Rat(-1)}});
}

TEST_CASE("colored partition counts match the generating series") {
  // one color: ordinary partition numbers 1,1,2,3,5,7,11,15,22,30,42
  std::vector<int> p1 = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int d = 0; d <= 10; ++d) {
    int count = 0;
    colored_partitions(d, 1, [&](const std::vector<PPart>&) { ++count; });
    CHECK(count == p1[d]);
  }
  // two colors: coefficients of 1/phi(q)^2 are 1,2,5,10,20,36
  std::vector<int> p2 = {1, 2, 5, 10, 20, 36};
  for (int d = 0; d <= 5; ++d) {
    int count = 0;
    colored_partitions(d, 2, [&](const std::vector<PPart>&) { ++count; });
    CHECK(count == p2[d]);
  }
}

TEST_CASE("colored partitions arrive canonical and distinct") {
  std::vector<std::vector<PPart>> seen;
  colored_partitions(4, 2, [&](const std::vector<PPart>& parts) {
    int total = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      CHECK(parts[i].n >= 1);
      CHECK(parts[i].mult >= 1);
      total += parts[i].n * parts[i].mult;
      if (i > 0)
        CHECK(std::pair(parts[i - 1].color, parts[i - 1].n) <
              std::pair(parts[i].color, parts[i].n));
    }
    CHECK(total == 4);
    seen.push_back(parts);
  });
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}
