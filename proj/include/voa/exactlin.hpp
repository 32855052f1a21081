#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "voa/rational.hpp"

namespace voa::lin {

using DenseVec = std::vector<Rat>;

// Sparse vector: (index, value) pairs sorted by index, values nonzero.
using SpVec = std::vector<std::pair<int, Rat>>;

SpVec spv_from_dense(const DenseVec& v);
DenseVec spv_to_dense(const SpVec& v, int n);
// dst += c * src
void spv_axpy(DenseVec& dst, const Rat& c, const SpVec& src);
void spv_scale(SpVec& v, const Rat& c);
// merge-add, dropping zeros
SpVec spv_add(const SpVec& a, const SpVec& b);

struct Mat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;  // row-major
  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * std::size_t(c)) {}
  Rat& at(int r, int c) { return a[std::size_t(r) * cols + c]; }
  const Rat& at(int r, int c) const { return a[std::size_t(r) * cols + c]; }
  bool operator==(const Mat&) const = default;
  static Mat identity(int n);
  static Mat zero(int r, int c) { return Mat(r, c); }
  bool is_zero() const;
};

Mat mul(const Mat& x, const Mat& y);
DenseVec mul(const Mat& x, const DenseVec& v);
Mat add(const Mat& x, const Mat& y);
Mat sub(const Mat& x, const Mat& y);
Mat scale(const Mat& x, const Rat& c);
Mat transpose(const Mat& x);

// Entry-accumulating builder, mirrors how constraint systems are assembled.
struct SparseMat {
  int rows = 0, cols = 0;
  std::map<std::pair<int, int>, Rat> entries;
  SparseMat() = default;
  SparseMat(int r, int c) : rows(r), cols(c) {}
  void add(int r, int c, const Rat& v);
  Mat dense() const;
};

struct Rref {
  Mat r;
  std::vector<int> pivots;  // pivot column of each pivot row
  int rank = 0;
};

// Production path: rows are cleared to integers, the forward pass is
// fraction-free (Bareiss) with first-nonzero row-major pivoting, and the
// bulk row updates run under OpenMP. Normalized to reduced echelon form at
// the end, so the result is the unique RREF of the input.
Rref rref(const Mat& m);

// Plain serial rational Gauss-Jordan. Reference implementation: slower,
// textbook-simple, used to cross-check the production path.
Rref rref_reference(const Mat& m);

int rank(const Mat& m);

// Right kernel, one basis vector per free column (free variable set to 1),
// in ascending free-column order. Deterministic.
std::vector<DenseVec> kernel_basis(const Mat& m);

// One solution of m x = b with free variables zero, verified by
// re-multiplication. nullopt when the system is inconsistent.
std::optional<DenseVec> solve(const Mat& m, const DenseVec& b);

std::optional<Mat> inverse(const Mat& m);

// Exact determinant by the fraction-free forward pass.
Rat determinant(const Mat& m);

// Streaming row-space accumulator holding a reduced basis; add_row returns
// whether the rank grew. Used by spanning checks and basis selection.
class IncRref {
 public:
  explicit IncRref(int cols) : cols_(cols) {}
  bool add_row(DenseVec row);
  bool contains(DenseVec row) const { return !reduce_inplace(row); }
  // reduces row against the stored basis in place; returns false if it
  // vanished (i.e. the row was already in the span)
  bool reduce_inplace(DenseVec& row) const;
  int rank() const { return int(rows_.size()); }
  int cols() const { return cols_; }
  const std::vector<DenseVec>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivs_; }
  // kernel of the accumulated row space
  std::vector<DenseVec> kernel() const;

 private:
  int cols_;
  std::vector<DenseVec> rows_;
  std::vector<int> pivs_;
};

// Kernel tracker for long homogeneous systems: keeps a basis K of the
// common kernel of all rows seen so far and shrinks it as informative rows
// arrive. Rows already annihilated by K cost only nnz(row) * dim K, which
// is what makes streaming hundreds of thousands of constraint rows cheap.
class KernelTracker {
 public:
  explicit KernelTracker(int n);
  // returns true if the row cut the space down
  bool add_row(const SpVec& row);
  int dim() const { return int(basis_.size()); }
  int n() const { return n_; }
  // current kernel basis, RREF-normalized for reproducibility
  std::vector<DenseVec> basis() const;

 private:
  int n_;
  std::vector<DenseVec> basis_;  // columns of K, each length n_
};

}  // namespace voa::lin
