#include "voa/exactlin.hpp"

#include <algorithm>
#include <cassert>

#include "voa/check.hpp"

namespace voa::lin {

SpVec spv_from_dense(const DenseVec& v) {
  SpVec out;
  for (int i = 0; i < int(v.size()); ++i)
    if (!is_zero(v[i])) out.emplace_back(i, v[i]);
  return out;
}

DenseVec spv_to_dense(const SpVec& v, int n) {
  DenseVec out(n);
  for (const auto& [i, c] : v) out[i] = c;
  return out;
}

void spv_axpy(DenseVec& dst, const Rat& c, const SpVec& src) {
  if (is_zero(c)) return;
  for (const auto& [i, x] : src) dst[i] += c * x;
}

void spv_scale(SpVec& v, const Rat& c) {
  if (is_zero(c)) {
    v.clear();
    return;
  }
  for (auto& [i, x] : v) x *= c;
}

SpVec spv_add(const SpVec& a, const SpVec& b) {
  SpVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      out.push_back(a[i++]);
    } else if (a[i].first > b[j].first) {
      out.push_back(b[j++]);
    } else {
      Rat s = a[i].second + b[j].second;
      if (!is_zero(s)) out.emplace_back(a[i].first, s);
      ++i, ++j;
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return out;
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool Mat::is_zero() const {
  for (const auto& x : a)
    if (!voa::is_zero(x)) return false;
  return true;
}

Mat mul(const Mat& x, const Mat& y) {
  assert(x.cols == y.rows);
  Mat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Rat& xik = x.at(i, k);
      if (is_zero(xik)) continue;
      for (int j = 0; j < y.cols; ++j) z.at(i, j) += xik * y.at(k, j);
    }
  return z;
}

DenseVec mul(const Mat& x, const DenseVec& v) {
  assert(int(v.size()) == x.cols);
  DenseVec out(x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      if (!is_zero(x.at(i, j))) out[i] += x.at(i, j) * v[j];
  return out;
}

Mat add(const Mat& x, const Mat& y) {
  assert(x.rows == y.rows && x.cols == y.cols);
  Mat z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
  return z;
}

Mat sub(const Mat& x, const Mat& y) {
  assert(x.rows == y.rows && x.cols == y.cols);
  Mat z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
  return z;
}

Mat scale(const Mat& x, const Rat& c) {
  Mat z = x;
  for (auto& v : z.a) v *= c;
  return z;
}

Mat transpose(const Mat& x) {
  Mat z(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z.at(j, i) = x.at(i, j);
  return z;
}

void SparseMat::add(int r, int c, const Rat& v) {
  if (is_zero(v)) return;
  auto key = std::make_pair(r, c);
  auto it = entries.find(key);
  if (it == entries.end()) {
    entries.emplace(key, v);
  } else {
    it->second += v;
    if (is_zero(it->second)) entries.erase(it);
  }
}

Mat SparseMat::dense() const {
  Mat m(rows, cols);
  for (const auto& [rc, v] : entries) m.at(rc.first, rc.second) = v;
  return m;
}

namespace {

// clear denominators so the fraction-free pass stays in integers
void clear_row_denominators(Mat& m) {
  for (int i = 0; i < m.rows; ++i) {
    Int l = 1;
    for (int j = 0; j < m.cols; ++j) {
      const Rat& x = m.at(i, j);
      if (!is_zero(x)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    if (l != 1) {
      Rat f(l);
      for (int j = 0; j < m.cols; ++j) m.at(i, j) *= f;
    }
  }
}

// back-substitution from echelon form (pivot rows pivots[i] in row i) to the
// unique reduced echelon form
void normalize_to_rref(Mat& m, const std::vector<int>& pivots) {
  for (int i = int(pivots.size()) - 1; i >= 0; --i) {
    int pc = pivots[i];
    Rat inv = 1 / m.at(i, pc);
    for (int j = pc; j < m.cols; ++j) m.at(i, j) *= inv;
    for (int r = 0; r < i; ++r) {
      Rat f = m.at(r, pc);
      if (is_zero(f)) continue;
      for (int j = pc; j < m.cols; ++j) m.at(r, j) -= f * m.at(i, j);
    }
  }
}

}  // namespace

Rref rref(const Mat& m) {
  Rref out;
  out.r = m;
  Mat& w = out.r;
  clear_row_denominators(w);
  Rat prev = 1;
  int pr = 0;
  for (int pc = 0; pc < w.cols && pr < w.rows; ++pc) {
    int sel = -1;
    for (int r = pr; r < w.rows; ++r)
      if (!is_zero(w.at(r, pc))) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != pr)
      for (int j = 0; j < w.cols; ++j) std::swap(w.at(sel, j), w.at(pr, j));
    const Rat piv = w.at(pr, pc);
#pragma omp parallel for schedule(dynamic, 8)
    for (int r = pr + 1; r < w.rows; ++r) {
      const Rat f = w.at(r, pc);
      if (is_zero(f) && prev == 1) continue;
      for (int j = pc; j < w.cols; ++j)
        w.at(r, j) = (piv * w.at(r, j) - f * w.at(pr, j)) / prev;
    }
    prev = piv;
    out.pivots.push_back(pc);
    ++pr;
  }
  out.rank = pr;
  normalize_to_rref(w, out.pivots);
  return out;
}

Rref rref_reference(const Mat& m) {
  Rref out;
  out.r = m;
  Mat& w = out.r;
  int pr = 0;
  for (int pc = 0; pc < w.cols && pr < w.rows; ++pc) {
    int sel = -1;
    for (int r = pr; r < w.rows; ++r)
      if (!is_zero(w.at(r, pc))) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != pr)
      for (int j = 0; j < w.cols; ++j) std::swap(w.at(sel, j), w.at(pr, j));
    Rat inv = 1 / w.at(pr, pc);
    for (int j = pc; j < w.cols; ++j) w.at(pr, j) *= inv;
    for (int r = 0; r < w.rows; ++r) {
      if (r == pr) continue;
      Rat f = w.at(r, pc);
      if (is_zero(f)) continue;
      for (int j = pc; j < w.cols; ++j) w.at(r, j) -= f * w.at(pr, j);
    }
    out.pivots.push_back(pc);
    ++pr;
  }
  out.rank = pr;
  return out;
}

int rank(const Mat& m) { return rref(m).rank; }

std::vector<DenseVec> kernel_basis(const Mat& m) {
  Rref rr = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int p : rr.pivots) is_pivot[p] = true;
  std::vector<DenseVec> out;
  for (int f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    DenseVec x(m.cols);
    x[f] = 1;
    for (int i = 0; i < rr.rank; ++i) x[rr.pivots[i]] = -rr.r.at(i, f);
    out.push_back(std::move(x));
  }
  return out;
}

std::optional<DenseVec> solve(const Mat& m, const DenseVec& b) {
  assert(int(b.size()) == m.rows);
  Mat aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  Rref rr = rref(aug);
  for (int p : rr.pivots)
    if (p == m.cols) return std::nullopt;
  DenseVec x(m.cols);
  for (int i = 0; i < rr.rank; ++i) x[rr.pivots[i]] = rr.r.at(i, m.cols);
  check(mul(m, x) == b, "solve: candidate fails re-multiplication");
  return x;
}

std::optional<Mat> inverse(const Mat& m) {
  assert(m.rows == m.cols);
  int n = m.rows;
  if (n == 0) return Mat(0, 0);
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  Rref rr = rref(aug);
  if (rr.rank < n || rr.pivots[n - 1] >= n) return std::nullopt;
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = rr.r.at(i, n + j);
  return inv;
}

Rat determinant(const Mat& m) {
  assert(m.rows == m.cols);
  int n = m.rows;
  if (n == 0) return 1;
  Mat w = m;
  // row scaling changes det by the product of the scale factors; track it
  Rat scale_inv = 1;
  for (int i = 0; i < n; ++i) {
    Int l = 1;
    for (int j = 0; j < n; ++j)
      if (!is_zero(w.at(i, j)))
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), w.at(i, j).get_den_mpz_t());
    if (l != 1) {
      Rat f(l);
      for (int j = 0; j < n; ++j) w.at(i, j) *= f;
      scale_inv /= f;
    }
  }
  Rat prev = 1;
  int sign = 1;
  for (int pc = 0; pc < n; ++pc) {
    int sel = -1;
    for (int r = pc; r < n; ++r)
      if (!is_zero(w.at(r, pc))) {
        sel = r;
        break;
      }
    if (sel < 0) return 0;
    if (sel != pc) {
      for (int j = 0; j < n; ++j) std::swap(w.at(sel, j), w.at(pc, j));
      sign = -sign;
    }
    const Rat piv = w.at(pc, pc);
#pragma omp parallel for schedule(dynamic, 8)
    for (int r = pc + 1; r < n; ++r) {
      const Rat f = w.at(r, pc);
      for (int j = pc; j < n; ++j)
        w.at(r, j) = (piv * w.at(r, j) - f * w.at(pc, j)) / prev;
    }
    prev = piv;
  }
  // after a full fraction-free pass the last pivot is det of the scaled matrix
  Rat d = w.at(n - 1, n - 1) * scale_inv;
  return sign > 0 ? d : Rat(-d);
}

bool IncRref::reduce_inplace(DenseVec& row) const {
  assert(int(row.size()) == cols_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rat& f = row[pivs_[i]];
    if (is_zero(f)) continue;
    Rat c = f;  // row[pivs_[i]] aliases into row; copy before the sweep
    const DenseVec& base = rows_[i];
    for (int j = pivs_[i]; j < cols_; ++j)
      if (!is_zero(base[j])) row[j] -= c * base[j];
  }
  for (const auto& x : row)
    if (!is_zero(x)) return true;
  return false;
}

bool IncRref::add_row(DenseVec row) {
  if (!reduce_inplace(row)) return false;
  int p = 0;
  while (is_zero(row[p])) ++p;
  Rat inv = 1 / row[p];
  for (int j = p; j < cols_; ++j) row[j] *= inv;
  // keep existing rows reduced against the new one
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Rat f = rows_[i][p];
    if (is_zero(f)) continue;
    for (int j = p; j < cols_; ++j) rows_[i][j] -= f * row[j];
  }
  auto pos = std::upper_bound(pivs_.begin(), pivs_.end(), p) - pivs_.begin();
  pivs_.insert(pivs_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, std::move(row));
  return true;
}

std::vector<DenseVec> IncRref::kernel() const {
  std::vector<bool> is_pivot(cols_, false);
  for (int p : pivs_) is_pivot[p] = true;
  std::vector<DenseVec> out;
  for (int f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    DenseVec x(cols_);
    x[f] = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) x[pivs_[i]] = -rows_[i][f];
    out.push_back(std::move(x));
  }
  return out;
}

KernelTracker::KernelTracker(int n) : n_(n) {
  basis_.reserve(n);
  for (int i = 0; i < n; ++i) {
    DenseVec e(n);
    e[i] = 1;
    basis_.push_back(std::move(e));
  }
}

bool KernelTracker::add_row(const SpVec& row) {
  int k = dim();
  if (k == 0) return false;
  // v = row applied to each basis vector
  DenseVec v(k);
  bool any = false;
  for (int t = 0; t < k; ++t) {
    Rat s = 0;
    for (const auto& [i, c] : row) s += c * basis_[t][i];
    if (!is_zero(s)) any = true;
    v[t] = std::move(s);
  }
  if (!any) return false;
  int j = 0;
  while (is_zero(v[j])) ++j;
  // kernel of the functional v on the current basis: for t != j keep
  // basis_t - (v_t / v_j) basis_j
  std::vector<DenseVec> next;
  next.reserve(k - 1);
  for (int t = 0; t < k; ++t) {
    if (t == j) continue;
    if (is_zero(v[t])) {
      next.push_back(std::move(basis_[t]));
      continue;
    }
    Rat f = v[t] / v[j];
    DenseVec w = std::move(basis_[t]);
    for (int i = 0; i < n_; ++i)
      if (!is_zero(basis_[j][i])) w[i] -= f * basis_[j][i];
    next.push_back(std::move(w));
  }
  basis_ = std::move(next);
  return true;
}

std::vector<DenseVec> KernelTracker::basis() const {
  IncRref acc(n_);
  for (const auto& b : basis_) acc.add_row(b);
  return acc.rows();
}

}  // namespace voa::lin
