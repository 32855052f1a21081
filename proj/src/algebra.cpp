#include "voa/algebra.hpp"

#include "voa/check.hpp"

namespace voa {

bool wvec_is_zero(const WVec& w) {
  for (const auto& x : w.v)
    if (!is_zero(x)) return false;
  return true;
}

int GradedAlgebra::total_dim() const {
  int t = 0;
  for (int m = 0; m <= max_weight(); ++m) t += dim(m);
  return t;
}

WVec basis_wvec(const GradedAlgebra& alg, int m, int i) {
  WVec w{m, lin::DenseVec(alg.dim(m))};
  w.v[i] = 1;
  return w;
}

WVec mode_apply(const GradedAlgebra& alg, const WVec& u, int n, const WVec& v,
                bool* truncated) {
  if (u.m < 0 || v.m < 0) return WVec{};
  int target = u.m + v.m - n - 1;
  if (target < 0) return WVec{};
  if (target > alg.max_weight()) {
    if (truncated) *truncated = true;
    return WVec{};
  }
  WVec out{target, lin::DenseVec(alg.dim(target))};
  for (int i = 0; i < int(u.v.size()); ++i) {
    if (is_zero(u.v[i])) continue;
    for (int j = 0; j < int(v.v.size()); ++j) {
      if (is_zero(v.v[j])) continue;
      Rat c = u.v[i] * v.v[j];
      lin::spv_axpy(out.v, c, alg.product(u.m, i, n, v.m, j));
    }
  }
  return out;
}

lin::Mat mode_matrix(const GradedAlgebra& alg, const WVec& u, int n, int q,
                     bool* truncated) {
  check(u.m >= 0, "mode_matrix: zero operand");
  int target = u.m + q - n - 1;
  if (target < 0 || target > alg.max_weight()) {
    if (target > alg.max_weight() && truncated) *truncated = true;
    return lin::Mat(0, alg.dim(q));
  }
  lin::Mat out(alg.dim(target), alg.dim(q));
  for (int j = 0; j < alg.dim(q); ++j) {
    for (int i = 0; i < int(u.v.size()); ++i) {
      if (is_zero(u.v[i])) continue;
      for (const auto& [r, c] : alg.product(u.m, i, n, q, j))
        out.at(r, j) += u.v[i] * c;
    }
  }
  return out;
}

lin::Mat o_matrix(const GradedAlgebra& alg, const WVec& u, int q,
                  bool* truncated) {
  return mode_matrix(alg, u, u.m - 1, q, truncated);
}

WVec virasoro_apply(const GradedAlgebra& alg, int k, const WVec& v,
                    bool* truncated) {
  return mode_apply(alg, alg.omega(), k + 1, v, truncated);
}

lin::Mat virasoro_matrix(const GradedAlgebra& alg, int k, int q,
                         bool* truncated) {
  return mode_matrix(alg, alg.omega(), k + 1, q, truncated);
}

}  // namespace voa
