#include "voa/autgroup.hpp"

#include "voa/check.hpp"

namespace voa {

GradedMaps identity_maps_full(const GradedAlgebra& alg) {
  GradedMaps e;
  e.bound = alg.max_weight();
  for (int m = 0; m <= e.bound; ++m)
    e.maps.push_back(lin::Mat::identity(alg.dim(m)));
  return e;
}

GradedMaps compose_maps(const GradedMaps& a, const GradedMaps& b) {
  check(a.bound == b.bound, "compose_maps: bounds differ");
  GradedMaps out;
  out.bound = a.bound;
  for (int m = 0; m <= a.bound; ++m)
    out.maps.push_back(lin::mul(a.maps[m], b.maps[m]));
  return out;
}

bool maps_equal(const GradedMaps& a, const GradedMaps& b) {
  if (a.bound != b.bound) return false;
  for (int m = 0; m <= a.bound; ++m)
    if (!(a.maps[m] == b.maps[m])) return false;
  return true;
}

BlockMaps restrict_maps(const GradedMaps& e, int bound) {
  check(bound <= e.bound, "restrict_maps: bound too large");
  BlockMaps out;
  out.bound = bound;
  out.maps.assign(e.maps.begin(), e.maps.begin() + bound + 1);
  return out;
}

GradedMaps extend_map(const GradedAlgebra& alg, const CompBasis& cb,
                      const BlockMaps& g) {
  check(cb.complete, "extend_map needs a complete composition basis");
  check(g.bound == cb.gen_bound, "extend_map: map bound != generator bound");
  GradedMaps out;
  out.bound = alg.max_weight();
  for (int m = 0; m <= out.bound; ++m) {
    int d = alg.dim(m);
    lin::Mat ext(d, d);
    for (int j = 0; j < d; ++j) {
      WVec val = eval_composition_mapped(alg, cb.comps[m][j], g);
      if (val.m < 0) continue;  // mapped value vanished
      check(val.m == m, "mapped composition left its block");
      for (int i = 0; i < d; ++i) ext.at(i, j) = val.v[i];
    }
    out.maps.push_back(lin::mul(ext, cb.C_inv[m]));
  }
  return out;
}

WVec aut_residual(const GradedAlgebra& alg, const GradedMaps& e,
                  const WVec& u, int n, const WVec& v) {
  WVec lhs = apply_block_maps(e, mode_apply(alg, u, n, v));
  WVec rhs = mode_apply(alg, apply_block_maps(e, u), n,
                        apply_block_maps(e, v));
  if (lhs.m < 0) return rhs.m < 0 ? WVec{} : WVec{rhs.m, [&] {
    lin::DenseVec d = rhs.v;
    for (auto& x : d) x = -x;
    return d;
  }()};
  if (rhs.m < 0) return lhs;
  check(lhs.m == rhs.m, "aut_residual: blocks differ");
  WVec out = lhs;
  for (std::size_t k = 0; k < out.v.size(); ++k) out.v[k] -= rhs.v[k];
  return out;
}

AutoCheck check_automorphism(const GradedAlgebra& alg, const GradedMaps& e) {
  int N = alg.max_weight();
  AutoCheck res;
  res.invertible = true;
  for (int m = 0; m <= N; ++m)
    if (!lin::inverse(e.maps[m]).has_value()) {
      res.invertible = false;
      break;
    }
  res.fixes_vacuum =
      apply_block_maps(e, alg.vacuum()) == alg.vacuum();
  res.fixes_omega = apply_block_maps(e, alg.omega()) == alg.omega();
  res.ok = res.invertible && res.fixes_vacuum && res.fixes_omega;
  // Sparse columns of every block map, shared by both sides of the scan:
  // the image of basis vector (m, i) is cols[m][i], and E(u_n v) is a
  // column combination. Per pair (i, j) the coefficient product is formed
  // once and every in-range mode accumulated into reused buffers, so the
  // cost tracks the support of the maps instead of the block dimensions.
  std::vector<std::vector<lin::SpVec>> cols(N + 1);
  for (int m = 0; m <= N; ++m) {
    cols[m].resize(alg.dim(m));
    for (int c = 0; c < alg.dim(m); ++c)
      for (int r = 0; r < alg.dim(m); ++r)
        if (!is_zero(e.maps[m].at(r, c)))
          cols[m][c].emplace_back(r, e.maps[m].at(r, c));
  }
  // accumulators are zeroed in place, never reallocated, so the inner
  // loop stays free of mpq constructions
  int max_dim = 0;
  for (int m = 0; m <= N; ++m) max_dim = std::max(max_dim, alg.dim(m));
  std::vector<lin::DenseVec> lhs(N + 1, lin::DenseVec(max_dim)),
      rhs(N + 1, lin::DenseVec(max_dim));
  for (int p = 0; p <= N && !res.violation; ++p)
    for (int q = 0; q <= N && !res.violation; ++q) {
      int n_lo = p + q - 1 - N, n_hi = p + q - 1;
      for (int i = 0; i < alg.dim(p) && !res.violation; ++i)
        for (int j = 0; j < alg.dim(q) && !res.violation; ++j) {
          for (int n = n_lo; n <= n_hi; ++n) {
            int t = p + q - n - 1;
            for (int r = 0; r < alg.dim(t); ++r) {
              lhs[n - n_lo][r] = 0;
              rhs[n - n_lo][r] = 0;
            }
          }
          for (const auto& [ku, cu] : cols[p][i])
            for (const auto& [kv, cv] : cols[q][j]) {
              Rat cc = cu * cv;
              for (int n = n_lo; n <= n_hi; ++n)
                lin::spv_axpy(rhs[n - n_lo], cc, alg.product(p, ku, n, q, kv));
            }
          for (int n = n_lo; n <= n_hi && !res.violation; ++n) {
            int t = p + q - n - 1;
            for (const auto& [r, c] : alg.product(p, i, n, q, j))
              for (const auto& [row, val] : cols[t][r])
                lhs[n - n_lo][row] += c * val;
            ++res.triples_checked;
            for (int r = 0; r < alg.dim(t); ++r)
              if (lhs[n - n_lo][r] != rhs[n - n_lo][r]) {
                res.violation = true;
                res.p = p;
                res.i = i;
                res.n = n;
                res.q = q;
                res.j = j;
                break;
              }
          }
        }
    }
  res.ok = res.ok && !res.violation;
  return res;
}

GradedMaps exp_zero_mode(const GradedAlgebra& alg, const WVec& x,
                         const Rat& t) {
  check(x.m == 1, "exp_zero_mode expects a weight one element");
  GradedMaps out;
  out.bound = alg.max_weight();
  for (int q = 0; q <= out.bound; ++q) {
    int d = alg.dim(q);
    lin::Mat step = lin::scale(mode_matrix(alg, x, 0, q), t);
    lin::Mat acc = lin::Mat::identity(d);
    lin::Mat pow = lin::Mat::identity(d);
    Rat fact = 1;
    int k = 1;
    for (; k <= d + 1; ++k) {
      pow = lin::mul(step, pow);
      if (pow.is_zero()) break;
      fact *= k;
      acc = lin::add(acc, lin::scale(pow, 1 / fact));
    }
    check(k <= d + 1 || d == 0, "exp_zero_mode: zero mode is not nilpotent");
    out.maps.push_back(std::move(acc));
  }
  return out;
}

}  // namespace voa
