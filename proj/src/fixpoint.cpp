#include "voa/fixpoint.hpp"

#include <algorithm>
#include <utility>

#include "voa/check.hpp"

namespace voa {

namespace {

std::uint64_t pack_key(int p, int i, int n, int q, int j) {
  return (std::uint64_t(p) << 52) | (std::uint64_t(i) << 36) |
         (std::uint64_t(n + 512) << 24) | (std::uint64_t(q) << 16) |
         std::uint64_t(j);
}

int leading_col(const lin::DenseVec& v) {
  for (int k = 0; k < int(v.size()); ++k)
    if (!is_zero(v[k])) return k;
  return -1;
}

// rows must carry the identity pattern on their pivot columns, so that
// coordinates can be read off instead of solved for
void verify_echelon(const std::vector<lin::DenseVec>& rows,
                    const std::vector<int>& piv, const char* what) {
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t s = 0; s < rows.size(); ++s)
      check(rows[r][piv[s]] == (r == s ? 1 : 0), what);
}

std::optional<lin::DenseVec> coords_in(const std::vector<lin::DenseVec>& rows,
                                       const std::vector<int>& piv,
                                       const lin::DenseVec& x) {
  lin::DenseVec c(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) c[r] = x[piv[r]];
  lin::DenseVec recon(x.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (is_zero(c[r])) continue;
    for (std::size_t k = 0; k < recon.size(); ++k)
      if (!is_zero(rows[r][k])) recon[k] += c[r] * rows[r][k];
  }
  if (recon != x) return std::nullopt;
  return c;
}

lin::DenseVec flatten_maps(const GradedMaps& g) {
  lin::DenseVec out;
  for (const auto& m : g.maps) out.insert(out.end(), m.a.begin(), m.a.end());
  return out;
}

}  // namespace

SubAlgebra::SubAlgebra(const GradedAlgebra& parent,
                       std::vector<std::vector<lin::DenseVec>> bases,
                       std::string label_prefix)
    : parent_(parent),
      prefix_(std::move(label_prefix)),
      bases_(std::move(bases)) {
  check(bases_.size() >= 3 && int(bases_.size()) - 1 <= parent_.max_weight(),
        "subalgebra: window must hold the vacuum and conformal blocks");
  pivots_.resize(bases_.size());
  for (std::size_t m = 0; m < bases_.size(); ++m) {
    for (const auto& b : bases_[m]) {
      check(int(b.size()) == parent_.dim(int(m)),
            "subalgebra: basis vector length mismatch");
      int p = leading_col(b);
      check(p >= 0, "subalgebra: zero basis vector");
      pivots_[m].push_back(p);
    }
    verify_echelon(bases_[m], pivots_[m],
                   "subalgebra: basis rows are not in echelon form");
  }
  auto v = from_parent(parent_.vacuum());
  check(v.has_value(), "subalgebra: vacuum not inside the span");
  vac_ = std::move(*v);
  auto o = from_parent(parent_.omega());
  check(o.has_value(), "subalgebra: conformal vector not inside the span");
  om_ = std::move(*o);
}

std::optional<WVec> SubAlgebra::from_parent(const WVec& w) const {
  if (w.m < 0) return WVec{};
  if (w.m >= int(bases_.size())) return std::nullopt;
  auto c = coords_in(bases_[w.m], pivots_[w.m], w.v);
  if (!c) return std::nullopt;
  return WVec{w.m, std::move(*c)};
}

WVec SubAlgebra::to_parent(const WVec& w) const {
  if (w.m < 0) return WVec{};
  check(w.m < int(bases_.size()), "to_parent: block out of range");
  lin::DenseVec out(parent_.dim(w.m));
  for (std::size_t r = 0; r < bases_[w.m].size(); ++r) {
    if (is_zero(w.v[r])) continue;
    for (std::size_t k = 0; k < out.size(); ++k)
      if (!is_zero(bases_[w.m][r][k])) out[k] += w.v[r] * bases_[w.m][r][k];
  }
  return WVec{w.m, std::move(out)};
}

const lin::SpVec& SubAlgebra::product(int p, int i, int n, int q,
                                      int j) const {
  int t = p + q - n - 1;
  check(t >= 0 && t <= max_weight(), "subalgebra product: target outside");
  std::uint64_t key = pack_key(p, i, n, q, j);
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  WVec w =
      mode_apply(parent_, WVec{p, bases_[p][i]}, n, WVec{q, bases_[q][j]});
  lin::SpVec out;
  if (w.m >= 0) {
    auto c = from_parent(w);
    check(c.has_value(), "subalgebra product escaped the span");
    out = lin::spv_from_dense(c->v);
  }
  std::lock_guard<std::mutex> lk(cache_mu_);
  // entries are immutable once inserted, so the reference stays valid
  return cache_.emplace(key, std::move(out)).first->second;
}

std::string SubAlgebra::basis_label(int m, int i) const {
  return prefix_ + "(" + std::to_string(m) + "," + std::to_string(i) + ")";
}

FixedPointAlgebra fixed_point_subalgebra(const LatticeArena& parent,
                                         int cutoff) {
  int N = cutoff < 0 ? parent.max_weight() : cutoff;
  check(N >= 2 && N <= parent.max_weight(),
        "fixed points: cutoff outside the parent window");
  check(parent.lattice().rank == 1, "fixed points: rank one parent expected");
  WVec e = parent.exp_state({1});
  check(e.m == 1, "fixed points: charge one vector must have weight one");
  FixedPointAlgebra out;
  out.parent = &parent;
  std::vector<std::vector<lin::DenseVec>> bases(N + 1);
  out.charge.resize(N + 1);
  for (int k = 0; k <= N; ++k) {
    lin::Mat zk = o_matrix(parent, e, k);
    int d = parent.dim(k);
    // the operator raises charge by one, so the kernel splits along the
    // contiguous charge ranges of the block ordering
    int lo = 0;
    while (lo < d) {
      int c = parent.key(k, lo).charge[0];
      int hi = lo;
      while (hi < d && parent.key(k, hi).charge[0] == c) ++hi;
      lin::Mat sub(zk.rows, hi - lo);
      for (int r = 0; r < zk.rows; ++r)
        for (int col = lo; col < hi; ++col)
          sub.at(r, col - lo) = zk.at(r, col);
      auto ker = lin::kernel_basis(sub);
      if (!ker.empty()) {
        lin::Mat km(int(ker.size()), hi - lo);
        for (int r = 0; r < km.rows; ++r)
          for (int col = 0; col < km.cols; ++col) km.at(r, col) = ker[r][col];
        lin::Rref rr = lin::rref(km);
        check(rr.rank == int(ker.size()),
              "fixed points: dependent kernel basis");
        for (int r = 0; r < rr.rank; ++r) {
          lin::DenseVec full(d);
          for (int col = lo; col < hi; ++col) full[col] = rr.r.at(r, col - lo);
          bases[k].push_back(std::move(full));
          out.charge[k].push_back(c);
        }
      }
      lo = hi;
    }
  }
  out.alg = std::make_unique<SubAlgebra>(parent, std::move(bases), "fix");
  return out;
}

void verify_product_closure(const GradedAlgebra& alg) {
  int N = alg.max_weight();
  for (int p = 0; p <= N; ++p)
    for (int q = 0; q <= N; ++q)
      for (int t = 0; t <= N; ++t) {
        int n = p + q - t - 1;
        for (int i = 0; i < alg.dim(p); ++i)
          for (int j = 0; j < alg.dim(q); ++j) alg.product(p, i, n, q, j);
      }
}

HwReport virasoro_highest_weights(const GradedAlgebra& alg) {
  int N = alg.max_weight();
  HwReport rep;
  rep.kernel_dims.resize(N + 1);
  for (int k = 0; k <= N; ++k) {
    lin::Mat l1 = virasoro_matrix(alg, 1, k);
    lin::Mat l2 = virasoro_matrix(alg, 2, k);
    lin::Mat st(l1.rows + l2.rows, alg.dim(k));
    for (int r = 0; r < l1.rows; ++r)
      for (int c = 0; c < st.cols; ++c) st.at(r, c) = l1.at(r, c);
    for (int r = 0; r < l2.rows; ++r)
      for (int c = 0; c < st.cols; ++c) st.at(l1.rows + r, c) = l2.at(r, c);
    auto ker = lin::kernel_basis(st);
    rep.kernel_dims[k] = int(ker.size());
    if (!ker.empty()) {
      rep.weights.push_back(k);
      rep.vectors.push_back(WVec{k, ker[0]});
    }
  }
  return rep;
}

IdealChain ideal_chain(const FixedPointAlgebra& fpa, int n) {
  const SubAlgebra& A = fpa.sub();
  int N = A.max_weight();
  long aa = fpa.parent->lattice().g(0, 0);
  IdealChain out;
  out.n = n;
  check(n >= 1 && n * n * aa / 2 <= N,
        "ideal chain: seed weight above the window");
  WVec seed_par = fpa.parent->exp_state(std::vector<int>{n});
  auto seed = A.from_parent(seed_par);
  check(seed.has_value(), "ideal chain: seed escapes the fixed points");
  std::vector<lin::IncRref> acc;
  for (int k = 0; k <= N; ++k) acc.emplace_back(A.dim(k));
  std::vector<WVec> frontier;
  check(acc[seed->m].add_row(seed->v), "ideal chain: zero seed");
  frontier.push_back(*seed);
  while (!frontier.empty()) {
    std::vector<WVec> next;
    for (const auto& x : frontier)
      for (int p = 0; p <= N; ++p)
        for (int i = 0; i < A.dim(p); ++i) {
          WVec u = basis_wvec(A, p, i);
          int nhi = p + x.m - 1;
          for (int mode = nhi - N; mode <= nhi; ++mode) {
            WVec w = mode_apply(A, u, mode, x);
            if (w.m < 0 || wvec_is_zero(w)) continue;
            if (acc[w.m].add_row(w.v)) next.push_back(std::move(w));
          }
        }
    frontier = std::move(next);
  }
  out.stable = true;
  out.dims.resize(N + 1);
  out.basis.resize(N + 1);
  for (int k = 0; k <= N; ++k) {
    out.dims[k] = acc[k].rank();
    out.basis[k] = acc[k].rows();
  }
  out.climbing_mode = int(-n * aa - 1);
  if ((n + 1) * (n + 1) * aa / 2 <= N) {
    out.climbing_applicable = true;
    WVec next_par = fpa.parent->exp_state(std::vector<int>{n + 1});
    auto next_sub = A.from_parent(next_par);
    check(next_sub.has_value(),
          "ideal chain: next exponential escapes the fixed points");
    out.climbing_in_ideal = acc[next_sub->m].contains(next_sub->v);
    auto e1 = A.from_parent(fpa.parent->exp_state(std::vector<int>{1}));
    check(e1.has_value(), "ideal chain: generator escapes the fixed points");
    WVec y = mode_apply(A, *e1, out.climbing_mode, *seed);
    if (y.m == next_sub->m && !wvec_is_zero(y)) {
      int piv = leading_col(next_sub->v);
      Rat coeff = y.v[piv] / next_sub->v[piv];
      lin::DenseVec scaled = next_sub->v;
      for (auto& x : scaled) x *= coeff;
      if (y.v == scaled) out.climbing_coeff = coeff;
    }
  }
  return out;
}

GradedMaps charge_scaling(const FixedPointAlgebra& fpa, const Rat& lambda) {
  check(!is_zero(lambda), "charge scaling: scalar must be nonzero");
  const SubAlgebra& A = fpa.sub();
  GradedMaps g;
  g.bound = A.max_weight();
  for (int m = 0; m <= g.bound; ++m) {
    lin::Mat d = lin::Mat::zero(A.dim(m), A.dim(m));
    for (int i = 0; i < A.dim(m); ++i) {
      int c = fpa.charge[m][i];
      Rat v = 1;
      for (int k = 0; k < (c < 0 ? -c : c); ++k) v *= lambda;
      if (c < 0) v = Rat(1) / v;
      d.at(i, i) = v;
    }
    g.maps.push_back(std::move(d));
  }
  return g;
}

AutoCheck sigma_lambda_check(const FixedPointAlgebra& fpa, const Rat& lambda) {
  return check_automorphism(fpa.sub(), charge_scaling(fpa, lambda));
}

DirectSumVOA::DirectSumVOA(
    const LatticeArena& parent, std::vector<int> hw_weights,
    std::vector<std::vector<std::vector<lin::DenseVec>>> bases)
    : parent_(parent), hw_(std::move(hw_weights)) {
  check(!hw_.empty() && hw_[0] == 0 && !bases.empty() &&
            bases.size() == hw_.size(),
        "direct sum: first summand must sit at weight zero");
  std::size_t blocks = bases[0].size();
  check(blocks >= 3 && int(blocks) - 1 <= parent_.max_weight(),
        "direct sum: window must hold the vacuum and conformal blocks");
  rows_.resize(blocks);
  summand_.resize(blocks);
  pivots_.resize(blocks);
  for (std::size_t s = 0; s < bases.size(); ++s) {
    check(bases[s].size() == blocks, "direct sum: ragged summand windows");
    if (s > 0)
      check(hw_[s] > hw_[s - 1],
            "direct sum: highest weights must strictly increase");
    for (std::size_t k = 0; k < blocks; ++k)
      for (auto& b : bases[s][k]) {
        check(int(b.size()) == parent_.dim(int(k)),
              "direct sum: basis vector length mismatch");
        int p = leading_col(b);
        check(p >= 0, "direct sum: zero basis vector");
        rows_[k].push_back(std::move(b));
        summand_[k].push_back(int(s));
        pivots_[k].push_back(p);
      }
  }
  for (std::size_t k = 0; k < blocks; ++k)
    verify_echelon(rows_[k], pivots_[k],
                   "direct sum: summand rows are not jointly in echelon form");
  auto v = from_parent(parent_.vacuum());
  check(v.has_value() && !wvec_is_zero(*v), "direct sum: vacuum not inside");
  vac_ = std::move(*v);
  auto o = from_parent(parent_.omega());
  check(o.has_value() && !wvec_is_zero(*o),
        "direct sum: conformal vector not inside");
  om_ = std::move(*o);
  check(summand_[vac_.m][leading_col(vac_.v)] == 0 &&
            summand_[om_.m][leading_col(om_.v)] == 0,
        "direct sum: vacuum and conformal vector must sit in the first "
        "summand");
}

std::optional<WVec> DirectSumVOA::from_parent(const WVec& w) const {
  if (w.m < 0) return WVec{};
  if (w.m >= int(rows_.size())) return std::nullopt;
  auto c = coords_in(rows_[w.m], pivots_[w.m], w.v);
  if (!c) return std::nullopt;
  return WVec{w.m, std::move(*c)};
}

int DirectSumVOA::summand_dim(int m, int s) const {
  int d = 0;
  for (int x : summand_[m]) d += x == s;
  return d;
}

const lin::SpVec& DirectSumVOA::product(int p, int i, int n, int q,
                                        int j) const {
  static const lin::SpVec empty;
  int t = p + q - n - 1;
  check(t >= 0 && t <= max_weight(), "direct sum product: target outside");
  int s = summand_[p][i];
  int u = summand_[q][j];
  if (s > 0 && u > 0) return empty;
  std::uint64_t key = pack_key(p, i, n, q, j);
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  WVec val;
  if (s == 0) {
    val = mode_apply(parent_, WVec{p, rows_[p][i]}, n, WVec{q, rows_[q][j]});
  } else {
    // positive summand acting on the first: transport the inherited action
    // across skew symmetry, an exact finite sum because every displaced
    // mode eventually lands below weight zero
    val = WVec{t, lin::DenseVec(parent_.dim(t))};
    long fact = 1;
    for (int d = 0; p + q - (n + d) - 1 >= 0; ++d) {
      if (d > 0) fact *= d;
      WVec term = mode_apply(parent_, WVec{q, rows_[q][j]}, n + d,
                             WVec{p, rows_[p][i]});
      for (int l = 0; l < d && term.m >= 0; ++l)
        term = virasoro_apply(parent_, -1, term);
      if (term.m < 0) continue;
      Rat c = frac(((n + d) & 1) ? 1 : -1, fact);
      for (std::size_t r = 0; r < val.v.size(); ++r)
        if (!is_zero(term.v[r])) val.v[r] += c * term.v[r];
    }
  }
  lin::SpVec out;
  if (val.m >= 0) {
    auto cv = from_parent(val);
    check(cv.has_value(), "direct sum product escaped the summand spans");
    int expect = s == 0 ? u : s;
    for (std::size_t r = 0; r < cv->v.size(); ++r)
      check(is_zero(cv->v[r]) || summand_[t][r] == expect,
            "direct sum product crossed summands");
    out = lin::spv_from_dense(cv->v);
  }
  std::lock_guard<std::mutex> lk(cache_mu_);
  return cache_.emplace(key, std::move(out)).first->second;
}

std::string DirectSumVOA::basis_label(int m, int i) const {
  return "u" + std::to_string(summand_[m][i]) + "(" + std::to_string(m) + "," +
         std::to_string(i) + ")";
}

DsumBuild build_dsum_voa(const LatticeArena& parent, const DsumSpec& spec) {
  DsumBuild rep;
  const auto& hw = spec.hw_weights;
  int N = spec.cutoff;
  if (hw.empty() || hw[0] != 0) {
    rep.error = "first summand must sit at weight zero";
    return rep;
  }
  for (std::size_t s = 1; s < hw.size(); ++s)
    if (hw[s] <= hw[s - 1]) {
      rep.error = "highest weights must be strictly increasing";
      return rep;
    }
  if (N < 2 || N > parent.max_weight()) {
    rep.error = "cutoff outside the parent window";
    return rep;
  }
  std::vector<int> charges{0};
  for (std::size_t s = 1; s < hw.size(); ++s) {
    int m = 0;
    while (m * m < hw[s]) ++m;
    if (m * m != hw[s]) {
      rep.error = "highest weight is not realizable as a square";
      return rep;
    }
    charges.push_back(m);
  }
  FixedPointAlgebra fpa = fixed_point_subalgebra(parent, N);
  std::vector<std::vector<std::vector<lin::DenseVec>>> bases(hw.size());
  for (auto& b : bases) b.resize(N + 1);
  for (int k = 0; k <= N; ++k)
    for (int i = 0; i < fpa.sub().dim(k); ++i) {
      int c = fpa.charge[k][i];
      for (std::size_t s = 0; s < charges.size(); ++s)
        if (charges[s] == c) bases[s][k].push_back(fpa.sub().parent_vec(k, i));
    }
  rep.alg = std::make_unique<DirectSumVOA>(parent, hw, std::move(bases));
  const DirectSumVOA& D = *rep.alg;

  rep.vacuum_ok = true;
  WVec vac = D.vacuum();
  for (int m = 0; m <= N && rep.vacuum_ok; ++m)
    for (int i = 0; i < D.dim(m) && rep.vacuum_ok; ++i) {
      WVec v = basis_wvec(D, m, i);
      rep.vacuum_ok = mode_apply(D, v, -1, vac) == v &&
                      mode_apply(D, vac, -1, v) == v;
      for (int n = 0; n <= m - 1 && rep.vacuum_ok; ++n)
        rep.vacuum_ok = wvec_is_zero(mode_apply(D, v, n, vac));
    }

  rep.translation_ok = true;
  for (int p = 0; p + 1 <= N && rep.translation_ok; ++p)
    for (int i = 0; i < D.dim(p) && rep.translation_ok; ++i) {
      WVec v = basis_wvec(D, p, i);
      WVec lv = virasoro_apply(D, -1, v);
      for (int q = 0; q <= N && rep.translation_ok; ++q) {
        int nhi = p + 1 + q - 1;
        for (int n = nhi - N; n <= nhi && rep.translation_ok; ++n) {
          lin::Mat lhs = mode_matrix(D, lv, n, q);
          lin::Mat rhs = lin::scale(mode_matrix(D, v, n - 1, q), Rat(-n));
          rep.translation_ok = lhs == rhs;
        }
      }
    }

  rep.skew_ok = true;
  for (int p = 0; p <= N && rep.skew_ok; ++p)
    for (int q = 0; q <= N && rep.skew_ok; ++q)
      for (int i = 0; i < D.dim(p) && rep.skew_ok; ++i)
        for (int j = 0; j < D.dim(q) && rep.skew_ok; ++j) {
          WVec x = basis_wvec(D, p, i);
          WVec y = basis_wvec(D, q, j);
          int nhi = p + q - 1;
          for (int n = nhi - N; n <= nhi && rep.skew_ok; ++n) {
            int t = p + q - n - 1;
            WVec lhs = mode_apply(D, x, n, y);
            WVec rhs{t, lin::DenseVec(D.dim(t))};
            long fact = 1;
            for (int d = 0; p + q - (n + d) - 1 >= 0; ++d) {
              if (d > 0) fact *= d;
              WVec term = mode_apply(D, y, n + d, x);
              for (int l = 0; l < d && term.m >= 0; ++l)
                term = virasoro_apply(D, -1, term);
              if (term.m < 0) continue;
              Rat c = frac(((n + d) & 1) ? 1 : -1, fact);
              for (std::size_t r = 0; r < rhs.v.size(); ++r)
                if (!is_zero(term.v[r])) rhs.v[r] += c * term.v[r];
            }
            ++rep.products_checked;
            rep.skew_ok = lhs == rhs;
          }
        }

  rep.ok = rep.vacuum_ok && rep.translation_ok && rep.skew_ok;
  if (!rep.ok) rep.error = "axiom verification failed";
  return rep;
}

GradedMaps summand_scaling(const DirectSumVOA& dsum,
                           const std::vector<Rat>& lambda) {
  check(int(lambda.size()) == dsum.summands() - 1,
        "summand scaling: one scalar per positive summand");
  for (const auto& l : lambda)
    check(!is_zero(l), "summand scaling: scalars must be nonzero");
  GradedMaps g;
  g.bound = dsum.max_weight();
  for (int m = 0; m <= g.bound; ++m) {
    lin::Mat d = lin::Mat::zero(dsum.dim(m), dsum.dim(m));
    for (int i = 0; i < dsum.dim(m); ++i) {
      int s = dsum.summand_of(m, i);
      d.at(i, i) = s == 0 ? Rat(1) : lambda[s - 1];
    }
    g.maps.push_back(std::move(d));
  }
  return g;
}

DsumAutReport dsum_automorphisms(const DirectSumVOA& dsum,
                                 const CompBasis& cb) {
  int N = dsum.max_weight();
  DsumAutReport rep;
  int k = dsum.summands() - 1;
  rep.positive_summands = k;

  std::vector<std::vector<Rat>> samples(3, std::vector<Rat>(k));
  for (int s = 0; s < k; ++s) {
    samples[0][s] = Rat(s + 2);
    samples[1][s] = frac(1, s + 2);
    samples[2][s] = Rat(-1);
  }
  rep.diagonals_accepted = true;
  for (const auto& lam : samples)
    rep.diagonals_accepted =
        rep.diagonals_accepted &&
        check_automorphism(dsum, summand_scaling(dsum, lam)).ok;

  // bleed one summand into another at the lowest weight where the second
  // positive summand exists; distinct highest weights must force rejection
  if (k >= 2 && dsum.hw_weight(2) <= N) {
    int w = dsum.hw_weight(2);
    int col = -1, row = -1;
    for (int i = 0; i < dsum.dim(w); ++i) {
      if (dsum.summand_of(w, i) == 2 && col < 0) col = i;
      if (dsum.summand_of(w, i) == 1 && row < 0) row = i;
    }
    if (col >= 0 && row >= 0) {
      GradedMaps mix = identity_maps_full(dsum);
      mix.maps[w].at(row, col) = 1;
      rep.mixing_verdict = check_automorphism(dsum, mix);
      rep.mixing_rejected = !rep.mixing_verdict.ok;
    }
  }

  DerivationSpace ders = solve_derivations(dsum, cb);
  rep.derivation_dim = ders.dim();

  std::vector<GradedMaps> pred;
  for (int s = 1; s <= k; ++s) {
    GradedMaps d;
    d.bound = N;
    for (int m = 0; m <= N; ++m) {
      lin::Mat dm = lin::Mat::zero(dsum.dim(m), dsum.dim(m));
      for (int i = 0; i < dsum.dim(m); ++i)
        if (dsum.summand_of(m, i) == s) dm.at(i, i) = 1;
      d.maps.push_back(std::move(dm));
    }
    pred.push_back(std::move(d));
  }
  if (rep.derivation_dim == k && k > 0) {
    int width = int(flatten_maps(pred[0]).size());
    lin::IncRref solved(width), predicted(width);
    for (const auto& d : ders.basis) solved.add_row(flatten_maps(d));
    for (const auto& d : pred) predicted.add_row(flatten_maps(d));
    rep.derivations_diagonal = true;
    for (const auto& d : pred)
      rep.derivations_diagonal =
          rep.derivations_diagonal && solved.contains(flatten_maps(d));
    for (const auto& d : ders.basis)
      rep.derivations_diagonal =
          rep.derivations_diagonal && predicted.contains(flatten_maps(d));
  }

  rep.ok = rep.diagonals_accepted && rep.mixing_rejected &&
           rep.derivation_dim == k && rep.derivations_diagonal;
  return rep;
}

NonGenReport non_generation_probe(const GradedAlgebra& alg, int bound) {
  check(bound >= 0 && bound <= alg.max_weight(),
        "non generation probe: bad bound");
  std::vector<WVec> gens;
  for (int m = 0; m <= bound; ++m)
    for (int i = 0; i < alg.dim(m); ++i) gens.push_back(basis_wvec(alg, m, i));
  SpanProbe pr = span_probe(alg, gens);
  NonGenReport rep;
  rep.bound = bound;
  rep.achieved = pr.achieved;
  rep.target = pr.target;
  for (int m = 0; m <= alg.max_weight(); ++m)
    if (pr.achieved[m] < pr.target[m]) {
      rep.first_failure = m;
      break;
    }
  return rep;
}

}  // namespace voa
