#include "voa/compose.hpp"

#include <algorithm>
#include <utility>

#include "voa/check.hpp"

namespace voa {

WVec apply_block_maps(const BlockMaps& g, const WVec& w) {
  if (w.m < 0) return WVec{};
  check(w.m <= g.bound, "apply_block_maps: block above the map bound");
  return WVec{w.m, lin::mul(g.maps[w.m], w.v)};
}

namespace {

struct Node {
  Composition comp;
  WVec val;
};

}  // namespace

CompBasis explore_compositions(const GradedAlgebra& alg, int gen_bound,
                               ExploreOrder order, int max_len) {
  int N = alg.max_weight();
  check(gen_bound >= 0 && gen_bound <= N, "explore: bad generator bound");
  CompBasis out;
  out.gen_bound = gen_bound;
  out.dims.resize(N + 1);
  for (int m = 0; m <= N; ++m) out.dims[m] = alg.dim(m);
  out.comps.resize(N + 1);
  std::vector<lin::IncRref> acc;
  std::vector<std::vector<lin::DenseVec>> cols(N + 1);
  for (int m = 0; m <= N; ++m) acc.emplace_back(alg.dim(m));
  int remaining = alg.total_dim();
  auto complete = [&] { return remaining == 0; };

  std::vector<Node> frontier;
  auto try_insert = [&](Composition comp, WVec val,
                        std::vector<Node>* keep) {
    if (val.m < 0 || wvec_is_zero(val)) return;
    if (!acc[val.m].add_row(val.v)) return;
    --remaining;
    cols[val.m].push_back(val.v);
    out.comps[val.m].push_back(comp);
    out.max_len = std::max(out.max_len, int(comp.steps.size()));
    if (keep) keep->push_back(Node{std::move(comp), std::move(val)});
  };

  bool rev = order == ExploreOrder::reversed;
  auto gen_blocks = [&](auto&& body) {
    if (!rev) {
      for (int mg = 0; mg <= gen_bound; ++mg)
        for (int ig = 0; ig < alg.dim(mg); ++ig) body(mg, ig);
    } else {
      for (int mg = gen_bound; mg >= 0; --mg)
        for (int ig = alg.dim(mg) - 1; ig >= 0; --ig) body(mg, ig);
    }
  };

  // length 1: the generators themselves
  gen_blocks([&](int mg, int ig) {
    if (complete()) return;
    try_insert(Composition{{CompStep{mg, ig, -1}}}, basis_wvec(alg, mg, ig),
               &frontier);
  });

  int len = 1;
  while (!frontier.empty() && !complete() && len < max_len) {
    ++len;
    std::vector<Node> next;
    for (const auto& node : frontier) {
      if (complete()) break;
      gen_blocks([&](int mg, int ig) {
        if (complete() || mg == 0) return;  // vacuum extensions repeat nodes
        int nlo = mg + node.val.m - 1 - N, nhi = mg + node.val.m - 1;
        for (int step = 0; step <= nhi - nlo; ++step) {
          if (complete()) break;
          int n = rev ? nhi - step : nlo + step;
          ++out.nodes;
          WVec val =
              mode_apply(alg, basis_wvec(alg, mg, ig), n, node.val);
          if (val.m < 0 || wvec_is_zero(val)) continue;
          if (acc[val.m].rank() < alg.dim(val.m)) {
            Composition comp;
            comp.steps.reserve(node.comp.steps.size() + 1);
            comp.steps.push_back(CompStep{mg, ig, n});
            comp.steps.insert(comp.steps.end(), node.comp.steps.begin(),
                              node.comp.steps.end());
            try_insert(std::move(comp), std::move(val), &next);
          }
        }
      });
    }
    frontier = std::move(next);
  }
  out.frontier_exhausted = frontier.empty() || complete();
  out.complete = complete();
  out.ranks.resize(N + 1);
  out.C.resize(N + 1);
  out.C_inv.resize(N + 1);
  for (int m = 0; m <= N; ++m) {
    out.ranks[m] = acc[m].rank();
    lin::Mat C(alg.dim(m), int(cols[m].size()));
    for (int j = 0; j < C.cols; ++j)
      for (int i = 0; i < C.rows; ++i) C.at(i, j) = cols[m][j][i];
    out.C[m] = std::move(C);
    if (out.ranks[m] == alg.dim(m)) {
      auto inv = lin::inverse(out.C[m]);
      check(inv.has_value(), "survivor columns must be invertible");
      out.C_inv[m] = std::move(*inv);
    }
  }
  return out;
}

WVec eval_composition(const GradedAlgebra& alg, const Composition& c) {
  check(!c.steps.empty() && c.steps.back().n == -1,
        "composition must end in a creation step");
  WVec v = basis_wvec(alg, c.steps.back().m, c.steps.back().i);
  for (int k = int(c.steps.size()) - 2; k >= 0; --k)
    v = mode_apply(alg, basis_wvec(alg, c.steps[k].m, c.steps[k].i),
                   c.steps[k].n, v);
  return v;
}

WVec eval_composition_mapped(const GradedAlgebra& alg, const Composition& c,
                             const BlockMaps& g) {
  check(!c.steps.empty() && c.steps.back().n == -1,
        "composition must end in a creation step");
  auto gen = [&](int k) {
    return apply_block_maps(g, basis_wvec(alg, c.steps[k].m, c.steps[k].i));
  };
  WVec v = gen(int(c.steps.size()) - 1);
  for (int k = int(c.steps.size()) - 2; k >= 0; --k)
    v = mode_apply(alg, gen(k), c.steps[k].n, v);
  return v;
}

WVec eval_with_replacement(const GradedAlgebra& alg, const Composition& c,
                           int pos, const WVec& repl) {
  check(!c.steps.empty() && c.steps.back().n == -1,
        "composition must end in a creation step");
  int last = int(c.steps.size()) - 1;
  WVec v = pos == last ? repl : basis_wvec(alg, c.steps[last].m,
                                           c.steps[last].i);
  for (int k = last - 1; k >= 0; --k) {
    WVec u = pos == k ? repl
                      : basis_wvec(alg, c.steps[k].m, c.steps[k].i);
    v = mode_apply(alg, u, c.steps[k].n, v);
  }
  return v;
}

SpanProbe span_probe(const GradedAlgebra& alg, const std::vector<WVec>& gens,
                     int length_bound) {
  int N = alg.max_weight();
  SpanProbe out;
  out.target.resize(N + 1);
  out.pairs_used.assign(N + 1, 0);
  std::vector<lin::IncRref> acc;
  for (int m = 0; m <= N; ++m) {
    out.target[m] = alg.dim(m);
    acc.emplace_back(alg.dim(m));
  }
  int remaining = alg.total_dim();
  auto land = [&](const WVec& val, std::vector<WVec>* keep) {
    if (val.m < 0 || wvec_is_zero(val)) return;
    ++out.pairs_used[val.m];
    if (!acc[val.m].add_row(val.v)) return;
    --remaining;
    if (keep) keep->push_back(val);
  };

  std::vector<WVec> frontier;
  for (const auto& g : gens) {
    if (wvec_is_zero(g)) continue;
    check(g.m >= 0 && g.m <= N, "span_probe: generator outside the window");
    land(g, &frontier);
  }
  out.levels = 1;
  while (!frontier.empty() && remaining > 0 && out.levels < length_bound) {
    ++out.levels;
    std::vector<WVec> next;
    for (const auto& x : frontier)
      for (const auto& u : gens) {
        if (wvec_is_zero(u)) continue;
        int nhi = u.m + x.m - 1;
        for (int n = nhi - N; n <= nhi; ++n)
          land(mode_apply(alg, u, n, x), &next);
      }
    frontier = std::move(next);
  }
  out.frontier_exhausted = frontier.empty() || remaining == 0;
  out.achieved.resize(N + 1);
  for (int m = 0; m <= N; ++m) out.achieved[m] = acc[m].rank();
  return out;
}

SpanReport spanning_check(const GradedAlgebra& alg,
                          const std::vector<WVec>& gens, int m,
                          int length_bound) {
  check(m >= 0 && m <= alg.max_weight(), "spanning_check: weight out of range");
  SpanProbe pr = span_probe(alg, gens, length_bound);
  SpanReport rep;
  rep.weight = m;
  rep.target = pr.target[m];
  rep.achieved = pr.achieved[m];
  rep.pairs_used = pr.pairs_used[m];
  rep.missing = rep.target - rep.achieved;
  return rep;
}

const std::vector<Composition>& select_basis(const GradedAlgebra& alg,
                                             const CompBasis& cb, int m) {
  check(m >= 0 && m < int(cb.comps.size()), "select_basis: weight out of range");
  check(cb.ranks[m] == alg.dim(m),
        "select_basis: block not spanned by the explored compositions");
  return cb.comps[m];
}

C2Report c2_probe(const GradedAlgebra& alg) {
  int N = alg.max_weight();
  C2Report rep;
  rep.codims.resize(N + 1);
  for (int m = 0; m <= N; ++m) {
    lin::IncRref acc(alg.dim(m));
    bool full = false;
    for (int p = 0; p <= m - 1 && !full; ++p) {
      int q = m - 1 - p;
      if (q > N) continue;
      for (int i = 0; i < alg.dim(p) && !full; ++i)
        for (int j = 0; j < alg.dim(q) && !full; ++j) {
          acc.add_row(lin::spv_to_dense(alg.product(p, i, -2, q, j),
                                        alg.dim(m)));
          full = acc.rank() == alg.dim(m);
        }
    }
    rep.codims[m] = alg.dim(m) - acc.rank();
  }
  return rep;
}

}  // namespace voa
