#pragma once

#include <vector>

#include "voa/autgroup.hpp"

namespace voa {

// o(v) = v_{wt v - 1} on every block. Weight preserving, so square blocks.
GradedMaps o_operator(const GradedAlgebra& alg, const WVec& v);

// Both sides of the derivation identity for d at the basis triple
// u = (p,i), n, w = (q,j): lhs = d(u_n w), rhs = (du)_n w + u_n (dw).
// Triples whose target escapes the window are reported unviolated; they
// carry no information at this cutoff.
struct LeibnizProbe {
  bool violated = false;
  int p = -1, i = -1, n = 0, q = -1, j = -1;
  WVec lhs, rhs;
};
LeibnizProbe leibniz_probe(const GradedAlgebra& alg, const GradedMaps& d,
                           int p, int i, int n, int q, int j);

// First basis triple (scan order: p, i, q, j, n ascending) where d fails
// the identity. violated == false means every in-window triple passed.
LeibnizProbe first_leibniz_violation(const GradedAlgebra& alg,
                                     const GradedMaps& d);

struct DerivationSpace {
  int gen_bound = 0;
  // graded extensions of the solved restrictions, deterministic order
  std::vector<GradedMaps> basis;
  int iterations = 0;
  long rows_streamed = 0;
  // sampled Leibniz probes with non-generator u, all required to pass
  int cross_checks = 0;
  bool cross_check_ok = false;
  int dim() const { return int(basis.size()); }
};

// Solution space of: d graded, d(vacuum) = 0, d(omega) = 0, and
// d(u_n w) = (du)_n w + u_n (dw) for every generator u (blocks up to
// cb.gen_bound), every basis w and every in-range mode n. A derivation is
// determined by its restriction to the generator blocks because the
// composition basis spans every block, so the solver narrows the
// restriction and extends through cb. cb must be complete.
DerivationSpace solve_derivations(const GradedAlgebra& alg,
                                  const CompBasis& cb);

struct InnerReport {
  int inner_dim = 0;
  bool contained = false;  // every o(v), v in V_1, lies in the solved span
  // one probe per kernel vector of L(1) on blocks 2..probe_weight_bound;
  // each such o(v) must fail the identity somewhere
  std::vector<int> probe_weights;
  std::vector<LeibnizProbe> obstructions;
  bool all_obstructed = false;
};
InnerReport inner_test(const GradedAlgebra& alg, const DerivationSpace& ders,
                       int probe_weight_bound = 4);

struct RadicalReport {
  int window = 0;
  // o(L(-1)v + wt(v) v) vanishes on the window for every basis v
  bool inclusion_ok = false;
  int ker_dim = 0;    // kernel of x -> o(x) restricted to the window
  int image_dim = 0;  // image of L(-1) + L(0) from one block lower
  bool dims_match = false;
};
RadicalReport radical_check(const GradedAlgebra& alg, int window);

// gram matrix (u, v) = tr_{V_n} o(u) o(v) on the weight-one basis
lin::Mat trace_form(const GradedAlgebra& alg, int n);

struct FormWitness {
  bool found = false;
  int n = -1;
  Rat det;
};
// first n in 0..max_weight where trace_form(n) is nondegenerate
FormWitness nondegeneracy_witness(const GradedAlgebra& alg);

struct DecompReport {
  bool pairing_degenerate = false;
  bool contained = false;  // o(V_1) lies in the span of ders
  int inner_dim = 0;
  int perp_dim = 0;  // orthogonal complement of o(V_1) inside the span
  bool direct = false;
  bool ideal_ok = false;  // [d, o(u)] = o(du) for every d and weight-one u
  bool ok = false;
};
// splits the derivation span into o(V_1) and its orthogonal complement
// under (d, d') = tr_{V_n} d d' at the witness weight n
DecompReport der_decomposition(const GradedAlgebra& alg,
                               const std::vector<GradedMaps>& ders,
                               int witness_n);

struct SplitReport {
  int t_dim = 0, s_dim = 0;
  bool direct = false;  // V_1 = s + t with zero intersection
  Rat killing_det;
  bool killing_nondeg = false;
  std::vector<int> simple_dims;
  bool simples_ok = false;
  std::vector<lin::DenseVec> t_basis;  // center of the weight-one bracket
  std::vector<lin::DenseVec> s_basis;  // derived subalgebra
};
// Lie algebra structure on V_1 via [x, y] = x_0 y: center, derived
// subalgebra, Killing form on the derived part, minimal-ideal split.
SplitReport reductive_split(const GradedAlgebra& alg);

}  // namespace voa
