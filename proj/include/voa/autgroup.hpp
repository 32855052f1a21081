#pragma once

#include "voa/compose.hpp"

namespace voa {

// A graded linear map given on every block 0..max_weight is just BlockMaps
// with bound == max_weight; the alias marks intent.
using GradedMaps = BlockMaps;

GradedMaps identity_maps_full(const GradedAlgebra& alg);
// A after B, blockwise
GradedMaps compose_maps(const GradedMaps& a, const GradedMaps& b);
bool maps_equal(const GradedMaps& a, const GradedMaps& b);
BlockMaps restrict_maps(const GradedMaps& e, int bound);

// Multilinear extension of g (defined on blocks 0..cb.gen_bound) through
// the composition basis: each survivor value with its generators pushed
// through g, converted back to standard coordinates. cb must be complete.
GradedMaps extend_map(const GradedAlgebra& alg, const CompBasis& cb,
                      const BlockMaps& g);

// E(u_n v) - (E u)_n (E v); zero iff E respects that single product
WVec aut_residual(const GradedAlgebra& alg, const GradedMaps& e,
                  const WVec& u, int n, const WVec& v);

struct AutoCheck {
  bool ok = false;
  bool invertible = false;
  bool fixes_vacuum = false;
  bool fixes_omega = false;
  long triples_checked = 0;
  // first product the map failed to respect, if any
  bool violation = false;
  int p = -1, i = -1, n = 0, q = -1, j = -1;
};

// Full certificate: blockwise invertibility, vacuum and conformal vector
// fixed, and multiplicativity over every basis pair and every mode whose
// target stays inside the window.
AutoCheck check_automorphism(const GradedAlgebra& alg, const GradedMaps& e);

// exp(t x_0) for a weight-one x whose zero mode is nilpotent on every
// block; exact because the series terminates. Throws if x_0 is not
// nilpotent within a block's dimension.
GradedMaps exp_zero_mode(const GradedAlgebra& alg, const WVec& x,
                         const Rat& t);

}  // namespace voa
