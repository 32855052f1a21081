#pragma once

#include <string>

#include "voa/exactlin.hpp"
#include "voa/rational.hpp"

namespace voa {

// Element of a single weight block. m == -1 with empty v is the canonical
// "no block" zero that mode application returns for out-of-range targets.
struct WVec {
  int m = -1;
  lin::DenseVec v;
  bool operator==(const WVec&) const = default;
};

bool wvec_is_zero(const WVec& w);

// Weight graded algebra with a cutoff: blocks 0..max_weight, each finite
// dimensional, products given mode by mode on basis vectors.
class GradedAlgebra {
 public:
  virtual ~GradedAlgebra() = default;
  virtual int max_weight() const = 0;
  virtual int dim(int m) const = 0;
  // (block-p basis i)_n (block-q basis j) as a sparse vector in block
  // p+q-n-1. Only called with the target inside [0, max_weight].
  // the reference stays valid for the algebra's lifetime (memoized)
  virtual const lin::SpVec& product(int p, int i, int n, int q, int j) const = 0;
  virtual WVec vacuum() const = 0;
  virtual WVec omega() const = 0;
  virtual Rat central_charge() const = 0;
  virtual std::string basis_label(int m, int i) const = 0;

  int total_dim() const;
};

WVec basis_wvec(const GradedAlgebra& alg, int m, int i);

// u_n v. A target below weight zero is exactly zero; a target above the
// cutoff is unknown and comes back as the zero WVec with *truncated set.
WVec mode_apply(const GradedAlgebra& alg, const WVec& u, int n, const WVec& v,
                bool* truncated = nullptr);

// matrix of u_n restricted to block q, mapping into block q + wt(u) - n - 1
lin::Mat mode_matrix(const GradedAlgebra& alg, const WVec& u, int n, int q,
                     bool* truncated = nullptr);

// zero mode o(u) = u_{wt u - 1}, which preserves the grading
lin::Mat o_matrix(const GradedAlgebra& alg, const WVec& u, int q,
                  bool* truncated = nullptr);

// L(k) = (omega)_{k+1}
WVec virasoro_apply(const GradedAlgebra& alg, int k, const WVec& v,
                    bool* truncated = nullptr);
lin::Mat virasoro_matrix(const GradedAlgebra& alg, int k, int q,
                         bool* truncated = nullptr);

}  // namespace voa
