#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "voa/autgroup.hpp"
#include "voa/compose.hpp"
#include "voa/dercalc.hpp"
#include "voa/lattice_arena.hpp"

namespace voa {

// Subalgebra of a parent graded algebra, one reduced row echelon basis per
// weight in parent coordinates. Products are computed upstairs and
// re-expressed in subspace coordinates through the pivot columns; a product
// escaping the span is a hard error, so every product served doubles as a
// closure certificate for the pair it came from.
class SubAlgebra : public GradedAlgebra {
 public:
  SubAlgebra(const GradedAlgebra& parent,
             std::vector<std::vector<lin::DenseVec>> bases,
             std::string label_prefix);

  int max_weight() const override { return int(bases_.size()) - 1; }
  int dim(int m) const override { return int(bases_[m].size()); }
  const lin::SpVec& product(int p, int i, int n, int q, int j) const override;
  WVec vacuum() const override { return vac_; }
  WVec omega() const override { return om_; }
  Rat central_charge() const override { return parent_.central_charge(); }
  std::string basis_label(int m, int i) const override;

  const GradedAlgebra& parent() const { return parent_; }
  const lin::DenseVec& parent_vec(int m, int i) const { return bases_[m][i]; }
  WVec to_parent(const WVec& w) const;
  // subspace coordinates, empty when w does not lie in the span
  std::optional<WVec> from_parent(const WVec& w) const;

 private:
  const GradedAlgebra& parent_;
  std::string prefix_;
  std::vector<std::vector<lin::DenseVec>> bases_;
  std::vector<std::vector<int>> pivots_;
  WVec vac_, om_;
  mutable std::unordered_map<std::uint64_t, lin::SpVec> cache_;
  mutable std::mutex cache_mu_;
};

// Fixed points of the one parameter unipotent group generated by the zero
// mode of the charge-one exponential vector: per weight the kernel of that
// nilpotent operator. The kernel is computed charge by charge (the operator
// raises charge by one), so every basis vector is charge homogeneous and
// the charge grading is recorded alongside.
struct FixedPointAlgebra {
  const LatticeArena* parent = nullptr;
  std::unique_ptr<SubAlgebra> alg;
  std::vector<std::vector<int>> charge;  // charge[m][i]
  const SubAlgebra& sub() const { return *alg; }
};

FixedPointAlgebra fixed_point_subalgebra(const LatticeArena& parent,
                                         int cutoff = -1);

// runs every in-range product once; any escape from the span throws
void verify_product_closure(const GradedAlgebra& alg);

// per-weight kernel of L(1) and L(2) together
struct HwReport {
  std::vector<int> kernel_dims;  // per weight
  std::vector<int> weights;     // weights with nonzero kernel
  std::vector<WVec> vectors;    // one kernel vector per listed weight
};
HwReport virasoro_highest_weights(const GradedAlgebra& alg);

// Smallest subspace containing the charge-n exponential vector and closed
// under left multiplication by the whole subalgebra (the conformal vector
// is in there, so closure under the Virasoro modes comes for free).
struct IdealChain {
  int n = 0;
  std::vector<int> dims;  // per weight
  bool stable = false;
  bool climbing_applicable = false;  // the next seed weight fits the window
  bool climbing_in_ideal = false;    // next exponential lies in the ideal
  Rat climbing_coeff;  // its coefficient in e_{-(a,a)n-1} applied to the seed
  int climbing_mode = 0;
  std::vector<std::vector<lin::DenseVec>> basis;  // subalgebra coords
};
IdealChain ideal_chain(const FixedPointAlgebra& fpa, int n);

// diagonal map scaling each basis vector by lambda^charge
GradedMaps charge_scaling(const FixedPointAlgebra& fpa, const Rat& lambda);
AutoCheck sigma_lambda_check(const FixedPointAlgebra& fpa, const Rat& lambda);

// Direct sum of a distinguished first summand (the charge-zero part, which
// is the Virasoro submodule of the vacuum) and pairwise orthogonal positive
// summands harvested from the fixed point subalgebra by charge. Products:
// first summand on anything is inherited from the parent, positive summand
// on the first is transported by skew symmetry, and a product of two
// positive summands is zero.
class DirectSumVOA : public GradedAlgebra {
 public:
  DirectSumVOA(const LatticeArena& parent, std::vector<int> hw_weights,
               std::vector<std::vector<std::vector<lin::DenseVec>>> bases);

  int max_weight() const override { return int(rows_.size()) - 1; }
  int dim(int m) const override { return int(rows_[m].size()); }
  const lin::SpVec& product(int p, int i, int n, int q, int j) const override;
  WVec vacuum() const override { return vac_; }
  WVec omega() const override { return om_; }
  Rat central_charge() const override { return parent_.central_charge(); }
  std::string basis_label(int m, int i) const override;

  const LatticeArena& parent() const { return parent_; }
  int summands() const { return int(hw_.size()); }
  int hw_weight(int s) const { return hw_[s]; }
  int summand_of(int m, int i) const { return summand_[m][i]; }
  int summand_dim(int m, int s) const;
  const lin::DenseVec& parent_vec(int m, int i) const { return rows_[m][i]; }
  std::optional<WVec> from_parent(const WVec& w) const;

 private:
  const LatticeArena& parent_;
  std::vector<int> hw_;                        // 0, then increasing
  std::vector<std::vector<lin::DenseVec>> rows_;  // per weight, parent coords
  std::vector<std::vector<int>> summand_;      // per weight, per row
  std::vector<std::vector<int>> pivots_;
  WVec vac_, om_;
  mutable std::unordered_map<std::uint64_t, lin::SpVec> cache_;
  mutable std::mutex cache_mu_;
};

struct DsumSpec {
  std::vector<int> hw_weights;  // 0, then strictly increasing squares
  int cutoff = 0;
};

struct DsumBuild {
  bool ok = false;
  std::string error;
  std::unique_ptr<DirectSumVOA> alg;
  bool vacuum_ok = false;       // creation against the vacuum, both sides
  bool translation_ok = false;  // modes of L(-1)v against modes of v
  bool skew_ok = false;         // full skew symmetry of the product table
  long products_checked = 0;
};
DsumBuild build_dsum_voa(const LatticeArena& parent, const DsumSpec& spec);

// scale positive summand s by lambda[s-1], first summand untouched
GradedMaps summand_scaling(const DirectSumVOA& dsum,
                           const std::vector<Rat>& lambda);

struct DsumAutReport {
  int positive_summands = 0;
  bool diagonals_accepted = false;  // sampled scaling tuples all pass
  bool mixing_rejected = false;     // hw-matched cross-summand bleed fails
  AutoCheck mixing_verdict;
  int derivation_dim = -1;
  bool derivations_diagonal = false;  // solved space = summand scalings
  bool ok = false;
};
DsumAutReport dsum_automorphisms(const DirectSumVOA& dsum,
                                 const CompBasis& cb);

struct NonGenReport {
  int bound = 0;
  int first_failure = -1;  // weight where the span falls short, -1 if none
  std::vector<int> achieved, target;
};
NonGenReport non_generation_probe(const GradedAlgebra& alg, int bound);

}  // namespace voa
