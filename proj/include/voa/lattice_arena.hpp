#pragma once

#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "voa/algebra.hpp"
#include "voa/fock.hpp"
#include "voa/lattice.hpp"

namespace voa {

// Weight-truncated lattice model: all Fock monomials of weight <= cutoff,
// products computed exactly by the mode recursion (peel one oscillator off
// the left operand; pure exponential operands use the vertex operator
// expansion directly). Results are memoized per (left key, mode, right key).
class LatticeArena : public GradedAlgebra {
 public:
  LatticeArena(Lattice lat, int cutoff);

  int max_weight() const override { return cutoff_; }
  int dim(int m) const override { return int(blocks_[m].size()); }
  const lin::SpVec& product(int p, int i, int n, int q, int j) const override;
  WVec vacuum() const override;
  WVec omega() const override;
  Rat central_charge() const override { return lat_.rank; }
  std::string basis_label(int m, int i) const override;

  const Lattice& lattice() const { return lat_; }
  const FockKey& key(int m, int i) const { return blocks_[m][i]; }
  // (block, index) of the key, when its weight fits under the cutoff
  std::optional<std::pair<int, int>> locate(const FockKey& k) const;
  WVec key_state(const FockKey& k) const;
  WVec exp_state(const std::vector<int>& charge) const;
  WVec heis_state(int color) const;  // a_color(-1) applied to the vacuum
  std::size_t memo_entries() const;

 private:
  // sparse combination of basis keys inside one block, indices local
  using Acc = std::map<int, Rat>;
  // sparse combination of raw keys, used mid-recursion where intermediate
  // charges differ
  using KeyAcc = std::map<FockKey, Rat>;

  const lin::SpVec& mode_key(int p, int i, int n, int q, int j) const;
  lin::SpVec mode_key_uncached(int p, int i, int n, int q, int j) const;
  void exp_mode(const FockKey& u, int n, const FockKey& v, Acc& out) const;
  void peel_mode(const FockKey& u, int n, const FockKey& v, Acc& out) const;
  void add_key(Acc& out, const FockKey& k, const Rat& c) const;

  Lattice lat_;
  int cutoff_;
  std::vector<std::vector<FockKey>> blocks_;
  std::unordered_map<FockKey, std::pair<int, int>, FockKeyHash> index_;
  std::vector<int> offset_;  // global id = offset_[m] + i

  mutable std::unordered_map<std::uint64_t, lin::SpVec> memo_;
  mutable std::shared_mutex memo_mu_;
};

}  // namespace voa
