#pragma once

#include <optional>
#include <string>
#include <vector>

#include "voa/exactlin.hpp"
#include "voa/rational.hpp"

namespace voa {

// Positive definite even integral lattice of small rank, plus the 2-cocycle
// sign table used by the twisted group algebra part of the product.
struct Lattice {
  int rank = 0;
  std::vector<long> gram;      // row-major, rank x rank
  lin::Mat gram_rat;           // same matrix over Q
  lin::Mat gram_inv;           // exact inverse
  std::vector<int> eps_table;  // eps(i,j) in {+1,-1}, row-major

  long g(int i, int j) const { return gram[std::size_t(i) * rank + j]; }
  int eps(int i, int j) const { return eps_table[std::size_t(i) * rank + j]; }

  long ip(const std::vector<int>& a, const std::vector<int>& b) const;
  // <a,a>/2, an integer because the lattice is even
  long half_norm(const std::vector<int>& a) const;
  // bimultiplicative extension of the generator table
  int eps_sign(const std::vector<int>& a, const std::vector<int>& b) const;
};

// Builds and validates. gram must be symmetric, integral, positive definite
// with even diagonal; eps entries must be +-1 with
// eps(i,j)*eps(j,i) = (-1)^{<ai,aj>}. An empty eps selects the standard
// table: +1 for i <= j, (-1)^{<ai,aj>} below the diagonal. On failure
// returns the reason instead of a lattice.
std::optional<Lattice> make_lattice(const std::vector<std::vector<long>>& gram,
                                    const std::vector<std::vector<int>>& eps,
                                    std::string* error);

}  // namespace voa
