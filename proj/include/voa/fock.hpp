#pragma once

#include <string>
#include <vector>

#include "voa/lattice.hpp"
#include "voa/partitions.hpp"
#include "voa/rational.hpp"

namespace voa {

// Basis monomial of the graded space: a lattice charge plus a multiset of
// oscillator parts, written a_{i}(-n)^{mult} ... e^{charge}. Parts are kept
// sorted ascending by (color, n) with distinct (color, n) pairs, so equal
// states compare equal.
struct FockKey {
  std::vector<int> charge;
  std::vector<PPart> parts;
  bool operator==(const FockKey&) const = default;
  auto operator<=>(const FockKey&) const = default;
};

struct FockKeyHash {
  std::size_t operator()(const FockKey& k) const;
};

// oscillator contribution to the weight
int parts_weight(const std::vector<PPart>& parts);

// total weight <charge,charge>/2 + oscillator weight
long fock_weight(const Lattice& lat, const FockKey& k);

// adds one a_{color}(-n); keeps the part list canonical
void add_part(std::vector<PPart>& parts, int color, int n);
// removes one a_{color}(-n); the part must be present
void remove_part(std::vector<PPart>& parts, int color, int n);

// human readable label, e.g. "a0(-1)^2 a1(-3) e(1,0)" or "1" for the vacuum
std::string fock_label(const FockKey& k);

}  // namespace voa
