#pragma once

#include <vector>

#include "voa/algebra.hpp"

namespace voa {

// One step of an iterated product: apply (basis element i of block m) at
// mode n to whatever sits to the right.
struct CompStep {
  int m, i, n;
  bool operator==(const CompStep&) const = default;
};

// Iterated product applied right to left to the vacuum; the innermost step
// is conventionally (m, i, -1), whose value is the generator itself.
struct Composition {
  std::vector<CompStep> steps;
};

// Square matrices on blocks 0..bound: candidate maps, derivation unknowns
// and their solved values all travel in this shape.
struct BlockMaps {
  int bound = 0;
  std::vector<lin::Mat> maps;
};

WVec apply_block_maps(const BlockMaps& g, const WVec& w);

enum class ExploreOrder { standard, reversed };

// Breadth-first closure of iterated generator products. A node survives
// only if its value grew the span of its block; extensions of discarded
// nodes are linear combinations of extensions of survivors, so a level
// that adds no rank proves the full span of all iterated products has been
// reached (within the weight window). Hence `complete == false` with an
// exhausted frontier is a genuine non-generation verdict, not a timeout.
struct CompBasis {
  int gen_bound = 0;
  bool complete = false;
  bool frontier_exhausted = false;
  int max_len = 0;    // longest composition kept
  long nodes = 0;     // product evaluations performed
  std::vector<int> ranks, dims;
  std::vector<std::vector<Composition>> comps;  // survivors per block
  std::vector<lin::Mat> C;      // columns are survivor values, std coords
  std::vector<lin::Mat> C_inv;  // only for blocks at full rank
};

CompBasis explore_compositions(const GradedAlgebra& alg, int gen_bound,
                               ExploreOrder order = ExploreOrder::standard,
                               int max_len = 64);

WVec eval_composition(const GradedAlgebra& alg, const Composition& c);
// every generator pushed through the per-block maps first
WVec eval_composition_mapped(const GradedAlgebra& alg, const Composition& c,
                             const BlockMaps& g);
// the single generator at steps[pos] replaced by repl
WVec eval_with_replacement(const GradedAlgebra& alg, const Composition& c,
                           int pos, const WVec& repl);

// codimension of span{u_{-2} v} per weight block
struct C2Report {
  std::vector<int> codims;
};
C2Report c2_probe(const GradedAlgebra& alg);

// Same breadth-first closure, but seeded with an arbitrary list of
// homogeneous vectors instead of whole low blocks: the span of all
// iterated modes of `gens` applied to `gens`, tracked per weight.
struct SpanProbe {
  bool frontier_exhausted = false;
  int levels = 0;                // composition length reached
  std::vector<int> target;      // dim V_m
  std::vector<int> achieved;    // reached span dim per weight
  std::vector<int> pairs_used;  // nonzero compositions landing per weight
  bool full_at(int m) const { return achieved[m] == target[m]; }
};
SpanProbe span_probe(const GradedAlgebra& alg, const std::vector<WVec>& gens,
                     int length_bound = 64);

struct SpanReport {
  int weight = 0;
  int target = 0;
  int achieved = 0;
  int pairs_used = 0;
  int missing = 0;
};
SpanReport spanning_check(const GradedAlgebra& alg,
                          const std::vector<WVec>& gens, int m,
                          int length_bound = 64);

// survivor compositions at weight m; requires the block to be spanned
const std::vector<Composition>& select_basis(const GradedAlgebra& alg,
                                             const CompBasis& cb, int m);

}  // namespace voa
