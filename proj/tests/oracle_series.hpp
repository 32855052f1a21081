#pragma once

// Graded dimension oracle used by the tests: the charge sum of the lattice
// times the oscillator series, computed by plain power series arithmetic
// straight from the gram matrix. Shares no code with the basis enumeration
// it checks.

#include <cmath>
#include <vector>

inline std::vector<long> graded_dims_oracle(
    const std::vector<std::vector<long>>& gram, int cutoff) {
  int rank = int(gram.size());
  std::vector<long> theta(cutoff + 1, 0);
  // largest coordinate with <c,c>/2 <= cutoff: lambda_min >= det/trace
  double trace = 0;
  for (int i = 0; i < rank; ++i) trace += double(gram[i][i]);
  double det = rank == 1
                   ? double(gram[0][0])
                   : double(gram[0][0]) * gram[1][1] -
                         double(gram[0][1]) * gram[1][0];
  int bound = int(std::sqrt(2.0 * cutoff * trace / det)) + 2;
  std::vector<int> c(rank, 0);
  auto scan = [&](auto&& self, int pos) -> void {
    if (pos == rank) {
      long ip = 0;
      for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) ip += long(c[i]) * gram[i][j] * c[j];
      long hw = ip / 2;
      if (hw <= cutoff) ++theta[hw];
      return;
    }
    for (int x = -bound; x <= bound; ++x) {
      c[pos] = x;
      self(self, pos + 1);
    }
  };
  scan(scan, 0);
  // oscillator part: coin-change style DP for 1/phi(q), once per color
  std::vector<long> osc(cutoff + 1, 0);
  osc[0] = 1;
  for (int color = 0; color < rank; ++color)
    for (int s = 1; s <= cutoff; ++s)
      for (int d = s; d <= cutoff; ++d) osc[d] += osc[d - s];
  std::vector<long> out(cutoff + 1, 0);
  for (int a = 0; a <= cutoff; ++a)
    for (int b = 0; a + b <= cutoff; ++b) out[a + b] += theta[a] * osc[b];
  return out;
}
