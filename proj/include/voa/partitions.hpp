#pragma once

#include <algorithm>
#include <vector>

namespace voa {

// One block of equal parts: `mult` copies of the value `n` in color `color`.
struct PPart {
  int color;
  int n;
  int mult;
  bool operator==(const PPart&) const = default;
  auto operator<=>(const PPart&) const = default;
};

// Enumerates every multiset of colored positive parts with total
// sum(n * mult) == total. Parts arrive sorted ascending by (color, n); the
// (color, n) pairs within one multiset are distinct. Deterministic order.
template <class F>
void colored_partitions(int total, int colors, F&& emit) {
  std::vector<PPart> cur;
  // pair id p = (n-1)*colors + color, so id order is n-major
  auto rec = [&](auto&& self, int rem, int pmax) -> void {
    if (rem == 0) {
      std::vector<PPart> out = cur;
      std::sort(out.begin(), out.end(),
                [](const PPart& a, const PPart& b) {
                  return std::pair(a.color, a.n) < std::pair(b.color, b.n);
                });
      emit(out);
      return;
    }
    for (int p = pmax; p >= 0; --p) {
      int n = p / colors + 1;
      if (n > rem) continue;
      int color = p % colors;
      for (int mult = 1; mult * n <= rem; ++mult) {
        cur.push_back({color, n, mult});
        self(self, rem - n * mult, p - 1);
        cur.pop_back();
      }
    }
  };
  if (total < 0) return;
  rec(rec, total, total * colors - 1);
}

}  // namespace voa
