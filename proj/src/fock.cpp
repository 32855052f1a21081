#include "voa/fock.hpp"

#include <algorithm>
#include <sstream>

#include "voa/check.hpp"

namespace voa {

std::size_t FockKeyHash::operator()(const FockKey& k) const {
  auto mix = [](std::size_t h, std::size_t x) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  };
  std::size_t h = 0xcbf29ce484222325ull;
  for (int c : k.charge) h = mix(h, std::size_t(long(c) + (1l << 20)));
  for (const auto& p : k.parts) {
    h = mix(h, std::size_t(p.color));
    h = mix(h, std::size_t(p.n));
    h = mix(h, std::size_t(p.mult));
  }
  return h;
}

int parts_weight(const std::vector<PPart>& parts) {
  int w = 0;
  for (const auto& p : parts) w += p.n * p.mult;
  return w;
}

long fock_weight(const Lattice& lat, const FockKey& k) {
  return lat.half_norm(k.charge) + parts_weight(k.parts);
}

void add_part(std::vector<PPart>& parts, int color, int n) {
  auto it = std::lower_bound(
      parts.begin(), parts.end(), std::pair(color, n),
      [](const PPart& p, const std::pair<int, int>& key) {
        return std::pair(p.color, p.n) < key;
      });
  if (it != parts.end() && it->color == color && it->n == n) {
    ++it->mult;
  } else {
    parts.insert(it, {color, n, 1});
  }
}

void remove_part(std::vector<PPart>& parts, int color, int n) {
  auto it = std::lower_bound(
      parts.begin(), parts.end(), std::pair(color, n),
      [](const PPart& p, const std::pair<int, int>& key) {
        return std::pair(p.color, p.n) < key;
      });
  check(it != parts.end() && it->color == color && it->n == n,
        "remove_part: part not present");
  if (--it->mult == 0) parts.erase(it);
}

std::string fock_label(const FockKey& k) {
  std::ostringstream os;
  bool first = true;
  for (const auto& p : k.parts) {
    if (!first) os << ' ';
    first = false;
    os << 'a' << p.color << "(-" << p.n << ')';
    if (p.mult > 1) os << '^' << p.mult;
  }
  bool charged = false;
  for (int c : k.charge) charged |= (c != 0);
  if (charged) {
    if (!first) os << ' ';
    first = false;
    os << "e(";
    for (std::size_t i = 0; i < k.charge.size(); ++i) {
      if (i) os << ',';
      os << k.charge[i];
    }
    os << ')';
  }
  if (first) os << '1';
  return os.str();
}

}  // namespace voa
