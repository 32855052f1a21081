#include "voa/lattice.hpp"

#include <cstdlib>
#include <sstream>

namespace voa {

long Lattice::ip(const std::vector<int>& a, const std::vector<int>& b) const {
  long s = 0;
  for (int i = 0; i < rank; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank; ++j) s += long(a[i]) * g(i, j) * b[j];
  }
  return s;
}

long Lattice::half_norm(const std::vector<int>& a) const {
  long n = ip(a, a);
  return n / 2;
}

int Lattice::eps_sign(const std::vector<int>& a,
                      const std::vector<int>& b) const {
  // eps extends bimultiplicatively, so only pair parities matter
  int parity = 0;
  for (int i = 0; i < rank; ++i) {
    if ((a[i] & 1) == 0) continue;
    for (int j = 0; j < rank; ++j)
      if ((b[j] & 1) && eps(i, j) < 0) parity ^= 1;
  }
  return parity ? -1 : 1;
}

std::optional<Lattice> make_lattice(const std::vector<std::vector<long>>& gram,
                                    const std::vector<std::vector<int>>& eps,
                                    std::string* error) {
  auto fail = [&](const std::string& why) -> std::optional<Lattice> {
    if (error) *error = why;
    return std::nullopt;
  };
  int r = int(gram.size());
  if (r < 1 || r > 2) return fail("rank must be 1 or 2");
  Lattice lat;
  lat.rank = r;
  lat.gram.assign(std::size_t(r) * r, 0);
  lat.gram_rat = lin::Mat(r, r);
  for (int i = 0; i < r; ++i) {
    if (int(gram[i].size()) != r) return fail("gram matrix is not square");
    for (int j = 0; j < r; ++j) {
      lat.gram[std::size_t(i) * r + j] = gram[i][j];
      lat.gram_rat.at(i, j) = long(gram[i][j]);
    }
  }
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j)
      if (lat.g(i, j) != lat.g(j, i)) return fail("gram matrix not symmetric");
    if (lat.g(i, i) <= 0 || lat.g(i, i) % 2 != 0)
      return fail("diagonal entries must be positive and even");
  }
  // positive definite: leading principal minors positive (rank <= 2)
  if (r == 2 && lat.g(0, 0) * lat.g(1, 1) - lat.g(0, 1) * lat.g(1, 0) <= 0)
    return fail("gram matrix not positive definite");
  auto inv = lin::inverse(lat.gram_rat);
  if (!inv) return fail("gram matrix singular");
  lat.gram_inv = *inv;

  lat.eps_table.assign(std::size_t(r) * r, 1);
  if (eps.empty()) {
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (i > j && (lat.g(i, j) & 1)) lat.eps_table[std::size_t(i) * r + j] = -1;
  } else {
    if (int(eps.size()) != r) return fail("eps table has wrong shape");
    for (int i = 0; i < r; ++i) {
      if (int(eps[i].size()) != r) return fail("eps table has wrong shape");
      for (int j = 0; j < r; ++j) {
        if (eps[i][j] != 1 && eps[i][j] != -1)
          return fail("eps entries must be +1 or -1");
        lat.eps_table[std::size_t(i) * r + j] = eps[i][j];
      }
    }
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        int want = (lat.g(i, j) & 1) ? -1 : 1;
        if (lat.eps(i, j) * lat.eps(j, i) != want) {
          std::ostringstream os;
          os << "eps(" << i << "," << j << ")*eps(" << j << "," << i
             << ") must be (-1)^<ai,aj>";
          return fail(os.str());
        }
      }
  }
  return lat;
}

}  // namespace voa
