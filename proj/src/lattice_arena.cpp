#include "voa/lattice_arena.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "voa/check.hpp"

namespace voa {

namespace {

lin::SpVec acc_to_spv(const std::map<int, Rat>& acc) {
  lin::SpVec out;
  out.reserve(acc.size());
  for (const auto& [i, c] : acc)
    if (!is_zero(c)) out.emplace_back(i, c);
  return out;
}

}  // namespace

LatticeArena::LatticeArena(Lattice lat, int cutoff)
    : lat_(std::move(lat)), cutoff_(cutoff) {
  check(cutoff_ >= 0, "arena cutoff must be nonnegative");
  blocks_.resize(cutoff_ + 1);
  // charge box: <c,c> >= lambda_min |c|^2 and lambda_min >= det/trace for
  // positive definite 2x2, so |c_i| <= sqrt(2N trace / det); rank 1 is the
  // same with trace/det = 1/g00. The scan is cheap, add margin.
  double trace = 0, det = 1;
  for (int i = 0; i < lat_.rank; ++i) trace += double(lat_.g(i, i));
  if (lat_.rank == 1) {
    det = double(lat_.g(0, 0));
    trace = double(lat_.g(0, 0));
  } else {
    det = double(lat_.g(0, 0)) * lat_.g(1, 1) -
          double(lat_.g(0, 1)) * lat_.g(1, 0);
  }
  int bound = int(std::sqrt(2.0 * cutoff_ * trace / det)) + 2;
  std::vector<std::vector<int>> charges;
  std::vector<int> c(lat_.rank, 0);
  auto scan = [&](auto&& self, int pos) -> void {
    if (pos == lat_.rank) {
      if (lat_.half_norm(c) <= cutoff_) charges.push_back(c);
      return;
    }
    for (int x = -bound; x <= bound; ++x) {
      c[pos] = x;
      self(self, pos + 1);
    }
  };
  scan(scan, 0);
  // charges in lexicographic order already (scan order); keep blocks
  // charge-major, partitions in enumerator order
  for (int m = 0; m <= cutoff_; ++m) {
    for (const auto& ch : charges) {
      long base = lat_.half_norm(ch);
      if (base > m) continue;
      colored_partitions(int(m - base), lat_.rank,
                         [&](const std::vector<PPart>& parts) {
                           blocks_[m].push_back(FockKey{ch, parts});
                         });
    }
  }
  offset_.resize(cutoff_ + 2, 0);
  for (int m = 0; m <= cutoff_; ++m) {
    offset_[m + 1] = offset_[m] + int(blocks_[m].size());
    for (int i = 0; i < int(blocks_[m].size()); ++i)
      index_.emplace(blocks_[m][i], std::pair(m, i));
  }
}

std::optional<std::pair<int, int>> LatticeArena::locate(
    const FockKey& k) const {
  auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

WVec LatticeArena::key_state(const FockKey& k) const {
  auto loc = locate(k);
  check(loc.has_value(), "key_state: key outside the arena");
  return basis_wvec(*this, loc->first, loc->second);
}

WVec LatticeArena::exp_state(const std::vector<int>& charge) const {
  return key_state(FockKey{charge, {}});
}

WVec LatticeArena::heis_state(int color) const {
  return key_state(FockKey{std::vector<int>(lat_.rank, 0),
                           {PPart{color, 1, 1}}});
}

std::string LatticeArena::basis_label(int m, int i) const {
  return fock_label(blocks_[m][i]);
}

WVec LatticeArena::vacuum() const {
  return key_state(FockKey{std::vector<int>(lat_.rank, 0), {}});
}

WVec LatticeArena::omega() const {
  check(cutoff_ >= 2, "omega needs cutoff >= 2");
  WVec w{2, lin::DenseVec(dim(2))};
  std::vector<int> zero(lat_.rank, 0);
  for (int i = 0; i < lat_.rank; ++i)
    for (int j = i; j < lat_.rank; ++j) {
      const Rat& gij = lat_.gram_inv.at(i, j);
      if (is_zero(gij)) continue;
      Rat coeff = (i == j) ? Rat(gij / 2) : gij;
      FockKey k{zero, {}};
      add_part(k.parts, i, 1);
      add_part(k.parts, j, 1);
      auto loc = locate(k);
      check(loc.has_value() && loc->first == 2, "omega key missing");
      w.v[loc->second] += coeff;
    }
  return w;
}

std::size_t LatticeArena::memo_entries() const {
  std::shared_lock lk(memo_mu_);
  return memo_.size();
}

namespace {
const lin::SpVec kEmptySpVec;
}

const lin::SpVec& LatticeArena::product(int p, int i, int n, int q,
                                        int j) const {
  int target = p + q - n - 1;
  if (target < 0 || target > cutoff_) return kEmptySpVec;
  return mode_key(p, i, n, q, j);
}

const lin::SpVec& LatticeArena::mode_key(int p, int i, int n, int q,
                                         int j) const {
  std::uint64_t id = (std::uint64_t(offset_[p] + i) << 40) |
                     (std::uint64_t(n + 512) << 24) |
                     std::uint64_t(offset_[q] + j);
  {
    std::shared_lock lk(memo_mu_);
    auto it = memo_.find(id);
    // node handles are stable and entries never mutate after insertion,
    // so the reference outlives the lock
    if (it != memo_.end()) return it->second;
  }
  lin::SpVec val = mode_key_uncached(p, i, n, q, j);
  {
    std::unique_lock lk(memo_mu_);
    // concurrent compute of the same entry is possible; first insert wins
    // and both computed the same exact value
    return memo_.try_emplace(id, std::move(val)).first->second;
  }
}

lin::SpVec LatticeArena::mode_key_uncached(int p, int i, int n, int q,
                                           int j) const {
  const FockKey& u = blocks_[p][i];
  const FockKey& v = blocks_[q][j];
  Acc out;
  if (u.parts.empty()) {
    exp_mode(u, n, v, out);
  } else {
    peel_mode(u, n, v, out);
  }
  return acc_to_spv(out);
}

void LatticeArena::add_key(Acc& out, const FockKey& k, const Rat& c) const {
  auto loc = locate(k);
  check(loc.has_value(), "product key escaped the arena");
  out[loc->second] += c;
}

// u = e^lambda. Vertex operator expansion: creation exponential, then
// annihilation exponential, then the group element and z^{lambda(0)}. The
// z power bookkeeping fixes the creation degree for each annihilation
// degree; the cocycle sign is one global factor.
void LatticeArena::exp_mode(const FockKey& u, int n, const FockKey& v,
                            Acc& out) const {
  const std::vector<int>& lam = u.charge;
  long s = lat_.ip(lam, v.charge);
  int sign = lat_.eps_sign(lam, v.charge);
  // <lambda, a_color> once per color
  std::vector<long> lam_g(lat_.rank);
  for (int c = 0; c < lat_.rank; ++c) {
    long t = 0;
    for (int d = 0; d < lat_.rank; ++d) t += long(lam[d]) * lat_.g(d, c);
    lam_g[c] = t;
  }
  int maxd = parts_weight(v.parts);
  // annihilation stages: W[0] = v, d W[d] = -sum_k lambda(k) W[d-k]
  std::vector<KeyAcc> W(maxd + 1);
  W[0].emplace(v, Rat(1));
  for (int d = 1; d <= maxd; ++d) {
    KeyAcc acc;
    for (int k = 1; k <= d; ++k) {
      for (const auto& [key, coeff] : W[d - k]) {
        // lambda(k) contracts every part of size k
        for (const auto& part : key.parts) {
          if (part.n != k) continue;
          long f = long(k) * lam_g[part.color] * part.mult;
          if (f == 0) continue;
          FockKey nk = key;
          remove_part(nk.parts, part.color, k);
          acc[nk] += coeff * f;
        }
      }
    }
    for (auto& [key, coeff] : acc) {
      coeff /= -d;
      if (!is_zero(coeff)) W[d].emplace(key, coeff);
    }
  }
  std::vector<int> shifted(lat_.rank);
  for (int c = 0; c < lat_.rank; ++c) shifted[c] = lam[c] + v.charge[c];
  for (int d = 0; d <= maxd; ++d) {
    long cdeg = -long(n) - 1 - s + d;
    if (cdeg < 0 || W[d].empty()) continue;
    // shift the charge, apply the sign, then run the creation stages
    // E[0] = shifted, j E[j] = sum_k lambda(-k) E[j-k]
    std::vector<KeyAcc> E(cdeg + 1);
    for (const auto& [key, coeff] : W[d]) {
      FockKey nk{shifted, key.parts};
      E[0].emplace(std::move(nk), sign > 0 ? coeff : Rat(-coeff));
    }
    for (long jdeg = 1; jdeg <= cdeg; ++jdeg) {
      KeyAcc acc;
      for (long k = 1; k <= jdeg; ++k) {
        for (const auto& [key, coeff] : E[jdeg - k]) {
          for (int c = 0; c < lat_.rank; ++c) {
            if (lam[c] == 0) continue;
            FockKey nk = key;
            add_part(nk.parts, c, int(k));
            acc[nk] += coeff * lam[c];
          }
        }
      }
      for (auto& [key, coeff] : acc) {
        coeff /= jdeg;
        if (!is_zero(coeff)) E[jdeg].emplace(key, coeff);
      }
    }
    for (const auto& [key, coeff] : E[cdeg]) add_key(out, key, coeff);
  }
}

// u has at least one oscillator: u = b_{-m} a with b the color-i0 current
// and a the key with one unit removed. Then
//   (b_{-m} a)_n = sum_{i>=0} C(m+i-1, i)
//       [ b_{-m-i} a_{n+i}  -  (-1)^m a_{n-m-i} b_i ]
// and both sums are finite here: the first because a_{n+i} v dies below
// weight zero, the second because b_i v dies past the oscillator weight.
void LatticeArena::peel_mode(const FockKey& u, int n, const FockKey& v,
                             Acc& out) const {
  int i0 = u.parts[0].color;
  int m = u.parts[0].n;
  FockKey a = u;
  remove_part(a.parts, i0, m);
  auto aloc = locate(a);
  check(aloc.has_value(), "peeled key escaped the arena");
  auto [pa, ia] = *aloc;
  int q = 0;
  {
    auto vloc = locate(v);
    check(vloc.has_value(), "right operand outside the arena");
    q = vloc->first;
    // first sum: i <= wt(a) + wt(v) - n - 1 keeps a_{n+i} v alive
    int imax = pa + q - n - 1;
    for (int i = 0; i <= imax; ++i) {
      lin::SpVec w = mode_key(pa, ia, n + i, q, vloc->second);
      if (w.empty()) continue;
      Rat coeff(binom(unsigned(m + i - 1), unsigned(i)));
      int mid = pa + q - (n + i) - 1;
      for (const auto& [idx, c] : w) {
        FockKey nk = blocks_[mid][idx];
        add_part(nk.parts, i0, m + i);
        add_key(out, nk, coeff * c);
      }
    }
  }
  // second sum: b_i v for i = 0 (charge pairing) and contractions
  int msign = (m % 2 == 0) ? -1 : 1;  // the -(-1)^m factor
  for (int i = 0; i <= parts_weight(v.parts); ++i) {
    KeyAcc bx;
    if (i == 0) {
      long f = 0;
      for (int d = 0; d < lat_.rank; ++d) f += long(lat_.g(i0, d)) * v.charge[d];
      if (f != 0) bx.emplace(v, Rat(f));
    } else {
      for (const auto& part : v.parts) {
        if (part.n != i) continue;
        long f = long(i) * lat_.g(i0, part.color) * part.mult;
        if (f == 0) continue;
        FockKey nk = v;
        remove_part(nk.parts, part.color, i);
        bx.emplace(std::move(nk), Rat(f));
      }
    }
    if (bx.empty()) continue;
    Rat coeff = Rat(binom(unsigned(m + i - 1), unsigned(i))) * msign;
    for (const auto& [key, c] : bx) {
      auto loc = locate(key);
      check(loc.has_value(), "contracted key escaped the arena");
      lin::SpVec y = mode_key(pa, ia, n - m - i, loc->first, loc->second);
      for (const auto& [idx, yc] : y) out[idx] += coeff * c * yc;
    }
  }
}

}  // namespace voa
