#include "voa/rational.hpp"

namespace voa {

std::optional<Rat> rat_parse(const std::string& s) {
  auto slash = s.find('/');
  Int num, den;
  try {
    if (slash == std::string::npos) {
      num = Int(s, 10);
      den = 1;
    } else {
      if (slash == 0 || slash + 1 >= s.size()) return std::nullopt;
      num = Int(s.substr(0, slash), 10);
      den = Int(s.substr(slash + 1), 10);
    }
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  if (sgn(den) == 0) return std::nullopt;
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::size_t rat_hash(const Rat& r) {
  // hash the limbs of numerator and denominator
  auto mix = [](std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  };
  std::size_t h = 0;
  const mpz_srcptr parts[2] = {mpq_numref(r.get_mpq_t()), mpq_denref(r.get_mpq_t())};
  for (auto z : parts) {
    h = mix(h, std::size_t(mpz_sgn(z)));
    for (std::size_t i = 0; i < mpz_size(z); ++i)
      h = mix(h, std::size_t(mpz_getlimbn(z, mp_size_t(i))));
  }
  return h;
}

Int binom(unsigned long n, unsigned long k) {
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

Int binom_gen(long k, unsigned long i) {
  if (k >= 0) return binom(static_cast<unsigned long>(k), i);
  // C(k, i) = (-1)^i C(i - k - 1, i) for k < 0
  Int b = binom(static_cast<unsigned long>(long(i) - k - 1), i);
  return (i % 2 == 0) ? b : Int(-b);
}

}  // namespace voa
