#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>

namespace voa {

// Exact rational scalar. mpq_class keeps every value canonical (lowest
// terms, positive denominator, zero stored as 0/1), which is precisely the
// representation we need, so we use it directly instead of wrapping it.
using Rat = mpq_class;
using Int = mpz_class;

// The two-argument mpq_class constructor does NOT canonicalize, and GMP
// comparisons assume canonical operands. Use frac() for any quotient whose
// numerator and denominator are not literally coprime constants.
inline Rat frac(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}
inline Rat frac(long num, long den) { return frac(Int(num), Int(den)); }

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

// Integers print without a denominator ("-128"), proper fractions as "p/q".
inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Accepts "p", "-p" and "p/q"; rejects malformed strings and q == 0.
std::optional<Rat> rat_parse(const std::string& s);

std::size_t rat_hash(const Rat& r);

// C(n, k) for n >= 0.
Int binom(unsigned long n, unsigned long k);

// Generalized binomial C(k, i) = k(k-1)...(k-i+1)/i! for any integer k.
Int binom_gen(long k, unsigned long i);

}  // namespace voa
