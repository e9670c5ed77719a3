#ifndef QLK_RATIONAL_HPP
#define QLK_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qlk {

// Exact rational arithmetic. mpq_class keeps values canonical (den > 0,
// gcd(num, den) = 1) which is exactly the interface contract.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline bool fits_long(const Int& z) { return z.fits_slong_p(); }

// "num/den" with den > 0 and gcd 1; integers render as "n/1".
std::string rat_to_string(const Rat& r);

// Accepts "a/b", "a", optional leading '-'. Returns nullopt on malformed
// input or zero denominator.
std::optional<Rat> rat_from_string(const std::string& s);

// floor(r) as an integer.
Int rat_floor(const Rat& r);

std::string poly1_to_string(const std::vector<Rat>& coeffs, const std::string& var);

}  // namespace qlk

#endif
