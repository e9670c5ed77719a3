#ifndef QLK_POLY_HPP
#define QLK_POLY_HPP

#include <array>
#include <string>
#include <vector>

#include "qlk/rational.hpp"

namespace qlk {

// Sparse polynomials in up to four variables: x_e, x_h, x_f and one
// auxiliary slot (the Rabinowitsch variable). Unused variables simply carry
// exponent zero, so the same type serves 1-, 3- and 4-variable contexts.
constexpr int kPolyVars = 4;

struct Mono {
  std::array<int, kPolyVars> e{};

  int total() const { return e[0] + e[1] + e[2] + e[3]; }
  bool is_one() const { return total() == 0; }
};

bool operator==(const Mono& a, const Mono& b);
bool operator!=(const Mono& a, const Mono& b);

enum class MonoOrder { Degrevlex, Lex };

// Strict a < b in the given global order (variable precedence
// x_e > x_h > x_f > aux in both orders).
bool mono_less(const Mono& a, const Mono& b, MonoOrder order);

bool mono_divides(const Mono& a, const Mono& b);  // a | b
Mono mono_mul(const Mono& a, const Mono& b);
Mono mono_div(const Mono& a, const Mono& b);  // requires b | a
Mono mono_lcm(const Mono& a, const Mono& b);

// Terms sorted descending in degrevlex (the canonical storage order) with
// nonzero coefficients; the zero polynomial has no terms.
struct Poly {
  std::vector<std::pair<Mono, Rat>> t;

  bool is_zero() const { return t.empty(); }
  int degree() const;  // total degree, -1 for zero
};

bool operator==(const Poly& a, const Poly& b);

Poly poly_const(const Rat& c);
Poly poly_var(int var);
// Sorts, combines and prunes an arbitrary term list.
Poly poly_from_terms(std::vector<std::pair<Mono, Rat>> terms);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rat& c);
Poly poly_mul_term(const Poly& a, const Mono& m, const Rat& c);

// Leading term with respect to `order` (storage is degrevlex, so other
// orders scan; polynomials here stay small).
const std::pair<Mono, Rat>& leading_term(const Poly& p, MonoOrder order);

// Make the leading coefficient 1 (any order gives the same scaling only up
// to which term leads; callers pass the active order).
Poly poly_monic(const Poly& p, MonoOrder order);

Rat poly_eval(const Poly& p, const std::array<Rat, kPolyVars>& point);

// "x_h^2 + 4*x_e*x_f"; integer coefficients print bare, other rationals as
// "num/den". `names` supplies the variable spellings.
std::string poly_to_string(const Poly& p,
                           const std::array<std::string, kPolyVars>& names = {
                               "x_e", "x_h", "x_f", "t"});

}  // namespace qlk

#endif
