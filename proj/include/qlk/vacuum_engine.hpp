#ifndef QLK_VACUUM_ENGINE_HPP
#define QLK_VACUUM_ENGINE_HPP

#include <vector>

#include "qlk/pbw.hpp"
#include "qlk/qseries.hpp"
#include "qlk/rational.hpp"

namespace qlk {

// Level specification: an exact rational value, or the generic level, for
// which ranks are taken over the rational function field Q(k).
struct KSpec {
  bool generic = false;
  Rat value;

  static KSpec at(const Rat& k) {
    KSpec s;
    s.value = k;
    return s;
  }
  static KSpec generic_k() {
    KSpec s;
    s.generic = true;
    return s;
  }
};

// alpha = leading exponent (-c/24 for vacuum characters), coeffs a_0..a_N.
using QCharacter = QSeries;

struct SingularVector {
  int degree = 0;
  int weight = 0;
  // Coordinates over enumerate_basis(degree, weight).basis, scaled to a
  // primitive integer vector with positive leading entry.
  std::vector<Rat> coords;
};

// Character of V^k(sl2) (level independent); alpha supplied by the caller.
QCharacter universal_character(int N, const Rat& alpha);

// Exact Gram matrix of the contravariant form on the (d, w) block.
std::vector<std::vector<Rat>> contravariant_gram(const Rat& k, int d, int w);

// Same block at generic level: entries are dense polynomials in k
// (ascending powers, integer coefficients).
std::vector<std::vector<std::vector<Rat>>> contravariant_gram_generic(int d,
                                                                      int w);

// dim L_k(sl2) in degree d = sum over w of rank contravariant_gram(k, d, w).
// Ranks are certified exactly: small blocks by fraction-free elimination,
// large blocks by a modular lower bound matched against an exactly verified
// radical subspace, with exact elimination as the fallback.
int graded_dim_simple(const KSpec& k, int d);

// Basis of { v of degree d : e(0) v = 0, f(1) v = 0 }, the degree-d highest
// weight vectors of the maximal proper submodule. Empty for generic k.
std::vector<SingularVector> singular_vectors(const KSpec& k, int d);

// Normalized vacuum character of L_k(sl2) through q^N. Raises CriticalLevel
// at k = -2 where the central charge is undefined.
QCharacter simple_character(const Rat& k, int N);

// Weyl-Kac character of L_k(sl2) for integrable k >= 0 as a theta quotient:
// [ sum_m (2(k+2)m+1) q^((k+2)m^2+m) ] / prod (1-q^n)^3, alpha = -c/24.
QCharacter integrable_character_theta(int k, int N);

// Worker cap for block-level parallelism: QLK_THREADS, else 1.
int engine_thread_count();

}  // namespace qlk

#endif
