#ifndef QLK_PBW_HPP
#define QLK_PBW_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qlk/rational.hpp"

namespace qlk {

// Chevalley generators of sl2. The enum order fixes the canonical factor
// order inside PBW monomials, so it must not change.
enum Gen : int { GenE = 0, GenH = 1, GenF = 2 };

int gen_weight(int gen);        // ad(h) eigenvalue: +2, 0, -2
const char* gen_name(int gen);  // "e", "h", "f"
int gen_sigma(int gen);         // adjoint swap: e <-> f, h -> h

// A single mode operator x(n). Basis factors always have n <= -1.
struct Factor {
  int gen = 0;
  int mode = 0;
};

inline bool operator==(const Factor& a, const Factor& b) {
  return a.gen == b.gen && a.mode == b.mode;
}

// Canonical order: deepest modes first, then e < h < f at equal mode.
bool factor_less(const Factor& a, const Factor& b);
bool factor_le(const Factor& a, const Factor& b);

// Interned canonical PBW monomial applied to the vacuum. Id 0 is the vacuum.
using MonoId = std::uint32_t;

MonoId vacuum_id();
// `canonical` must already be sorted by factor_less.
MonoId intern_monomial(const std::vector<Factor>& canonical);
const std::vector<Factor>& monomial_factors(MonoId id);
int monomial_degree(MonoId id);
int monomial_weight(MonoId id);
std::string monomial_name(MonoId id);  // e.g. "e(-1)^2 h(-2)", "vac"

struct GradedComponent {
  int degree = 0;
  int weight = 0;
  std::vector<MonoId> basis;  // lexicographic in the canonical factor order
};

// Cached and deterministic; thread safe.
const GradedComponent& enumerate_basis(int d, int w);

// Graded dimensions of V^k(sl2): 3-colored partition counts, q^0 .. q^N.
std::vector<Int> universal_graded_dims(int N);

// x(n) applied to an interned monomial and straightened back to the
// canonical basis. Coefficients are exact and affine in the level k:
// c0 + c1*k. The result is memoized; the reference stays valid.
struct ActionTerm {
  MonoId id = 0;
  long long c0 = 0;
  long long c1 = 0;
};

const std::vector<ActionTerm>& apply_mode(int gen, int mode, MonoId id);

}  // namespace qlk

#endif
