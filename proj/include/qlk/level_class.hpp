#ifndef QLK_LEVEL_CLASS_HPP
#define QLK_LEVEL_CLASS_HPP

#include <optional>
#include <string>

#include "qlk/lie_core.hpp"
#include "qlk/rational.hpp"

namespace qlk {

// Exact rational level k.  mpq_class keeps the canonical form invariant
// (positive denominator, gcd 1) for us.
using Level = Rat;

enum class PredictedVariety {
  Point,
  MinimalOrbitClosure,
  NilpotentCone,
  OrbitClosureUnspecified,
  FullDual,
  Unknown,
};

std::string predicted_variety_name(PredictedVariety v);

struct LevelReport {
  Level k;
  bool admissible = false;
  std::optional<Int> p, q;  // witnesses: k + h_check = p/q, coprime
  bool integrable = false;
  bool critical = false;
  std::optional<int> deligne_index;
  Rat c_sugawara;            // 0 at the critical level (field unused there)
  bool c_defined = false;    // false exactly when k is critical
  PredictedVariety predicted_variety = PredictedVariety::Unknown;
};

struct AdmissibleResult {
  bool admissible = false;
  std::optional<Int> p, q;
};

// k + h_check = p/q with p,q coprime positive and p >= h_check when
// gcd(r_check, q) = 1, p >= h otherwise.
AdmissibleResult is_admissible(const SimpleLieAlgebraData& g, const Level& k);

bool is_integrable(const SimpleLieAlgebraData& g, const Level& k);

bool in_deligne_series(const SimpleLieAlgebraData& g);

// k = -h_check/6 - 1 + n.  Throws NotDeligneSeries / ExcludedLevel.
Level deligne_level(const SimpleLieAlgebraData& g, int n);

LevelReport classify(const SimpleLieAlgebraData& g, const Level& k);

// c = k dim g / (k + h_check).  Throws CriticalLevel at k = -h_check.
Rat sugawara_central_charge(const SimpleLieAlgebraData& g, const Level& k);

Rat c4d_to_c2d(const Rat& c4d);

}  // namespace qlk

#endif
