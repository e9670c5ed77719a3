#include "qlk/level_class.hpp"

namespace qlk {

std::string predicted_variety_name(PredictedVariety v) {
  switch (v) {
    case PredictedVariety::Point: return "POINT";
    case PredictedVariety::MinimalOrbitClosure: return "MINIMAL_ORBIT_CLOSURE";
    case PredictedVariety::NilpotentCone: return "NILPOTENT_CONE";
    case PredictedVariety::OrbitClosureUnspecified:
      return "ORBIT_CLOSURE_UNSPECIFIED";
    case PredictedVariety::FullDual: return "FULL_DUAL";
    case PredictedVariety::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

AdmissibleResult is_admissible(const SimpleLieAlgebraData& g, const Level& k) {
  AdmissibleResult r;
  Rat shifted = k + dual_coxeter_number(g);
  if (shifted <= 0) return r;  // p/q needs positive integers
  Int p = shifted.get_num(), q = shifted.get_den();  // already coprime
  int threshold = (gcd(Int(lacing_number(g)), q) == 1)
                      ? dual_coxeter_number(g)
                      : coxeter_number(g);
  if (p < threshold) return r;
  r.admissible = true;
  r.p = p;
  r.q = q;
  return r;
}

bool is_integrable(const SimpleLieAlgebraData&, const Level& k) {
  return k >= 0 && is_integer(k);
}

bool in_deligne_series(const SimpleLieAlgebraData& g) {
  switch (g.series) {
    case Series::A: return g.rank == 1 || g.rank == 2;
    case Series::G: return g.rank == 2;
    case Series::D: return g.rank == 4;
    case Series::F: return g.rank == 4;
    case Series::E: return true;  // 6, 7, 8 — all valid E ranks
    default: return false;
  }
}

Level deligne_level(const SimpleLieAlgebraData& g, int n) {
  if (!in_deligne_series(g))
    throw Error(ErrorCode::NotDeligneSeries, "level_class",
                series_name(g.series) + std::to_string(g.rank) +
                    " is not in the Deligne exceptional series");
  if (n < 0)
    throw Error(ErrorCode::ExcludedLevel, "level_class", "index must be >= 0");
  Level k = Rat(-dual_coxeter_number(g)) / 6 - 1 + n;
  if (k >= 0 && is_integer(k))
    throw Error(ErrorCode::ExcludedLevel, "level_class",
                "level " + rat_to_string(k) + " is a nonnegative integer");
  return k;
}

Rat sugawara_central_charge(const SimpleLieAlgebraData& g, const Level& k) {
  Rat shifted = k + dual_coxeter_number(g);
  if (shifted == 0)
    throw Error(ErrorCode::CriticalLevel, "level_class",
                "no Sugawara conformal vector at k = -h_check");
  return k * g.dim() / shifted;
}

Rat c4d_to_c2d(const Rat& c4d) { return Rat(-12) * c4d; }

LevelReport classify(const SimpleLieAlgebraData& g, const Level& k) {
  LevelReport rep;
  rep.k = k;
  int hc = dual_coxeter_number(g);
  rep.critical = (k + hc == 0);
  AdmissibleResult adm = is_admissible(g, k);
  rep.admissible = adm.admissible;
  rep.p = adm.p;
  rep.q = adm.q;
  rep.integrable = is_integrable(g, k);
  if (!rep.critical) {
    rep.c_sugawara = sugawara_central_charge(g, k);
    rep.c_defined = true;
  }
  // Deligne index: k = -h_check/6 - 1 + n with integer n >= 0, provided the
  // theorem applies (g in the series and k not a nonnegative integer).
  if (in_deligne_series(g) && !rep.integrable) {
    Rat n = k + Rat(hc) / 6 + 1;
    if (n >= 0 && is_integer(n)) rep.deligne_index = int(n.get_num().get_si());
  }

  bool a1 = (g.series == Series::A && g.rank == 1);
  if (rep.integrable) {
    rep.predicted_variety = PredictedVariety::Point;
  } else if (rep.critical) {
    rep.predicted_variety = PredictedVariety::NilpotentCone;
  } else if (a1 && rep.admissible) {
    // sl(2): the only nonzero nilpotent orbit closure is the cone itself,
    // so the admissible-level orbit closure is pinned down.
    rep.predicted_variety = PredictedVariety::NilpotentCone;
  } else if (rep.deligne_index.has_value()) {
    rep.predicted_variety = PredictedVariety::MinimalOrbitClosure;
  } else if (rep.admissible) {
    rep.predicted_variety = PredictedVariety::OrbitClosureUnspecified;
  } else {
    rep.predicted_variety = PredictedVariety::Unknown;
  }
  return rep;
}

}  // namespace qlk
