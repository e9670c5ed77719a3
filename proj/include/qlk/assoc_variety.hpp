#ifndef QLK_ASSOC_VARIETY_HPP
#define QLK_ASSOC_VARIETY_HPP

#include <vector>

#include "qlk/groebner.hpp"
#include "qlk/poly.hpp"
#include "qlk/rational.hpp"
#include "qlk/vacuum_engine.hpp"

namespace qlk {

struct PolyIdeal {
  std::vector<Poly> generators;
  MonoOrder order = MonoOrder::Degrevlex;
  bool has_groebner = false;
  std::vector<Poly> groebner;  // valid when has_groebner
};

// Image of a singular vector in R_V = V / g[t^-1]t^-2 V: monomials with a
// mode below -1 die; e(-1)^a h(-1)^b f(-1)^c vac maps to x_e^a x_h^b x_f^c.
Poly symbol_in_RV(const SingularVector& v);

// Casimir polynomial x_h^2 + 4 x_e x_f cutting out the nilpotent cone.
Poly casimir_poly();

// Kirillov-Kostant bracket {x_gen, p} extended as a derivation.
Poly poisson_bracket_gen(int gen, const Poly& p);

// Smallest linear span containing the input and stable under the three
// brackets above; returns a deterministic spanning set of generators.
PolyIdeal adjoint_closure(const std::vector<Poly>& polys);

const std::vector<Poly>& ensure_groebner(PolyIdeal& ideal);

int krull_dim(PolyIdeal& ideal);  // -1 empty, 3 for the zero ideal

// True iff the Casimir lies in the radical (Rabinowitsch certificate).
// UnitIdeal if the variety is empty.
bool nilcone_containment(PolyIdeal& ideal);

struct VarietyReport {
  int krull_dim = 3;
  bool in_nilcone = false;
  bool lisse = false;
  bool quasi_lisse_sl2 = false;
  int truncation_degree = 0;
};

struct VarietyResult {
  VarietyReport report;
  PolyIdeal ideal;
};

// Pipeline: singular vectors through degree N_max -> symbols -> adjoint
// closure -> Groebner analysis. The result is an upper-bound certificate:
// the true variety is contained in the one reported here.
VarietyResult variety_of_level(const Rat& k, int N_max);

struct SlodowyResult {
  std::vector<Poly> restricted;  // univariate in s (variable slot 0)
  int dim = 1;                   // 1 whole slice, 0 finite, -1 empty
};

// Substitute the slice parametrization x_f = 1, x_h = 0, x_e = s.
SlodowyResult slodowy_restrict(const PolyIdeal& ideal);

}  // namespace qlk

#endif
