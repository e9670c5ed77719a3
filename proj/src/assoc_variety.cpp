#include "qlk/assoc_variety.hpp"

#include <algorithm>
#include <deque>

#include "qlk/errors.hpp"
#include "qlk/pbw.hpp"

namespace qlk {

namespace {

// ad images x_u -> x_{[v,u]} in the basis (x_e, x_h, x_f):
// row v, column u, entries (coefficient, target variable).
struct AdImage {
  long c;
  int var;
};
constexpr AdImage kAd[3][3] = {
    {{0, 0}, {-2, 0}, {1, 1}},  // {x_e, x_e}=0, {x_e,x_h}=-2x_e, {x_e,x_f}=x_h
    {{2, 0}, {0, 0}, {-2, 2}},  // {x_h, x_e}=2x_e,               {x_h,x_f}=-2x_f
    {{-1, 1}, {2, 2}, {0, 0}},  // {x_f, x_e}=-x_h, {x_f,x_h}=2x_f
};

}  // namespace

Poly symbol_in_RV(const SingularVector& v) {
  const GradedComponent& blk = enumerate_basis(v.degree, v.weight);
  if (v.coords.size() != blk.basis.size())
    throw Error(ErrorCode::Internal, "assoc_variety",
                "singular vector does not match its weight block");
  std::vector<std::pair<Mono, Rat>> terms;
  for (std::size_t i = 0; i < blk.basis.size(); ++i) {
    if (v.coords[i] == 0) continue;
    Mono m;
    bool survives = true;
    for (const Factor& f : monomial_factors(blk.basis[i])) {
      if (f.mode <= -2) {
        survives = false;
        break;
      }
      ++m.e[f.gen];
    }
    if (survives) terms.emplace_back(m, v.coords[i]);
  }
  return poly_from_terms(std::move(terms));
}

Poly casimir_poly() {
  Mono h2, ef;
  h2.e[GenH] = 2;
  ef.e[GenE] = ef.e[GenF] = 1;
  return poly_from_terms({{h2, Rat(1)}, {ef, Rat(4)}});
}

Poly poisson_bracket_gen(int gen, const Poly& p) {
  std::vector<std::pair<Mono, Rat>> terms;
  for (const auto& [m, c] : p.t) {
    for (int u = 0; u < 3; ++u) {
      if (m.e[u] == 0 || kAd[gen][u].c == 0) continue;
      // c * e_u * x^(m - e_u) * x_{[gen, u]}
      Mono t = m;
      --t.e[u];
      ++t.e[kAd[gen][u].var];
      terms.emplace_back(t, c * m.e[u] * kAd[gen][u].c);
    }
  }
  return poly_from_terms(std::move(terms));
}

namespace {

// Linear-span echelon keyed by degrevlex leading monomials.
struct SpanEchelon {
  std::vector<Poly> basis;  // monic, pairwise distinct leading monomials

  // Returns the reduced polynomial if independent, zero otherwise.
  Poly insert(Poly p) {
    for (;;) {
      if (p.is_zero()) return p;
      const auto& [pm, pc] = leading_term(p, MonoOrder::Degrevlex);
      bool hit = false;
      for (const Poly& b : basis) {
        const auto& bm = leading_term(b, MonoOrder::Degrevlex).first;
        if (bm == pm) {
          p = poly_sub(p, poly_scale(b, pc));
          hit = true;
          break;
        }
      }
      if (!hit) break;
    }
    p = poly_monic(p, MonoOrder::Degrevlex);
    basis.push_back(p);
    return p;
  }
};

}  // namespace

PolyIdeal adjoint_closure(const std::vector<Poly>& polys) {
  SpanEchelon span;
  std::deque<Poly> work;
  for (const Poly& p : polys) {
    Poly r = span.insert(p);
    if (!r.is_zero()) work.push_back(std::move(r));
  }
  while (!work.empty()) {
    const Poly p = std::move(work.front());
    work.pop_front();
    for (int gen = 0; gen < 3; ++gen) {
      Poly r = span.insert(poisson_bracket_gen(gen, p));
      if (!r.is_zero()) work.push_back(std::move(r));
    }
  }
  PolyIdeal ideal;
  ideal.generators = std::move(span.basis);
  std::sort(ideal.generators.begin(), ideal.generators.end(),
            [](const Poly& a, const Poly& b) {
              return mono_less(leading_term(b, MonoOrder::Degrevlex).first,
                               leading_term(a, MonoOrder::Degrevlex).first,
                               MonoOrder::Degrevlex);
            });
  return ideal;
}

const std::vector<Poly>& ensure_groebner(PolyIdeal& ideal) {
  if (!ideal.has_groebner) {
    ideal.groebner = buchberger(ideal.generators, ideal.order);
    ideal.has_groebner = true;
  }
  return ideal.groebner;
}

int krull_dim(PolyIdeal& ideal) {
  return staircase_dim(ensure_groebner(ideal), 3, ideal.order);
}

bool nilcone_containment(PolyIdeal& ideal) {
  if (is_unit_ideal(ensure_groebner(ideal)))
    throw Error(ErrorCode::UnitIdeal, "assoc_variety",
                "nilpotent-cone containment is undefined for the empty variety");
  // Rabinowitsch: Casimir vanishes on V(I) iff I + (1 - t*Casimir) is unit.
  std::vector<Poly> gens = ideal.generators;
  const Poly t = poly_var(3);
  gens.push_back(poly_sub(poly_const(Rat(1)), poly_mul(t, casimir_poly())));
  return is_unit_ideal(buchberger(std::move(gens), ideal.order));
}

VarietyResult variety_of_level(const Rat& k, int N_max) {
  if (k == -2)
    throw Error(ErrorCode::CriticalLevel, "assoc_variety",
                "associated variety is not computed at the critical level");
  if (N_max < 1)
    throw Error(ErrorCode::TruncationError, "assoc_variety",
                "truncation must reach degree 1");
  std::vector<Poly> symbols;
  for (int d = 1; d <= N_max; ++d)
    for (const SingularVector& sv : singular_vectors(KSpec::at(k), d)) {
      Poly s = symbol_in_RV(sv);
      if (!s.is_zero()) symbols.push_back(std::move(s));
    }
  VarietyResult res;
  res.ideal = adjoint_closure(symbols);
  res.report.truncation_degree = N_max;
  res.report.krull_dim = krull_dim(res.ideal);
  res.report.in_nilcone = nilcone_containment(res.ideal);
  res.report.lisse = res.report.krull_dim == 0;
  res.report.quasi_lisse_sl2 = res.report.in_nilcone;
  return res;
}

namespace {

// Univariate gcd degree analysis for the restricted ideal.
std::vector<Rat> to_univariate(const Poly& p) {
  std::vector<Rat> c;
  for (const auto& [m, coef] : p.t) {
    if (m.e[1] || m.e[2] || m.e[3])
      throw Error(ErrorCode::Internal, "assoc_variety",
                  "restricted polynomial is not univariate");
    if (static_cast<std::size_t>(m.e[0]) >= c.size())
      c.resize(m.e[0] + 1, Rat(0));
    c[m.e[0]] = coef;
  }
  return c;
}

std::vector<Rat> uni_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
  while (a.size() >= b.size()) {
    const Rat q = a.back() / b.back();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[a.size() - b.size() + i] -= q * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (a.empty()) break;
  }
  return a;
}

}  // namespace

SlodowyResult slodowy_restrict(const PolyIdeal& ideal) {
  SlodowyResult res;
  for (const Poly& g : ideal.generators) {
    // x_e -> s (slot 0), x_h -> 0, x_f -> 1.
    std::vector<std::pair<Mono, Rat>> terms;
    for (const auto& [m, c] : g.t) {
      if (m.e[GenH] > 0) continue;
      Mono t;
      t.e[0] = m.e[GenE];
      terms.emplace_back(t, c);
    }
    Poly r = poly_from_terms(std::move(terms));
    if (!r.is_zero()) res.restricted.push_back(std::move(r));
  }
  if (res.restricted.empty()) {
    res.dim = 1;
    return res;
  }
  std::vector<Rat> g = to_univariate(res.restricted.front());
  for (std::size_t i = 1; i < res.restricted.size() && g.size() > 1; ++i) {
    std::vector<Rat> b = to_univariate(res.restricted[i]);
    // Euclid on (g, b).
    while (!b.empty()) {
      std::vector<Rat> r = uni_rem(g, b);
      g = std::move(b);
      b = std::move(r);
    }
  }
  res.dim = g.size() > 1 ? 0 : -1;  // nonconstant gcd has roots over C
  return res;
}

}  // namespace qlk
