#ifndef QLK_MODULAR_MLDE_HPP
#define QLK_MODULAR_MLDE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlk/qseries.hpp"

namespace qlk {

// Holomorphic modular form for SL2(Z) of even weight w, stored as exact
// coordinates on the monomial basis {E4^a E6^b : 4a + 6b = w}.
struct ModularForm {
  int weight = 0;
  std::vector<Rat> coords;
};

// Basis exponent pairs (a, b), a descending; e.g. weight 12 -> (3,0), (0,2).
std::vector<std::pair<int, int>> modular_basis(int weight);
int modular_dim(int weight);
std::string monomial_key(int a, int b);  // "E4^a*E6^b"

ModularForm mf_zero(int weight);
bool mf_is_zero(const ModularForm& f);
QSeries mf_expand(const ModularForm& f, int N);
Rat mf_constant_term(const ModularForm& f);

// Fit coordinates of weight `weight` reproducing the series through its full
// truncation; nullopt when the series is not such a form.
std::optional<ModularForm> mf_from_series(int weight, const QSeries& f);

// q df/dq - (w/12) E2 f.  Raises the weight of modular inputs by 2.
QSeries serre_derivative(const QSeries& f, int weight);

// Monic operator D^n + sum_j g_j D^{n-j}, with D the Serre derivative
// threaded along weights 0, 2, ..., 2(n-1) and g_j of weight 2j.  The
// weight-2 slot is kept as an explicit zero (dim M_2 = 0).
struct MLDE {
  int order = 0;
  std::vector<ModularForm> coeff_forms;  // g_1 .. g_n
};

QSeries mlde_apply(const MLDE& m, const QSeries& chi);

// Exact least-structure solve: build the coefficientwise linear system over
// all characters at once; a fit must satisfy *every* available row.  Returns
// nullopt when the overdetermined system is inconsistent.  Throws
// InsufficientTruncation when rows < unknowns + margin.
std::optional<MLDE> fit_mlde(const std::vector<QSeries>& chars, int order,
                             int margin = 10);

std::optional<std::pair<int, MLDE>> minimal_mlde(
    const std::vector<QSeries>& chars, int max_order, int margin = 10);

struct IndicialInfo {
  std::vector<Rat> poly;   // monic, ascending degree, length order+1
  std::vector<Rat> roots;  // rational roots with multiplicity
  bool complete = false;   // true iff all `order` roots are rational
};

IndicialInfo indicial_roots(const MLDE& m);

// Unique normalized (a0 = 1) Frobenius solution with leading exponent
// `root`, through q^N.  Throws LogarithmicCase for a repeated root,
// ResonantRoot when root + m is again an indicial root for some 1 <= m <= N.
QSeries frobenius_solve(const MLDE& m, const Rat& root, int N);

}  // namespace qlk

#endif
