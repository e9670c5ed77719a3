#include "qlk/groebner.hpp"

#include <algorithm>
#include <deque>
#include <utility>

#include "qlk/errors.hpp"

namespace qlk {

Poly reduce_full(Poly f, const std::vector<Poly>& basis, MonoOrder order) {
  Poly remainder;
  while (!f.is_zero()) {
    const auto& [fm, fc] = leading_term(f, order);
    bool reduced = false;
    for (const Poly& g : basis) {
      if (g.is_zero()) continue;
      const auto& [gm, gc] = leading_term(g, order);
      if (!mono_divides(gm, fm)) continue;
      f = poly_sub(f, poly_mul_term(g, mono_div(fm, gm), fc / gc));
      reduced = true;
      break;
    }
    if (!reduced) {
      // Move the irreducible leading term to the remainder.
      Poly lt;
      lt.t.emplace_back(fm, fc);
      remainder = poly_add(remainder, lt);
      f = poly_sub(f, lt);
    }
  }
  return remainder;
}

namespace {

Poly s_poly(const Poly& a, const Poly& b, MonoOrder order) {
  const auto& [am, ac] = leading_term(a, order);
  const auto& [bm, bc] = leading_term(b, order);
  const Mono l = mono_lcm(am, bm);
  return poly_sub(poly_mul_term(a, mono_div(l, am), 1 / ac),
                  poly_mul_term(b, mono_div(l, bm), 1 / bc));
}

}  // namespace

std::vector<Poly> buchberger(std::vector<Poly> gens, MonoOrder order) {
  std::vector<Poly> basis;
  for (Poly& g : gens)
    if (!g.is_zero()) basis.push_back(poly_monic(g, order));

  std::deque<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

  while (!pairs.empty()) {
    const auto [i, j] = pairs.front();
    pairs.pop_front();
    const Mono& mi = leading_term(basis[i], order).first;
    const Mono& mj = leading_term(basis[j], order).first;
    if (mono_lcm(mi, mj) == mono_mul(mi, mj)) continue;  // coprime leads
    Poly s = reduce_full(s_poly(basis[i], basis[j], order), basis, order);
    if (s.is_zero()) continue;
    basis.push_back(poly_monic(s, order));
    for (std::size_t t = 0; t + 1 < basis.size(); ++t)
      pairs.emplace_back(t, basis.size() - 1);
  }

  // Minimalize: drop elements whose lead is divisible by another lead.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Mono& mi = leading_term(basis[i], order).first;
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const Mono& mj = leading_term(basis[j], order).first;
      if (mono_divides(mj, mi) && (mj != mi || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }

  // Inter-reduce tails for the unique reduced basis.
  std::vector<Poly> reduced(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    reduced[i] = poly_monic(reduce_full(minimal[i], others, order), order);
  }
  std::erase_if(reduced, [](const Poly& p) { return p.is_zero(); });
  std::sort(reduced.begin(), reduced.end(), [order](const Poly& a, const Poly& b) {
    return mono_less(leading_term(b, order).first, leading_term(a, order).first,
                     order);
  });
  return reduced;
}

bool ideal_member(const Poly& p, const std::vector<Poly>& groebner,
                  MonoOrder order) {
  return reduce_full(p, groebner, order).is_zero();
}

bool is_unit_ideal(const std::vector<Poly>& groebner) {
  for (const Poly& g : groebner)
    if (!g.is_zero() && g.degree() == 0) return true;
  return false;
}

int staircase_dim(const std::vector<Poly>& groebner, int nvars,
                  MonoOrder order) {
  if (is_unit_ideal(groebner)) return -1;
  std::vector<Mono> leads;
  for (const Poly& g : groebner)
    if (!g.is_zero()) leads.push_back(leading_term(g, order).first);
  int best = 0;
  for (unsigned mask = 0; mask < (1u << nvars); ++mask) {
    bool independent = true;
    for (const Mono& m : leads) {
      bool supported = true;  // support(m) inside the candidate set?
      for (int v = 0; v < kPolyVars && supported; ++v)
        if (m.e[v] > 0 && (v >= nvars || !(mask & (1u << v))))
          supported = false;
      if (supported) {
        independent = false;
        break;
      }
    }
    if (independent) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

}  // namespace qlk
