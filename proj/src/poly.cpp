#include "qlk/poly.hpp"

#include <algorithm>

#include "qlk/errors.hpp"

namespace qlk {

bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
bool operator!=(const Mono& a, const Mono& b) { return !(a == b); }

bool mono_less(const Mono& a, const Mono& b, MonoOrder order) {
  if (order == MonoOrder::Lex) {
    for (int i = 0; i < kPolyVars; ++i)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    return false;
  }
  // Graded reverse lexicographic: higher total degree wins; ties go to the
  // monomial with the *smaller* exponent on the least variable.
  if (a.total() != b.total()) return a.total() < b.total();
  for (int i = kPolyVars - 1; i >= 0; --i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  return false;
}

bool mono_divides(const Mono& a, const Mono& b) {
  for (int i = 0; i < kPolyVars; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono m;
  for (int i = 0; i < kPolyVars; ++i) m.e[i] = a.e[i] + b.e[i];
  return m;
}

Mono mono_div(const Mono& a, const Mono& b) {
  Mono m;
  for (int i = 0; i < kPolyVars; ++i) {
    m.e[i] = a.e[i] - b.e[i];
    if (m.e[i] < 0)
      throw Error(ErrorCode::Internal, "assoc_variety",
                  "monomial division without divisibility");
  }
  return m;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono m;
  for (int i = 0; i < kPolyVars; ++i) m.e[i] = std::max(a.e[i], b.e[i]);
  return m;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : t) d = std::max(d, m.total());
  return d;
}

bool operator==(const Poly& a, const Poly& b) { return a.t == b.t; }

Poly poly_const(const Rat& c) {
  Poly p;
  if (c != 0) p.t.emplace_back(Mono{}, c);
  return p;
}

Poly poly_var(int var) {
  Mono m;
  m.e[var] = 1;
  Poly p;
  p.t.emplace_back(m, Rat(1));
  return p;
}

Poly poly_from_terms(std::vector<std::pair<Mono, Rat>> terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return mono_less(b.first, a.first, MonoOrder::Degrevlex);  // descending
  });
  Poly p;
  for (auto& [m, c] : terms) {
    if (!p.t.empty() && p.t.back().first == m)
      p.t.back().second += c;
    else
      p.t.emplace_back(m, c);
    if (p.t.back().second == 0) p.t.pop_back();
  }
  return p;
}

namespace {

template <class Combine>
Poly merge_terms(const Poly& a, const Poly& b, Combine combine) {
  Poly r;
  std::size_t i = 0, j = 0;
  while (i < a.t.size() || j < b.t.size()) {
    bool take_a;
    if (i == a.t.size())
      take_a = false;
    else if (j == b.t.size())
      take_a = true;
    else if (a.t[i].first == b.t[j].first) {
      Rat c = combine(a.t[i].second, b.t[j].second);
      if (c != 0) r.t.emplace_back(a.t[i].first, std::move(c));
      ++i, ++j;
      continue;
    } else {
      take_a = mono_less(b.t[j].first, a.t[i].first, MonoOrder::Degrevlex);
    }
    if (take_a) {
      r.t.push_back(a.t[i++]);
    } else {
      Rat c = combine(Rat(0), b.t[j].second);
      if (c != 0) r.t.emplace_back(b.t[j].first, std::move(c));
      ++j;
    }
  }
  return r;
}

}  // namespace

Poly poly_add(const Poly& a, const Poly& b) {
  return merge_terms(a, b, [](const Rat& x, const Rat& y) { return x + y; });
}

Poly poly_sub(const Poly& a, const Poly& b) {
  return merge_terms(a, b, [](const Rat& x, const Rat& y) { return x - y; });
}

Poly poly_mul_term(const Poly& a, const Mono& m, const Rat& c) {
  Poly r;
  if (c == 0) return r;
  r.t.reserve(a.t.size());
  for (const auto& [am, ac] : a.t) r.t.emplace_back(mono_mul(am, m), ac * c);
  return r;  // multiplication by a fixed monomial preserves the order
}

Poly poly_mul(const Poly& a, const Poly& b) {
  std::vector<std::pair<Mono, Rat>> terms;
  terms.reserve(a.t.size() * b.t.size());
  for (const auto& [am, ac] : a.t)
    for (const auto& [bm, bc] : b.t)
      terms.emplace_back(mono_mul(am, bm), ac * bc);
  return poly_from_terms(std::move(terms));
}

Poly poly_scale(const Poly& a, const Rat& c) {
  Poly r;
  if (c == 0) return r;
  r.t.reserve(a.t.size());
  for (const auto& [m, ac] : a.t) r.t.emplace_back(m, ac * c);
  return r;
}

const std::pair<Mono, Rat>& leading_term(const Poly& p, MonoOrder order) {
  if (p.is_zero())
    throw Error(ErrorCode::Internal, "assoc_variety",
                "leading term of the zero polynomial");
  if (order == MonoOrder::Degrevlex) return p.t.front();
  std::size_t best = 0;
  for (std::size_t i = 1; i < p.t.size(); ++i)
    if (mono_less(p.t[best].first, p.t[i].first, order)) best = i;
  return p.t[best];
}

Poly poly_monic(const Poly& p, MonoOrder order) {
  if (p.is_zero()) return p;
  const Rat lead = leading_term(p, order).second;
  return poly_scale(p, 1 / lead);
}

Rat poly_eval(const Poly& p, const std::array<Rat, kPolyVars>& point) {
  Rat v(0);
  for (const auto& [m, c] : p.t) {
    Rat term = c;
    for (int i = 0; i < kPolyVars; ++i)
      for (int j = 0; j < m.e[i]; ++j) term *= point[i];
    v += term;
  }
  return v;
}

namespace {

std::string coeff_to_string(const Rat& c) {
  return is_integer(c) ? c.get_num().get_str() : rat_to_string(c);
}

}  // namespace

std::string poly_to_string(const Poly& p,
                           const std::array<std::string, kPolyVars>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.t.size(); ++i) {
    const auto& [m, c] = p.t[i];
    const Rat a = abs(c);
    if (i == 0)
      out += (c < 0 ? "-" : "");
    else
      out += (c < 0 ? " - " : " + ");
    std::string vars;
    for (int v = 0; v < kPolyVars; ++v) {
      if (m.e[v] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += names[v];
      if (m.e[v] > 1) vars += "^" + std::to_string(m.e[v]);
    }
    if (vars.empty())
      out += coeff_to_string(a);
    else if (a == 1)
      out += vars;
    else
      out += coeff_to_string(a) + "*" + vars;
  }
  return out;
}

}  // namespace qlk
