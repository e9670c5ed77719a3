#include "qlk/modular_mlde.hpp"

#include <algorithm>

#include "qlk/errors.hpp"

namespace qlk {

namespace {
const char* kMod = "modular_mlde";
}

std::vector<std::pair<int, int>> modular_basis(int weight) {
  std::vector<std::pair<int, int>> basis;
  if (weight < 0 || weight % 2 != 0) return basis;
  for (int a = weight / 4; a >= 0; --a) {
    int rem = weight - 4 * a;
    if (rem % 6 == 0) basis.emplace_back(a, rem / 6);
  }
  return basis;
}

int modular_dim(int weight) {
  return static_cast<int>(modular_basis(weight).size());
}

std::string monomial_key(int a, int b) {
  return "E4^" + std::to_string(a) + "*E6^" + std::to_string(b);
}

ModularForm mf_zero(int weight) {
  ModularForm f;
  f.weight = weight;
  f.coords.assign(modular_dim(weight), Rat(0));
  return f;
}

bool mf_is_zero(const ModularForm& f) {
  for (const auto& x : f.coords)
    if (x != 0) return false;
  return true;
}

QSeries mf_expand(const ModularForm& f, int N) {
  QSeries out = qs_constant(Rat(0), N);
  auto basis = modular_basis(f.weight);
  QSeries e4 = eisenstein(4, N), e6 = eisenstein(6, N);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (f.coords[i] == 0) continue;
    QSeries term = qs_constant(Rat(1), N);
    for (int a = 0; a < basis[i].first; ++a) term = qs_mul(term, e4);
    for (int b = 0; b < basis[i].second; ++b) term = qs_mul(term, e6);
    out = qs_add(out, qs_scale(f.coords[i], term));
  }
  return out;
}

Rat mf_constant_term(const ModularForm& f) {
  Rat c = 0;
  for (const auto& x : f.coords) c += x;  // E4^a E6^b all start at 1
  return c;
}

std::optional<ModularForm> mf_from_series(int weight, const QSeries& f) {
  if (f.alpha != 0 && !f.is_zero()) return std::nullopt;
  int N = f.trunc();
  int dim = modular_dim(weight);
  ModularForm out = mf_zero(weight);
  if (dim == 0) {
    if (!f.is_zero()) return std::nullopt;
    return out;
  }
  std::vector<QSeries> basis_exp;
  for (auto [a, b] : modular_basis(weight)) {
    ModularForm unit = mf_zero(weight);
    unit.coords[basis_exp.size()] = 1;
    basis_exp.push_back(mf_expand(unit, N));
  }
  // Solve the first `dim` coefficient equations, then verify the rest.
  if (N + 1 < dim) return std::nullopt;
  std::vector<std::vector<Rat>> m(dim, std::vector<Rat>(dim + 1, Rat(0)));
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) m[r][c] = basis_exp[c].c[r];
    m[r][dim] = f.c[r];
  }
  for (int col = 0; col < dim; ++col) {
    int piv = -1;
    for (int r = col; r < dim; ++r)
      if (m[r][col] != 0) { piv = r; break; }
    if (piv < 0) return std::nullopt;  // basis expansions are independent
    std::swap(m[piv], m[col]);
    Rat inv = Rat(1) / m[col][col];
    for (auto& x : m[col]) x *= inv;
    for (int r = 0; r < dim; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rat t = m[r][col];
      for (int c2 = col; c2 <= dim; ++c2) m[r][c2] -= t * m[col][c2];
    }
  }
  for (int c = 0; c < dim; ++c) out.coords[c] = m[c][dim];
  QSeries check = qs_sub(mf_expand(out, N), f);
  if (!check.is_zero()) return std::nullopt;
  return out;
}

QSeries serre_derivative(const QSeries& f, int weight) {
  QSeries e2 = eisenstein(2, f.trunc());
  return qs_sub(qs_qdq(f), qs_scale(rat(weight, 12), qs_mul(e2, f)));
}

QSeries mlde_apply(const MLDE& m, const QSeries& chi) {
  std::vector<QSeries> d;
  d.push_back(chi);
  for (int i = 1; i <= m.order; ++i)
    d.push_back(serre_derivative(d.back(), 2 * (i - 1)));
  QSeries out = d[m.order];
  for (int j = 1; j <= m.order; ++j) {
    const ModularForm& g = m.coeff_forms[j - 1];
    if (mf_is_zero(g)) continue;
    out = qs_add(out, qs_mul(mf_expand(g, chi.trunc()), d[m.order - j]));
  }
  return out;
}

namespace {

// Gauss-Jordan with free variables pinned to zero; every row must be
// satisfied by the result (checked by the caller against the originals).
std::optional<std::vector<Rat>> solve_all_rows(
    std::vector<std::vector<Rat>> m, int ncols) {
  int nrows = static_cast<int>(m.size());
  std::vector<int> pivot_of_col(ncols, -1);
  int r = 0;
  for (int col = 0; col < ncols && r < nrows; ++col) {
    int piv = -1;
    for (int i = r; i < nrows; ++i)
      if (m[i][col] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    Rat inv = Rat(1) / m[r][col];
    for (auto& x : m[r]) x *= inv;
    for (int i = 0; i < nrows; ++i) {
      if (i == r || m[i][col] == 0) continue;
      Rat t = m[i][col];
      for (int c2 = col; c2 <= ncols; ++c2) m[i][c2] -= t * m[r][c2];
    }
    pivot_of_col[col] = r;
    ++r;
  }
  for (int i = r; i < nrows; ++i)
    if (m[i][ncols] != 0) return std::nullopt;  // inconsistent
  std::vector<Rat> x(ncols, Rat(0));
  for (int col = 0; col < ncols; ++col)
    if (pivot_of_col[col] >= 0) x[col] = m[pivot_of_col[col]][ncols];
  return x;
}

}  // namespace

std::optional<MLDE> fit_mlde(const std::vector<QSeries>& chars, int order,
                             int margin) {
  if (order < 1)
    throw Error(ErrorCode::Internal, kMod, "order must be positive");
  if (chars.empty())
    throw Error(ErrorCode::Internal, kMod, "need at least one character");
  int unknowns = 0;
  std::vector<int> offset(order + 1, 0);  // column offset of g_j's coords
  for (int j = 1; j <= order; ++j) {
    offset[j] = unknowns;
    unknowns += modular_dim(2 * j);
  }
  long rows = 0;
  for (const auto& chi : chars) rows += chi.trunc() + 1;
  if (rows < unknowns + margin)
    throw Error(ErrorCode::InsufficientTruncation, kMod,
                "need >= " + std::to_string(unknowns + margin) +
                    " coefficient rows, have " + std::to_string(rows));

  std::vector<std::vector<Rat>> sys;
  for (const auto& chi : chars) {
    int N = chi.trunc();
    std::vector<QSeries> d;
    d.push_back(chi);
    for (int i = 1; i <= order; ++i)
      d.push_back(serre_derivative(d.back(), 2 * (i - 1)));
    // column series: for unknown (j, basis index b), the product
    // E4^a E6^b * D^{order-j} chi
    std::vector<QSeries> cols;
    for (int j = 1; j <= order; ++j) {
      auto basis = modular_basis(2 * j);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        ModularForm unit = mf_zero(2 * j);
        unit.coords[b] = 1;
        cols.push_back(qs_mul(mf_expand(unit, N), d[order - j]));
      }
    }
    for (int m = 0; m <= N; ++m) {
      std::vector<Rat> row(unknowns + 1, Rat(0));
      for (int u = 0; u < unknowns; ++u) row[u] = cols[u].c[m];
      row[unknowns] = -d[order].c[m];
      sys.push_back(std::move(row));
    }
  }
  auto sol = solve_all_rows(sys, unknowns);
  if (!sol) return std::nullopt;

  MLDE m;
  m.order = order;
  for (int j = 1; j <= order; ++j) {
    ModularForm g = mf_zero(2 * j);
    for (int b = 0; b < modular_dim(2 * j); ++b)
      g.coords[b] = (*sol)[offset[j] + b];
    m.coeff_forms.push_back(std::move(g));
  }
  // solve_all_rows pins free variables to zero and checks consistency of the
  // eliminated system; re-verify against the characters directly.
  for (const auto& chi : chars)
    if (!mlde_apply(m, chi).is_zero()) return std::nullopt;
  return m;
}

std::optional<std::pair<int, MLDE>> minimal_mlde(
    const std::vector<QSeries>& chars, int max_order, int margin) {
  for (int n = 1; n <= max_order; ++n) {
    auto m = fit_mlde(chars, n, margin);
    if (m) return std::make_pair(n, std::move(*m));
  }
  return std::nullopt;
}

namespace {

// product of (x - t/6) for t = 0..count-1, ascending coefficients
std::vector<Rat> falling_product(int count) {
  std::vector<Rat> p{Rat(1)};
  for (int t = 0; t < count; ++t) {
    std::vector<Rat> np(p.size() + 1, Rat(0));
    Rat root = rat(t, 6);
    for (std::size_t i = 0; i < p.size(); ++i) {
      np[i + 1] += p[i];
      np[i] -= root * p[i];
    }
    p = std::move(np);
  }
  return p;
}

Rat poly_eval(const std::vector<Rat>& p, const Rat& x) {
  Rat v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

// all positive divisors by trial division; fine for fixture-scale constants
std::vector<Int> divisors(Int n) {
  if (n < 0) n = -n;
  std::vector<Int> out;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

// deflate p by (x - r); p must vanish at r
std::vector<Rat> deflate(const std::vector<Rat>& p, const Rat& r) {
  std::vector<Rat> q(p.size() - 1, Rat(0));
  Rat carry = 0;
  for (std::size_t i = p.size(); i-- > 1;) {
    carry = p[i] + carry * r;
    q[i - 1] = carry;
  }
  return q;
}

}  // namespace

IndicialInfo indicial_roots(const MLDE& m) {
  IndicialInfo info;
  info.poly = falling_product(m.order);
  for (int j = 1; j <= m.order; ++j) {
    Rat g0 = mf_constant_term(m.coeff_forms[j - 1]);
    if (g0 == 0) continue;
    auto part = falling_product(m.order - j);
    for (std::size_t i = 0; i < part.size(); ++i)
      info.poly[i] += g0 * part[i];
  }
  // rational roots with multiplicity, via the rational root theorem
  std::vector<Rat> p = info.poly;
  while (p.size() > 1) {
    // strip zero roots first
    if (p[0] == 0) {
      info.roots.push_back(Rat(0));
      p.erase(p.begin());
      continue;
    }
    Int den_lcm = 1;
    for (const auto& c : p)
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
              c.get_den().get_mpz_t());
    std::vector<Int> ip;
    for (const auto& c : p) {
      Rat scaled = c * den_lcm;
      ip.push_back(scaled.get_num());  // scaled is integral by construction
    }
    bool found = false;
    for (const Int& pn : divisors(ip.front())) {
      for (const Int& pd : divisors(ip.back())) {
        for (int sign = 1; sign >= -1; sign -= 2) {
          Rat cand(Int(sign) * pn, pd);
          cand.canonicalize();
          if (poly_eval(p, cand) == 0) {
            info.roots.push_back(cand);
            p = deflate(p, cand);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  std::sort(info.roots.begin(), info.roots.end());
  info.complete = static_cast<int>(info.roots.size()) == m.order;
  return info;
}

QSeries frobenius_solve(const MLDE& m, const Rat& root, int N) {
  IndicialInfo ind = indicial_roots(m);
  if (poly_eval(ind.poly, root) != 0)
    throw Error(ErrorCode::Internal, kMod,
                rat_to_string(root) + " is not an indicial root");
  // repeated root -> logarithmic solution outside this solver's scope
  std::vector<Rat> dp(ind.poly.size() - 1, Rat(0));
  for (std::size_t i = 1; i < ind.poly.size(); ++i)
    dp[i - 1] = ind.poly[i] * Rat(static_cast<long>(i));
  if (poly_eval(dp, root) == 0)
    throw Error(ErrorCode::LogarithmicCase, kMod,
                "indicial root " + rat_to_string(root) + " is repeated");

  QSeries chi;
  chi.alpha = root;
  chi.c.assign(N + 1, Rat(0));
  chi.c[0] = 1;
  for (int M = 1; M <= N; ++M) {
    Rat pm = poly_eval(ind.poly, root + M);
    if (pm == 0)
      throw Error(ErrorCode::ResonantRoot, kMod,
                  "indicial root at " + rat_to_string(root + M) +
                      " resonates with " + rat_to_string(root));
    // coefficient M of the operator applied to the partial sum is linear in
    // the unknown chi.c[M] with slope P(root + M); solve for it
    QSeries partial;
    partial.alpha = root;
    partial.c.assign(chi.c.begin(), chi.c.begin() + M + 1);
    partial.c[M] = 0;
    QSeries image = mlde_apply(m, partial);
    chi.c[M] = -image.c[M] / pm;
  }
  return chi;
}

}  // namespace qlk
