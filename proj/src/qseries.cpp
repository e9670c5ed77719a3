#include "qlk/qseries.hpp"

#include <algorithm>

#include "qlk/errors.hpp"

namespace qlk {

bool QSeries::is_zero() const {
  for (const auto& x : c)
    if (x != 0) return false;
  return true;
}

QSeries qs_constant(const Rat& value, int N) {
  QSeries f;
  f.alpha = 0;
  f.c.assign(N + 1, Rat(0));
  f.c[0] = value;
  return f;
}

QSeries qs_monomial(const Rat& alpha, int N) {
  QSeries f;
  f.alpha = alpha;
  f.c.assign(N + 1, Rat(0));
  f.c[0] = 1;
  return f;
}

QSeries qs_add(const QSeries& f, const QSeries& g) {
  Rat d = g.alpha - f.alpha;
  if (!is_integer(d))
    throw Error(ErrorCode::TruncationError, "modular_mlde",
                "cannot add series: leading exponents differ by " +
                    rat_to_string(d) + ", not an integer");
  if (d < 0) return qs_add(g, f);
  long shift = d.get_num().get_si();
  long upper = std::min<long>(f.trunc(), shift + g.trunc());
  QSeries r;
  r.alpha = f.alpha;
  if (upper < 0)
    throw Error(ErrorCode::TruncationError, "modular_mlde",
                "series windows do not overlap");
  r.c.assign(upper + 1, Rat(0));
  for (long i = 0; i <= upper; ++i) {
    r.c[i] = f.c[i];
    if (i >= shift && i - shift <= g.trunc()) r.c[i] += g.c[i - shift];
  }
  return r;
}

QSeries qs_sub(const QSeries& f, const QSeries& g) {
  return qs_add(f, qs_scale(Rat(-1), g));
}

QSeries qs_mul(const QSeries& f, const QSeries& g) {
  int N = std::min(f.trunc(), g.trunc());
  QSeries r;
  r.alpha = f.alpha + g.alpha;
  r.c.assign(N + 1, Rat(0));
  for (int i = 0; i <= std::min<int>(N, f.trunc()); ++i) {
    if (f.c[i] == 0) continue;
    for (int j = 0; i + j <= N && j <= g.trunc(); ++j) {
      if (g.c[j] == 0) continue;
      r.c[i + j] += f.c[i] * g.c[j];
    }
  }
  return r;
}

QSeries qs_scale(const Rat& s, const QSeries& f) {
  QSeries r = f;
  for (auto& x : r.c) x *= s;
  return r;
}

QSeries qs_qdq(const QSeries& f) {
  QSeries r = f;
  for (int i = 0; i <= r.trunc(); ++i) r.c[i] *= f.alpha + i;
  return r;
}

QSeries qs_truncate(const QSeries& f, int N) {
  if (N > f.trunc())
    throw Error(ErrorCode::TruncationError, "modular_mlde",
                "cannot extend a truncated series");
  QSeries r;
  r.alpha = f.alpha;
  r.c.assign(f.c.begin(), f.c.begin() + N + 1);
  return r;
}

QSeries qs_normalize(const QSeries& f) {
  int z = 0;
  while (z <= f.trunc() && f.c[z] == 0) ++z;
  if (z > f.trunc()) {
    QSeries zero;
    zero.alpha = 0;
    zero.c.assign(1, Rat(0));
    return zero;
  }
  QSeries r;
  r.alpha = f.alpha + z;
  r.c.assign(f.c.begin() + z, f.c.end());
  return r;
}

QSeries eisenstein(int weight, int N) {
  long power;
  Rat factor;
  switch (weight) {
    case 2: power = 1; factor = -24; break;
    case 4: power = 3; factor = 240; break;
    case 6: power = 5; factor = -504; break;
    default:
      throw Error(ErrorCode::Internal, "modular_mlde",
                  "eisenstein: weight must be 2, 4 or 6");
  }
  QSeries e;
  e.alpha = 0;
  e.c.assign(N + 1, Rat(0));
  e.c[0] = 1;
  for (int n = 1; n <= N; ++n) {
    Int sigma = 0;
    for (int d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      Int t = d;
      Int dp = 1;
      for (long i = 0; i < power; ++i) dp *= t;
      sigma += dp;
    }
    e.c[n] = factor * Rat(sigma);
  }
  return e;
}

}  // namespace qlk
