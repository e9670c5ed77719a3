#ifndef QLK_QSERIES_HPP
#define QLK_QSERIES_HPP

#include <vector>

#include "qlk/rational.hpp"

namespace qlk {

// Truncated q-expansion q^alpha * (c[0] + c[1] q + ... + c[N] q^N) with an
// exact rational leading exponent.  The window of known coefficients is
// [alpha, alpha + N]; every operation tracks how far the result stays exact.
struct QSeries {
  Rat alpha;
  std::vector<Rat> c;

  int trunc() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const;
};

QSeries qs_constant(const Rat& value, int N);           // alpha = 0
QSeries qs_monomial(const Rat& alpha, int N);           // q^alpha * 1

// Addition aligns the two windows.  The leading exponents must differ by an
// integer; otherwise a TruncationError is raised (coefficients at fractional
// offsets cannot be merged into one ladder).
QSeries qs_add(const QSeries& f, const QSeries& g);
QSeries qs_sub(const QSeries& f, const QSeries& g);
QSeries qs_mul(const QSeries& f, const QSeries& g);     // N = min(Nf, Ng)
QSeries qs_scale(const Rat& s, const QSeries& f);
QSeries qs_qdq(const QSeries& f);                       // q d/dq
QSeries qs_truncate(const QSeries& f, int N);           // N <= trunc()

// Drop leading zero coefficients, advancing alpha and shrinking the window
// accordingly.  The zero series collapses to alpha = 0 with a single 0.
QSeries qs_normalize(const QSeries& f);

// Eisenstein series E2, E4, E6 normalized to constant term 1, through q^N.
QSeries eisenstein(int weight, int N);

}  // namespace qlk

#endif
