#include "qlk/modp.hpp"

#include <stdexcept>

namespace qlk {

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  // p prime, a != 0: Fermat.
  return pow(a, p - 2);
}

std::uint64_t PrimeField::reduce_int(const Int& z) const {
  Int m = z % Int(p);
  if (m < 0) m += Int(p);
  return m.get_ui();
}

bool PrimeField::reduce_rat(const Rat& r, std::uint64_t& out) const {
  std::uint64_t den = reduce_int(r.get_den());
  if (den == 0) return false;
  out = mul(reduce_int(r.get_num()), inv(den));
  return true;
}

namespace {

bool miller_rabin(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  PrimeField f{n};
  // Deterministic witness set for 64-bit integers.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = f.pow(a % n, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = f.mul(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace

std::uint64_t nth_prime62(unsigned index) {
  std::uint64_t n = (1ull << 62) + 981ull * index + 1;
  if ((n & 1) == 0) ++n;
  while (!miller_rabin(n)) n += 2;
  return n;
}

ModMatrix::ModMatrix(std::size_t rows, std::size_t cols, PrimeField f)
    : rows_(rows), cols_(cols), f_(f), a_(rows * cols, 0) {}

std::size_t ModMatrix::rank() {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t piv = r;
    while (piv < rows_ && at(piv, c) == 0) ++piv;
    if (piv == rows_) continue;
    if (piv != r) {
      for (std::size_t j = c; j < cols_; ++j)
        std::swap(at(piv, j), at(r, j));
    }
    std::uint64_t s = f_.inv(at(r, c));
    for (std::size_t j = c; j < cols_; ++j) at(r, j) = f_.mul(at(r, j), s);
    for (std::size_t i = r + 1; i < rows_; ++i) {
      std::uint64_t m = at(i, c);
      if (m == 0) continue;
      for (std::size_t j = c; j < cols_; ++j)
        at(i, j) = f_.sub(at(i, j), f_.mul(m, at(r, j)));
    }
    ++r;
  }
  return r;
}

std::vector<std::vector<std::uint64_t>> ModMatrix::kernel() const {
  ModMatrix m = *this;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols_ && r < m.rows_; ++c) {
    std::size_t piv = r;
    while (piv < m.rows_ && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows_) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < m.cols_; ++j)
        std::swap(m.at(piv, j), m.at(r, j));
    }
    std::uint64_t s = f_.inv(m.at(r, c));
    for (std::size_t j = 0; j < m.cols_; ++j)
      m.at(r, j) = f_.mul(m.at(r, j), s);
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (i == r) continue;
      std::uint64_t t = m.at(i, c);
      if (t == 0) continue;
      for (std::size_t j = 0; j < m.cols_; ++j)
        m.at(i, j) = f_.sub(m.at(i, j), f_.mul(t, m.at(r, j)));
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(m.cols_, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t c = 0; c < m.cols_; ++c) {
    if (is_pivot[c]) continue;
    std::vector<std::uint64_t> v(m.cols_, 0);
    v[c] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      v[pivot_col[i]] = f_.neg(m.at(i, c));
    basis.push_back(std::move(v));
  }
  return basis;
}

IncrementalEchelon::IncrementalEchelon(std::size_t cols, PrimeField f)
    : cols_(cols), f_(f) {}

bool IncrementalEchelon::insert(std::vector<std::uint64_t> v) {
  if (v.size() != cols_) throw std::invalid_argument("echelon: bad width");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::uint64_t c = v[pivots_[i]];
    if (c == 0) continue;
    const auto& row = rows_[i];
    for (std::size_t j = 0; j < cols_; ++j)
      v[j] = f_.sub(v[j], f_.mul(c, row[j]));
  }
  std::size_t piv = cols_;
  for (std::size_t j = 0; j < cols_; ++j) {
    if (v[j] != 0) {
      piv = j;
      break;
    }
  }
  if (piv == cols_) return false;
  std::uint64_t s = f_.inv(v[piv]);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = f_.mul(v[j], s);
  pivots_.push_back(piv);
  rows_.push_back(std::move(v));
  return true;
}

}  // namespace qlk
