#ifndef QLK_MODP_HPP
#define QLK_MODP_HPP

#include <cstdint>
#include <vector>

#include "qlk/rational.hpp"

namespace qlk {

// Arithmetic modulo a word-sized prime.  Primes are chosen near 2^62 so that
// products fit in unsigned __int128 and sums of two residues never overflow.
struct PrimeField {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p - b;
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % p);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;  // a != 0

  // Reduce an arbitrary integer / rational into the field.  A rational whose
  // denominator vanishes mod p is a "bad prime" event; reduce_rat reports it
  // through the ok flag instead of throwing so callers can switch primes.
  std::uint64_t reduce_int(const Int& z) const;
  bool reduce_rat(const Rat& r, std::uint64_t& out) const;
};

// Deterministic sequence of 62-bit primes: the i-th prime is the smallest
// prime >= 2^62 + 981 * i + 1 (offsets chosen odd).  Purely arithmetic, no
// RNG, so every run of the library sees the identical prime ladder.
std::uint64_t nth_prime62(unsigned index);

// Dense matrix over a prime field, row-major.
class ModMatrix {
 public:
  ModMatrix(std::size_t rows, std::size_t cols, PrimeField f);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const PrimeField& field() const { return f_; }

  std::uint64_t& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }

  // In-place row echelon reduction; returns the rank.
  std::size_t rank();

  // Basis of the right kernel (column vectors), via full Gauss-Jordan.
  std::vector<std::vector<std::uint64_t>> kernel() const;

 private:
  std::size_t rows_, cols_;
  PrimeField f_;
  std::vector<std::uint64_t> a_;
};

// Incremental echelon form: feed vectors one at a time, learn for each one
// whether it is independent of everything inserted so far.  Used to gate
// exact submodule-span closures (only vectors that are new mod p need exact
// processing; a vector dependent mod p *might* still be exactly new, but the
// consumers here only need the dimension lower bound to certify ranks).
class IncrementalEchelon {
 public:
  IncrementalEchelon(std::size_t cols, PrimeField f);

  // Reduces v against the current basis.  Returns true (and absorbs the
  // remainder) if v was independent; false if it reduced to zero.
  bool insert(std::vector<std::uint64_t> v);

  std::size_t dim() const { return pivots_.size(); }

 private:
  std::size_t cols_;
  PrimeField f_;
  std::vector<std::size_t> pivots_;               // pivot column of row i
  std::vector<std::vector<std::uint64_t>> rows_;  // normalized rows
};

}  // namespace qlk

#endif
