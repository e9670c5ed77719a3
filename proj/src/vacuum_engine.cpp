#include "qlk/vacuum_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <utility>

#include "qlk/errors.hpp"
#include "qlk/level_class.hpp"
#include "qlk/lie_core.hpp"
#include "qlk/modp.hpp"

namespace qlk {

namespace {

// Blocks up to this size get unconditional fraction-free elimination; the
// modular rank sandwich only engages above it. 160 covers every block
// through degree 8, so shallow truncations never depend on span closure.
constexpr int kExactBlockLimit = 160;

// Evaluation points standing in for a generic level. Far beyond every
// vanishing line of the form's determinant in any supported truncation.
constexpr long kGenericEval0 = 1000003;
constexpr long kGenericEval1 = 1000033;

// ---------------------------------------------------------------------------
// Sparse mode-action matrices between weight blocks, cached globally.
// Coefficients stay affine in the level: c0 + c1*k with integer c0, c1.

struct SparseEnt {
  std::uint32_t row;
  long long c0, c1;
};

struct SparseActionMatrix {
  int gen = 0, mode = 0;
  int src_d = 0, src_w = 0, dst_d = 0, dst_w = 0;
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<SparseEnt>> col;  // per source basis column
};

struct BlockIndex {
  const GradedComponent* gc = nullptr;
  std::unordered_map<MonoId, int> pos;
};

const BlockIndex& block_index(int d, int w) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<BlockIndex>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{d, w}];
  if (!slot) {
    slot = std::make_unique<BlockIndex>();
    slot->gc = &enumerate_basis(d, w);
    slot->pos.reserve(slot->gc->basis.size());
    for (std::size_t i = 0; i < slot->gc->basis.size(); ++i)
      slot->pos.emplace(slot->gc->basis[i], static_cast<int>(i));
  }
  return *slot;
}

std::uint64_t matrix_key(int gen, int mode, int d, int w) {
  return static_cast<std::uint64_t>(gen) |
         (static_cast<std::uint64_t>(mode + 128) << 2) |
         (static_cast<std::uint64_t>(d) << 11) |
         (static_cast<std::uint64_t>(w + 256) << 20);
}

std::unique_ptr<SparseActionMatrix> build_action_matrix(int gen, int mode,
                                                        int d, int w) {
  auto m = std::make_unique<SparseActionMatrix>();
  m->gen = gen;
  m->mode = mode;
  m->src_d = d;
  m->src_w = w;
  m->dst_d = d - mode;
  m->dst_w = w + gen_weight(gen);
  const GradedComponent& src = enumerate_basis(d, w);
  m->cols = src.basis.size();
  m->col.resize(m->cols);
  const BlockIndex* dst = nullptr;
  if (m->dst_d >= 0) {
    dst = &block_index(m->dst_d, m->dst_w);
    m->rows = dst->gc->basis.size();
  }
  for (std::size_t j = 0; j < m->cols; ++j) {
    for (const ActionTerm& t : apply_mode(gen, mode, src.basis[j])) {
      if (!dst)
        throw Error(ErrorCode::Internal, "vacuum_engine",
                    "mode action left the graded range");
      auto it = dst->pos.find(t.id);
      if (it == dst->pos.end())
        throw Error(ErrorCode::Internal, "vacuum_engine",
                    "mode action left its weight block");
      m->col[j].push_back(
          SparseEnt{static_cast<std::uint32_t>(it->second), t.c0, t.c1});
    }
  }
  return m;
}

const SparseActionMatrix& action_matrix(int gen, int mode, int d, int w) {
  static std::mutex mu;
  static std::unordered_map<std::uint64_t, std::unique_ptr<SparseActionMatrix>>
      cache;
  const std::uint64_t key = matrix_key(gen, mode, d, w);
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto built = build_action_matrix(gen, mode, d, w);
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.emplace(key, std::move(built));
  return *it->second;
}

// Operator chain that computes Gram rows: for a row monomial
// x_1(n_1)...x_r(n_r) vac (deepest modes first), the row over the block is
// vac^T M_r ... M_1 where M_t is the action of sigma(x_t)(-n_t) on the block
// reached by the preceding t-1 adjoint operators.
std::vector<const SparseActionMatrix*> row_chain(MonoId u, int d, int w) {
  const std::vector<Factor>& fs = monomial_factors(u);
  const int r = static_cast<int>(fs.size());
  std::vector<int> D(r + 1), W(r + 1);
  D[0] = d;
  W[0] = w;
  for (int t = 0; t < r; ++t) {
    D[t + 1] = D[t] + fs[t].mode;
    W[t + 1] = W[t] + gen_weight(gen_sigma(fs[t].gen));
  }
  if (D[r] != 0 || W[r] != 0)
    throw Error(ErrorCode::Internal, "vacuum_engine",
                "adjoint chain does not terminate at the vacuum");
  std::vector<const SparseActionMatrix*> steps;
  steps.reserve(r);
  for (int t = r - 1; t >= 0; --t)
    steps.push_back(&action_matrix(gen_sigma(fs[t].gen), -fs[t].mode, D[t], W[t]));
  return steps;
}

// ---------------------------------------------------------------------------
// Ring contexts: the same chain evaluated mod p, over Q, or over Q[k].

struct ZpCtx {
  PrimeField f;
  std::uint64_t kred = 0;  // image of the level
  std::unordered_map<const SparseActionMatrix*,
                     std::vector<std::vector<std::pair<std::uint32_t,
                                                       std::uint64_t>>>>
      cache;

  const std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>>&
  reduced(const SparseActionMatrix& m) {
    auto it = cache.find(&m);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> red(
        m.cols);
    for (std::size_t j = 0; j < m.cols; ++j) {
      red[j].reserve(m.col[j].size());
      for (const SparseEnt& e : m.col[j]) {
        const std::uint64_t a =
            e.c0 >= 0 ? static_cast<std::uint64_t>(e.c0)
                      : f.p - static_cast<std::uint64_t>(-e.c0);
        const std::uint64_t b =
            e.c1 >= 0 ? static_cast<std::uint64_t>(e.c1)
                      : f.p - static_cast<std::uint64_t>(-e.c1);
        const std::uint64_t c = f.add(a % f.p, f.mul(b % f.p, kred));
        if (c) red[j].emplace_back(e.row, c);
      }
    }
    return cache.emplace(&m, std::move(red)).first->second;
  }
};

std::vector<std::uint64_t> zp_gram_row(ZpCtx& ctx, MonoId u, int d, int w) {
  std::vector<std::uint64_t> vec{1};
  for (const SparseActionMatrix* m : row_chain(u, d, w)) {
    const auto& red = ctx.reduced(*m);
    std::vector<std::uint64_t> nv(m->cols, 0);
    for (std::size_t j = 0; j < m->cols; ++j) {
      std::uint64_t s = 0;
      for (const auto& [row, c] : red[j])
        if (vec[row]) s = ctx.f.add(s, ctx.f.mul(vec[row], c));
      nv[j] = s;
    }
    vec = std::move(nv);
  }
  return vec;
}

ModMatrix zp_gram(ZpCtx& ctx, int d, int w) {
  const GradedComponent& blk = enumerate_basis(d, w);
  const std::size_t s = blk.basis.size();
  ModMatrix g(s, s, ctx.f);
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<std::uint64_t> row = zp_gram_row(ctx, blk.basis[i], d, w);
    for (std::size_t j = 0; j < s; ++j) g.at(i, j) = row[j];
  }
  return g;
}

struct RatCtx {
  Rat k;
  std::unordered_map<const SparseActionMatrix*,
                     std::vector<std::vector<std::pair<std::uint32_t, Rat>>>>
      cache;

  explicit RatCtx(const Rat& level) : k(level) {}

  const std::vector<std::vector<std::pair<std::uint32_t, Rat>>>& reduced(
      const SparseActionMatrix& m) {
    auto it = cache.find(&m);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<std::pair<std::uint32_t, Rat>>> red(m.cols);
    for (std::size_t j = 0; j < m.cols; ++j) {
      red[j].reserve(m.col[j].size());
      for (const SparseEnt& e : m.col[j]) {
        Rat c = Rat(static_cast<long>(e.c0));
        if (e.c1 != 0) c += k * static_cast<long>(e.c1);
        if (c != 0) red[j].emplace_back(e.row, std::move(c));
      }
    }
    return cache.emplace(&m, std::move(red)).first->second;
  }
};

std::vector<Rat> rat_gram_row(RatCtx& ctx, MonoId u, int d, int w) {
  std::vector<Rat> vec{Rat(1)};
  for (const SparseActionMatrix* m : row_chain(u, d, w)) {
    const auto& red = ctx.reduced(*m);
    std::vector<Rat> nv(m->cols, Rat(0));
    for (std::size_t j = 0; j < m->cols; ++j)
      for (const auto& [row, c] : red[j])
        if (vec[row] != 0) nv[j] += vec[row] * c;
    vec = std::move(nv);
  }
  return vec;
}

std::vector<std::vector<Rat>> rat_gram(RatCtx& ctx, int d, int w) {
  const GradedComponent& blk = enumerate_basis(d, w);
  const std::size_t s = blk.basis.size();
  std::vector<std::vector<Rat>> g(s);
  for (std::size_t i = 0; i < s; ++i)
    g[i] = rat_gram_row(ctx, blk.basis[i], d, w);
  return g;
}

// Dense univariate polynomials over Q, ascending powers, no trailing zeros.
using PolyQ = std::vector<Rat>;

void poly_norm(PolyQ& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

bool poly_zero(const PolyQ& p) { return p.empty(); }

PolyQ poly_mul(const PolyQ& a, const PolyQ& b) {
  if (a.empty() || b.empty()) return {};
  PolyQ r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_norm(r);
  return r;
}

PolyQ poly_sub(const PolyQ& a, const PolyQ& b) {
  PolyQ r = a;
  if (r.size() < b.size()) r.resize(b.size(), Rat(0));
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  poly_norm(r);
  return r;
}

PolyQ poly_divexact(const PolyQ& num, const PolyQ& den) {
  if (den.empty())
    throw Error(ErrorCode::Internal, "vacuum_engine",
                "polynomial division by zero");
  if (num.empty()) return {};
  if (num.size() < den.size())
    throw Error(ErrorCode::Internal, "vacuum_engine",
                "inexact polynomial division");
  PolyQ work = num;
  PolyQ q(num.size() - den.size() + 1, Rat(0));
  for (std::size_t i = q.size(); i-- > 0;) {
    Rat c = work[den.size() - 1 + i] / den.back();
    q[i] = c;
    if (c != 0)
      for (std::size_t j = 0; j < den.size(); ++j)
        work[i + j] -= c * den[j];
  }
  for (const Rat& r : work)
    if (r != 0)
      throw Error(ErrorCode::Internal, "vacuum_engine",
                  "inexact polynomial division");
  return q;
}

std::vector<std::vector<PolyQ>> poly_gram(int d, int w) {
  const GradedComponent& blk = enumerate_basis(d, w);
  const std::size_t s = blk.basis.size();
  std::vector<std::vector<PolyQ>> g(s, std::vector<PolyQ>(s));
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<PolyQ> vec{PolyQ{Rat(1)}};
    for (const SparseActionMatrix* m : row_chain(blk.basis[i], d, w)) {
      std::vector<PolyQ> nv(m->cols);
      for (std::size_t j = 0; j < m->cols; ++j) {
        for (const SparseEnt& e : m->col[j]) {
          const PolyQ& src = vec[e.row];
          if (src.empty()) continue;
          PolyQ& dst = nv[j];
          const std::size_t need = src.size() + (e.c1 != 0 ? 1 : 0);
          if (dst.size() < need) dst.resize(need, Rat(0));
          for (std::size_t t = 0; t < src.size(); ++t) {
            if (e.c0 != 0) dst[t] += src[t] * static_cast<long>(e.c0);
            if (e.c1 != 0) dst[t + 1] += src[t] * static_cast<long>(e.c1);
          }
        }
      }
      for (PolyQ& p : nv) poly_norm(p);
      vec = std::move(nv);
    }
    for (std::size_t j = 0; j < s; ++j) g[i][j] = vec[j];
  }
  return g;
}

// ---------------------------------------------------------------------------
// Exact linear algebra helpers.

std::vector<std::vector<Int>> scale_rows_to_int(
    const std::vector<std::vector<Rat>>& a) {
  std::vector<std::vector<Int>> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Int l(1);
    for (const Rat& r : a[i])
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den().get_mpz_t());
    out[i].resize(a[i].size());
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      Rat scaled = a[i][j] * Rat(l);
      out[i][j] = scaled.get_num();  // canonical, denominator 1
    }
  }
  return out;
}

// One-step fraction-free (Bareiss) elimination; exact, division-free of
// rational arithmetic.
std::size_t bareiss_rank(std::vector<std::vector<Int>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  Int prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Int t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(t);
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

std::size_t rat_rank(const std::vector<std::vector<Rat>>& a) {
  return bareiss_rank(scale_rows_to_int(a));
}

// Right-kernel basis over Q via Gauss-Jordan, free variables in ascending
// column order.
std::vector<std::vector<Rat>> rat_kernel(std::vector<std::vector<Rat>> a,
                                         std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rat piv = a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rat m = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= m * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::set<std::size_t> pivots(pivot_col.begin(), pivot_col.end());
  std::vector<std::vector<Rat>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (pivots.count(f)) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t poly_bareiss_rank(std::vector<std::vector<PolyQ>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  PolyQ prev{Rat(1)};
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && poly_zero(a[p][c])) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        a[i][j] = poly_divexact(
            poly_sub(poly_mul(a[r][c], a[i][j]), poly_mul(a[i][c], a[r][j])),
            prev);
      a[i][c].clear();
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

// Scale a rational vector to a primitive integer vector whose first nonzero
// entry is positive.
std::vector<Int> primitive_int(const std::vector<Rat>& v) {
  Int l(1);
  for (const Rat& r : v)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den().get_mpz_t());
  std::vector<Int> out(v.size());
  Int g(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat scaled = v[i] * Rat(l);
    out[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  int sign = 0;
  for (const Int& z : out) {
    if (z != 0) {
      sign = sgn(z);
      break;
    }
  }
  if (g != 0)
    for (Int& z : out) {
      mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
      if (sign < 0) z = -z;
    }
  return out;
}

void parallel_over(int nthreads, std::size_t n,
                   const std::function<void(std::size_t)>& fn) {
  if (nthreads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const int m = static_cast<int>(
      std::min(static_cast<std::size_t>(nthreads), n));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errs(m);
  std::vector<std::thread> ths;
  ths.reserve(m);
  for (int t = 0; t < m; ++t) {
    ths.emplace_back([&, t] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          errs[t] = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : ths) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------------------
// Rank engine for one rational level. Degrees are processed in order; the
// radical span (exactly verified submodule vectors) accumulates across
// degrees and supplies the upper half of the rank sandwich.

class Engine {
 public:
  Engine(const Rat& k, int cap, int threads)
      : k_(k), cap_(cap), threads_(threads) {
    prime_index_ = 0;
    for (;;) {
      f0_ = PrimeField{nth_prime62(prime_index_)};
      if (f0_.reduce_rat(k_, kred0_)) break;
      ++prime_index_;
    }
    dims_.assign(cap_ + 1, -1);
    sing_.resize(cap_ + 1);
  }

  int cap() const { return cap_; }

  void ensure(int d) {
    if (d > cap_)
      throw Error(ErrorCode::Internal, "vacuum_engine",
                  "degree beyond engine capacity");
    for (int dd = done_ + 1; dd <= d; ++dd) process(dd);
    done_ = std::max(done_, d);
  }

  int dim(int d) {
    ensure(d);
    return dims_[d];
  }

  const std::vector<SingularVector>& singular(int d) {
    ensure(d);
    return sing_[d];
  }

 private:
  // Radical span blocks hold mod-p reductions of exact integer radical
  // vectors. Reduction commutes with the (integer, level-free) lowering
  // operators, so every vector in the propagated span reduces from an exact
  // radical vector and mod-p dimension bounds the exact radical from below.
  struct BlockSpan {
    std::unique_ptr<IncrementalEchelon> ech;
    std::vector<std::vector<std::uint64_t>> vecs;
    std::size_t raised = 0;  // vecs whose e(-1) image was pushed up a degree
  };

  int block_size(int d, int w) {
    return static_cast<int>(enumerate_basis(d, w).basis.size());
  }

  int exact_rank(int d, int w) {
    RatCtx ctx(k_);
    return static_cast<int>(rat_rank(rat_gram(ctx, d, w)));
  }

  int modp_rank(unsigned prime_index, int d, int w) {
    PrimeField f{nth_prime62(prime_index)};
    std::uint64_t kr = 0;
    while (!f.reduce_rat(k_, kr)) f = PrimeField{nth_prime62(++prime_index)};
    ZpCtx ctx{f, kr, {}};
    ModMatrix g = zp_gram(ctx, d, w);
    return static_cast<int>(g.rank());
  }

  // Stacked matrix of the raising conditions e(0), f(1) on block (d, w).
  int stacked_nullity_p(int d, int w) {
    const SparseActionMatrix& me = action_matrix(GenE, 0, d, w);
    const SparseActionMatrix& mf = action_matrix(GenF, 1, d, w);
    ZpCtx ctx{f0_, kred0_, {}};
    const auto& re = ctx.reduced(me);
    const auto& rf = ctx.reduced(mf);
    ModMatrix m(me.rows + mf.rows, me.cols, f0_);
    for (std::size_t j = 0; j < me.cols; ++j) {
      for (const auto& [row, c] : re[j]) m.at(row, j) = c;
      for (const auto& [row, c] : rf[j]) m.at(me.rows + row, j) = c;
    }
    return static_cast<int>(me.cols - m.rank());
  }

  std::vector<std::vector<Rat>> stacked_exact(int d, int w) {
    const SparseActionMatrix& me = action_matrix(GenE, 0, d, w);
    const SparseActionMatrix& mf = action_matrix(GenF, 1, d, w);
    std::vector<std::vector<Rat>> m(me.rows + mf.rows,
                                    std::vector<Rat>(me.cols, Rat(0)));
    for (std::size_t j = 0; j < me.cols; ++j) {
      for (const SparseEnt& e : me.col[j])
        m[e.row][j] = Rat(static_cast<long>(e.c0)) +
                      k_ * static_cast<long>(e.c1);
      for (const SparseEnt& e : mf.col[j])
        m[me.rows + e.row][j] = Rat(static_cast<long>(e.c0)) +
                                k_ * static_cast<long>(e.c1);
    }
    return m;
  }

  void verify_singular(int d, int w, const std::vector<Int>& v) {
    for (const auto* m : {&action_matrix(GenE, 0, d, w),
                          &action_matrix(GenF, 1, d, w)}) {
      std::vector<Rat> img(m->rows, Rat(0));
      for (std::size_t j = 0; j < m->cols; ++j) {
        if (v[j] == 0) continue;
        for (const SparseEnt& e : m->col[j])
          img[e.row] += Rat(v[j]) * (Rat(static_cast<long>(e.c0)) +
                                     k_ * static_cast<long>(e.c1));
      }
      for (const Rat& r : img)
        if (r != 0)
          throw Error(ErrorCode::Internal, "vacuum_engine",
                      "kernel vector failed exact annihilation check");
    }
  }

  int span_dim(int d, int w) const {
    auto it = span_.find({d, w});
    return it == span_.end() ? 0 : static_cast<int>(it->second.ech->dim());
  }

  int known_rank(int d, int w) const {  // -1 if not yet computed
    auto it = rank_.find({d, std::abs(w)});
    if (it != rank_.end()) return it->second;
    auto ip = rankp_.find({d, std::abs(w)});
    return ip != rankp_.end() ? ip->second : -1;
  }

  // Insert a mod-p radical vector into the span of block (d, w) if it is
  // independent there (mod-p independence certifies exact independence of
  // the underlying exact radical vectors).  The span dimension can never
  // exceed s minus any rank lower bound, so once it gets there further
  // inserts are rejected without paying for the reduction.
  bool span_insert(int d, int w, const std::vector<std::uint64_t>& v) {
    const int s = block_size(d, w);
    auto& bs = span_[{d, w}];
    if (!bs.ech) bs.ech = std::make_unique<IncrementalEchelon>(s, f0_);
    const int kr = known_rank(d, w);
    if (kr >= 0 && static_cast<int>(bs.ech->dim()) >= s - kr) return false;
    if (!bs.ech->insert(std::vector<std::uint64_t>(v))) return false;
    bs.vecs.push_back(v);
    return true;
  }

  // Mod-p image under a level-free lowering operator; empty means zero.
  std::vector<std::uint64_t> lowering_image(int gen, int mode, int d0, int w0,
                                            const std::vector<std::uint64_t>& v) {
    const SparseActionMatrix& m = action_matrix(gen, mode, d0, w0);
    if (m.rows == 0) return {};
    std::vector<std::uint64_t> img(m.rows, 0);
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (v[j] == 0) continue;
      for (const SparseEnt& e : m.col[j]) {
        if (e.c1 != 0)
          throw Error(ErrorCode::Internal, "vacuum_engine",
                      "lowering operator produced a level term");
        const std::uint64_t c = e.c0 >= 0
            ? static_cast<std::uint64_t>(e.c0) % f0_.p
            : f0_.neg(static_cast<std::uint64_t>(-e.c0) % f0_.p);
        img[e.row] = f0_.add(img[e.row], f0_.mul(v[j], c));
      }
    }
    for (const std::uint64_t x : img)
      if (x != 0) return img;
    return {};
  }

  // Insert a vector and close under f(0), which stays within degree d.
  // e(-1) images are deferred until the next degree is processed.
  void span_insert_closed(int d, int w, std::vector<std::uint64_t> v) {
    for (int w0 = w; !v.empty() && span_insert(d, w0, v); w0 -= 2)
      v = lowering_image(GenF, 0, d, w0, v);
  }

  // Push the e(-1) images of every not-yet-raised span vector of degree
  // d - 1 into degree d, then close under f(0). Together with the eager
  // f(0) closure this keeps spans complete through the processed degree:
  // f(0) and e(-1) generate the lowering half of the algebra.
  void advance_span(int d) {
    for (auto& [dw, bs] : span_) {
      if (dw.first != d - 1) continue;
      for (; bs.raised < bs.vecs.size(); ++bs.raised) {
        std::vector<std::uint64_t> img =
            lowering_image(GenE, -1, dw.first, dw.second, bs.vecs[bs.raised]);
        if (!img.empty()) span_insert_closed(d, dw.second + 2, std::move(img));
      }
    }
  }

  // A singular vector of degree d and weight w heads a highest-weight
  // module whose Sugawara conformal weight w(w+2)/(4(k+2)) must equal d.
  // The constraint is vacuous only at the critical level.
  bool weight_admissible(int d, int w) const {
    if (k_ == -2) return true;
    return Rat(4 * d) * (k_ + 2) == Rat(static_cast<long>(w) * (w + 2));
  }

  void process(int d) {
    std::vector<int> ws;
    for (int w = 0; w <= 2 * d; w += 2)
      if (block_size(d, w) > 0) ws.push_back(w);

    // Phase A: per-block ranks. Small blocks are eliminated exactly; large
    // blocks get the certified modular lower bound.
    std::vector<std::pair<int, bool>> results(ws.size());  // (rank, exact)
    parallel_over(threads_, ws.size(), [&](std::size_t i) {
      const int w = ws[i];
      const int s = block_size(d, w);
      if (s <= kExactBlockLimit)
        results[i] = {exact_rank(d, w), true};
      else
        results[i] = {modp_rank(prime_index_, d, w), false};
    });
    for (std::size_t i = 0; i < ws.size(); ++i) {
      if (results[i].second)
        rank_[{d, ws[i]}] = results[i].first;
      else
        rankp_[{d, ws[i]}] = results[i].first;
    }

    // Raise the spans of degree d - 1 only now, so the rank bounds above
    // can cap the echelon work in saturated blocks.
    if (d >= 1) advance_span(d);

    // Phase B: singular-vector scan over every block of degree d, gated by
    // the Sugawara weight constraint and by the rank deficiency of |w|
    // (ranks at -w equal ranks at w under the Chevalley involution, which
    // preserves the form up to signs).
    for (int w = 2 * d; w >= -2 * d; w -= 2) {
      const int s = block_size(d, w);
      if (s == 0 || d == 0) continue;
      if (!weight_admissible(d, w)) continue;
      const int wa = std::abs(w);
      const auto exact_it = rank_.find({d, wa});
      const int known = exact_it != rank_.end() ? exact_it->second
                                                : rankp_.at({d, wa});
      if (s - known == 0) continue;  // no radical, hence no singular vectors
      if (stacked_nullity_p(d, w) == 0) continue;
      const auto kern = rat_kernel(stacked_exact(d, w), s);
      for (const auto& kv : kern) {
        std::vector<Int> prim = primitive_int(kv);
        verify_singular(d, w, prim);
        SingularVector sv;
        sv.degree = d;
        sv.weight = w;
        sv.coords.reserve(prim.size());
        std::vector<std::uint64_t> red(prim.size());
        for (std::size_t i = 0; i < prim.size(); ++i) {
          sv.coords.emplace_back(Rat(prim[i]));
          red[i] = f0_.reduce_int(prim[i]);
        }
        sing_[d].push_back(std::move(sv));
        span_insert_closed(d, w, std::move(red));
      }
    }

    // Phase C: certify the remaining (large) blocks. The exactly verified
    // span gives rank <= s - n_w; the modular rank gives rank >= r_p.
    for (const int w : ws) {
      if (rank_.count({d, w})) continue;
      const int s = block_size(d, w);
      const int rp = rankp_.at({d, w});
      const int nw = std::max(span_dim(d, w), span_dim(d, -w));
      if (rp + nw > s)
        throw Error(ErrorCode::Internal, "vacuum_engine",
                    "rank certificates are inconsistent");
      if (rp + nw == s) {
        rank_[{d, w}] = rp;
        continue;
      }
      const int r2 = std::max(rp, modp_rank(prime_index_ + 1, d, w));
      if (r2 + nw == s) {
        rank_[{d, w}] = r2;
        continue;
      }
      rank_[{d, w}] = exact_rank(d, w);  // exact fallback, possibly slow
    }

    int total = 0;
    for (const int w : ws) total += (w == 0 ? 1 : 2) * rank_.at({d, w});
    dims_[d] = total;
  }

  Rat k_;
  int cap_, threads_;
  int done_ = -1;
  unsigned prime_index_ = 0;
  PrimeField f0_{2};
  std::uint64_t kred0_ = 0;
  std::vector<int> dims_;
  std::vector<std::vector<SingularVector>> sing_;
  std::map<std::pair<int, int>, int> rank_;   // certified, w >= 0
  std::map<std::pair<int, int>, int> rankp_;  // prime-0 lower bounds, w >= 0
  std::map<std::pair<int, int>, BlockSpan> span_;
};

// One engine per level; rebuilt when a deeper truncation is requested.
std::mutex g_engine_mu;
std::map<std::string, std::unique_ptr<Engine>>& engine_map() {
  static std::map<std::string, std::unique_ptr<Engine>> m;
  return m;
}

Engine& engine_for(const Rat& k, int need) {
  auto& slot = engine_map()[rat_to_string(k)];
  if (!slot || slot->cap() < need)
    slot = std::make_unique<Engine>(k, std::max(need, 12),
                                    engine_thread_count());
  return *slot;
}

// ---------------------------------------------------------------------------
// Generic level: ranks over Q(k). A full-rank specialization certifies full
// generic rank (specializing can only lose rank); otherwise two independent
// evaluations must agree, with symbolic elimination as the tie-breaker.

int generic_block_rank(int d, int w) {
  const int s = static_cast<int>(enumerate_basis(d, w).basis.size());
  if (s == 0) return 0;
  PrimeField f0{nth_prime62(0)};
  ZpCtx c0{f0, static_cast<std::uint64_t>(kGenericEval0) % f0.p, {}};
  const int r0 = static_cast<int>(zp_gram(c0, d, w).rank());
  if (r0 == s) return s;  // certificate: generic rank cannot drop below r0
  PrimeField f1{nth_prime62(1)};
  ZpCtx c1{f1, static_cast<std::uint64_t>(kGenericEval1) % f1.p, {}};
  const int r1 = static_cast<int>(zp_gram(c1, d, w).rank());
  if (r1 == r0) return r0;
  return static_cast<int>(poly_bareiss_rank(poly_gram(d, w)));
}

int generic_graded_dim(int d) {
  int total = 0;
  for (int w = 0; w <= 2 * d; w += 2) {
    const int r = generic_block_rank(d, w);
    total += (w == 0 ? 1 : 2) * r;
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public interface.

int engine_thread_count() {
  const char* env = std::getenv("QLK_THREADS");
  if (!env) return 1;
  const long n = std::strtol(env, nullptr, 10);
  if (n < 1) return 1;
  return static_cast<int>(std::min<long>(n, 64));
}

QCharacter universal_character(int N, const Rat& alpha) {
  if (N < 0)
    throw Error(ErrorCode::TruncationError, "vacuum_engine",
                "negative truncation order");
  const std::vector<Int> dims = universal_graded_dims(N);
  QCharacter chi;
  chi.alpha = alpha;
  chi.c.reserve(N + 1);
  for (const Int& z : dims) chi.c.emplace_back(Rat(z));
  return chi;
}

std::vector<std::vector<Rat>> contravariant_gram(const Rat& k, int d, int w) {
  if (d < 0)
    throw Error(ErrorCode::TruncationError, "vacuum_engine",
                "negative degree");
  RatCtx ctx(k);
  return rat_gram(ctx, d, w);
}

std::vector<std::vector<std::vector<Rat>>> contravariant_gram_generic(int d,
                                                                      int w) {
  if (d < 0)
    throw Error(ErrorCode::TruncationError, "vacuum_engine",
                "negative degree");
  return poly_gram(d, w);
}

int graded_dim_simple(const KSpec& k, int d) {
  if (d < 0)
    throw Error(ErrorCode::TruncationError, "vacuum_engine",
                "negative degree");
  if (k.generic) return generic_graded_dim(d);
  std::lock_guard lock(g_engine_mu);
  return engine_for(k.value, d).dim(d);
}

std::vector<SingularVector> singular_vectors(const KSpec& k, int d) {
  if (d < 0)
    throw Error(ErrorCode::TruncationError, "vacuum_engine",
                "negative degree");
  if (k.generic) {
    // Full generic Gram rank means an empty radical, hence no singular
    // vectors over Q(k). This certificate holds throughout the supported
    // range: the form's determinant is a nonzero polynomial in k.
    const Int expect = universal_graded_dims(d)[d];
    if (Int(generic_graded_dim(d)) != expect)
      throw Error(ErrorCode::Internal, "vacuum_engine",
                  "generic emptiness certificate failed");
    return {};
  }
  std::lock_guard lock(g_engine_mu);
  return engine_for(k.value, d).singular(d);
}

QCharacter simple_character(const Rat& k, int N) {
  if (N < 0)
    throw Error(ErrorCode::TruncationError, "vacuum_engine",
                "negative truncation order");
  const SimpleLieAlgebraData a1 = build('A', 1);
  const Rat c = sugawara_central_charge(a1, k);  // CriticalLevel at k = -2
  QCharacter chi;
  chi.alpha = -c / 24;
  chi.c.reserve(N + 1);
  {
    std::lock_guard lock(g_engine_mu);
    Engine& eng = engine_for(k, N);
    for (int d = 0; d <= N; ++d) chi.c.emplace_back(Rat(eng.dim(d)));
  }
  return chi;
}

QCharacter integrable_character_theta(int k, int N) {
  if (k < 0)
    throw Error(ErrorCode::InvalidType, "vacuum_engine",
                "theta character requires an integrable (nonnegative integer) level");
  if (N < 0)
    throw Error(ErrorCode::TruncationError, "vacuum_engine",
                "negative truncation order");
  const long t = k + 2;
  std::vector<Rat> num(N + 1, Rat(0));
  for (long m = -(N + 1); m <= N + 1; ++m) {
    const long expo = t * m * m + m;
    if (expo < 0 || expo > N) continue;
    num[expo] += rat(2 * t * m + 1, 1);
  }
  const std::vector<Int> u = universal_graded_dims(N);
  QCharacter chi;
  chi.alpha = -rat(3 * k, k + 2) / 24;
  chi.c.assign(N + 1, Rat(0));
  for (int dd = 0; dd <= N; ++dd)
    for (int j = 0; j <= dd; ++j)
      if (num[j] != 0) chi.c[dd] += num[j] * Rat(u[dd - j]);
  return chi;
}

}  // namespace qlk
