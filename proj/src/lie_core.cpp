#include "qlk/lie_core.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qlk/rational.hpp"

namespace qlk {

std::string series_name(Series s) { return std::string(1, static_cast<char>(s)); }

namespace {

void check_type(Series s, int rank) {
  bool ok = false;
  switch (s) {
    case Series::A: ok = rank >= 1; break;
    case Series::B: ok = rank >= 2; break;
    case Series::C: ok = rank >= 2; break;
    case Series::D: ok = rank >= 4; break;
    case Series::E: ok = rank >= 6 && rank <= 8; break;
    case Series::F: ok = rank == 4; break;
    case Series::G: ok = rank == 2; break;
  }
  if (!ok)
    throw Error(ErrorCode::InvalidType, "lie_core",
                "no simple type " + series_name(s) + "_" + std::to_string(rank));
}

// cartan[i][j] = <alpha_i, alpha_j-check> = 2(a_i,a_j)/(a_j,a_j).
std::vector<std::vector<int>> cartan_matrix(Series s, int n) {
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto edge = [&](int i, int j) { a[i][j] = a[j][i] = -1; };  // 0-based
  switch (s) {
    case Series::A:
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
      break;
    case Series::B:  // alpha_n short
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
      a[n - 2][n - 1] = -2;
      break;
    case Series::C:  // alpha_n long
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
      a[n - 1][n - 2] = -2;
      break;
    case Series::D:
      for (int i = 0; i + 1 < n - 1; ++i) edge(i, i + 1);
      edge(n - 3, n - 1);
      break;
    case Series::E:  // Bourbaki: chain 1-3-4-5-6(-7-8), node 2 on node 4
      edge(0, 2);
      for (int i = 2; i + 1 < n; ++i) edge(i, i + 1);
      edge(1, 3);
      break;
    case Series::F:  // alpha_1, alpha_2 long
      edge(0, 1);
      edge(1, 2);
      a[1][2] = -2;
      edge(2, 3);
      break;
    case Series::G:  // alpha_1 short, alpha_2 long
      edge(0, 1);
      a[1][0] = -3;
      break;
  }
  return a;
}

// Positive integers d_i with d_i * a[i][j] = d_j * a[j][i], min d_i = 1.
// d_i is proportional to (a_i, a_i), so long roots carry the maximum.
std::vector<int> symmetrize(const std::vector<std::vector<int>>& a) {
  int n = static_cast<int>(a.size());
  std::vector<Rat> d(n, 0);
  d[0] = 1;
  // Dynkin diagrams are trees: propagate along edges until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (a[i][j] == 0 || d[i] == 0 || d[j] != 0) continue;
        // d_j = d_i * a[j][i] / a[i][j]
        d[j] = d[i] * Rat(a[j][i]) / Rat(a[i][j]);
        changed = true;
      }
  }
  Int lcm_den = 1;
  for (auto& x : d) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(),
                            x.get_den().get_mpz_t());
  std::vector<int> out(n);
  Int g = 0;
  for (int i = 0; i < n; ++i) {
    Int v = d[i].get_num() * (lcm_den / d[i].get_den());
    out[i] = static_cast<int>(v.get_si());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  for (auto& v : out) v /= static_cast<int>(g.get_si());
  return out;
}

}  // namespace

SimpleLieAlgebraData build(Series series, int rank) {
  check_type(series, rank);
  SimpleLieAlgebraData g;
  g.series = series;
  g.rank = rank;
  g.cartan = cartan_matrix(series, rank);
  g.symmetrizer = symmetrize(g.cartan);

  // Closure under simple-root addition.  For a root r and simple root a_i,
  // the i-string through r is r - p*a_i ... r + q*a_i with
  // p - q = <r, a_i-check>; r + a_i is a root iff q >= 1.
  auto pairing = [&](const std::vector<int>& r, int i) {
    int s = 0;
    for (int j = 0; j < rank; ++j) s += r[j] * g.cartan[j][i];
    return s;
  };
  std::map<std::vector<int>, bool> seen;
  std::vector<std::vector<int>> level;
  for (int i = 0; i < rank; ++i) {
    std::vector<int> e(rank, 0);
    e[i] = 1;
    seen[e] = true;
    level.push_back(e);
  }
  std::vector<std::vector<int>> all = level;
  while (!level.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& r : level) {
      for (int i = 0; i < rank; ++i) {
        int p = 0;
        std::vector<int> down = r;
        for (;;) {
          down[i] -= 1;
          if (!seen.count(down)) break;
          ++p;
        }
        if (p - pairing(r, i) >= 1) {
          std::vector<int> up = r;
          up[i] += 1;
          if (!seen.count(up)) {
            seen[up] = true;
            next.push_back(up);
            all.push_back(up);
          }
        }
      }
    }
    level = std::move(next);
  }
  std::sort(all.begin(), all.end(),
            [](const std::vector<int>& x, const std::vector<int>& y) {
              int hx = std::accumulate(x.begin(), x.end(), 0);
              int hy = std::accumulate(y.begin(), y.end(), 0);
              if (hx != hy) return hx < hy;
              return x < y;
            });
  g.positive_roots = std::move(all);

  g.marks = g.positive_roots.back();  // unique root of maximal height
  int dmax = *std::max_element(g.symmetrizer.begin(), g.symmetrizer.end());
  g.comarks.resize(rank);
  for (int i = 0; i < rank; ++i) {
    int num = g.marks[i] * g.symmetrizer[i];
    if (num % dmax != 0)
      throw Error(ErrorCode::Internal, "lie_core", "non-integral comark");
    g.comarks[i] = num / dmax;
  }
  return g;
}

SimpleLieAlgebraData build(char series, int rank) {
  switch (series) {
    case 'A': case 'B': case 'C': case 'D': case 'E': case 'F': case 'G':
      return build(static_cast<Series>(series), rank);
    default:
      throw Error(ErrorCode::InvalidType, "lie_core",
                  std::string("unknown series '") + series + "'");
  }
}

int coxeter_number(const SimpleLieAlgebraData& g) {
  return 1 + std::accumulate(g.marks.begin(), g.marks.end(), 0);
}

int dual_coxeter_number(const SimpleLieAlgebraData& g) {
  return 1 + std::accumulate(g.comarks.begin(), g.comarks.end(), 0);
}

int lacing_number(const SimpleLieAlgebraData& g) {
  int lo = *std::min_element(g.symmetrizer.begin(), g.symmetrizer.end());
  int hi = *std::max_element(g.symmetrizer.begin(), g.symmetrizer.end());
  return hi / lo;
}

}  // namespace qlk
