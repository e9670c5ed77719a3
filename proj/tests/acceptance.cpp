// Acceptance gate: one line per criterion, [PASS]/[FAIL], timed against the
// budget pinned next to each body. Exit status = number of failures.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qlk/assoc_variety.hpp"
#include "qlk/errors.hpp"
#include "qlk/groebner.hpp"
#include "qlk/level_class.hpp"
#include "qlk/modular_mlde.hpp"
#include "qlk/qseries.hpp"
#include "qlk/report.hpp"
#include "qlk/vacuum_engine.hpp"

using namespace qlk;

namespace {

double now_s() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

struct Checker {
  bool ok = true;
  std::vector<std::string> notes;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

int g_failures = 0;

void criterion(int idx, const std::string& label, double budget_s,
               const std::function<void(Checker&)>& body) {
  Checker c;
  const double t0 = now_s();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double dt = now_s() - t0;
  if (budget_s > 0 && dt >= budget_s)
    c.notes.push_back("over budget"), c.ok = false;
  std::string budget = budget_s > 0
      ? " (budget " + std::to_string(static_cast<int>(budget_s)) + "s)"
      : "";
  std::printf("[%s] %d. %-58s %7.2fs%s\n", c.ok ? "PASS" : "FAIL", idx,
              label.c_str(), dt, budget.c_str());
  for (const std::string& n : c.notes) std::printf("        - %s\n", n.c_str());
  if (!c.ok) ++g_failures;
}

bool qs_equal(const QSeries& a, const QSeries& b) {
  return a.alpha == b.alpha && a.c == b.c;
}

int rank_of(std::vector<std::vector<Rat>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[row]);
    for (std::size_t r = row + 1; r < rows; ++r) {
      if (m[r][col] == 0) continue;
      const Rat f = m[r][col] / m[row][col];
      for (std::size_t cc = col; cc < cols; ++cc)
        m[r][cc] -= f * m[row][cc];
    }
    ++row;
    ++rank;
  }
  return rank;
}

std::vector<long long> colored3_counts(int N) {
  std::vector<long long> f(N + 1, 0);
  f[0] = 1;
  for (int part = 1; part <= N; ++part)
    for (int color = 0; color < 3; ++color)
      for (int n = part; n <= N; ++n) f[n] += f[n - part];
  return f;
}

}  // namespace

int main() {
  criterion(1, "Deligne-series partition at n = 0", 1.0, [](Checker& c) {
    const std::pair<char, int> types[] = {{'A', 1}, {'A', 2}, {'G', 2},
                                          {'D', 4}, {'F', 4}, {'E', 6},
                                          {'E', 7}, {'E', 8}};
    const bool expected[] = {true, true, true, false, true,
                             false, false, false};
    for (int i = 0; i < 8; ++i) {
      const auto g = build(types[i].first, types[i].second);
      const LevelReport rep = classify(g, deligne_level(g, 0));
      c.expect(rep.admissible == expected[i],
               series_name(g.series) + std::to_string(g.rank) +
                   " admissibility mismatch");
    }
  });

  criterion(2, "lisse iff integrable at sl2, N = 8", 120.0, [](Checker& c) {
    for (long n : {0L, 1L, 2L}) {
      const VarietyResult v = variety_of_level(rat(n), 8);
      c.expect(v.report.krull_dim == 0,
               "k=" + std::to_string(n) + " not a point");
      c.expect(v.report.lisse, "k=" + std::to_string(n) + " not lisse");
    }
    for (auto k : {rat(-4, 3), rat(-1, 2)}) {
      const VarietyResult v = variety_of_level(k, 8);
      c.expect(v.report.krull_dim == 2,
               "k=" + rat_to_string(k) + " dim != 2");
      c.expect(v.report.in_nilcone,
               "k=" + rat_to_string(k) + " not in nilcone");
    }
  });

  criterion(3, "quasi-lisse iff admissible at sl2", 0, [](Checker& c) {
    const auto g = build('A', 1);
    const Rat levels[] = {rat(-4, 3), rat(-1, 2), rat(-5, 4),
                          rat(0),     rat(1),     rat(2),
                          rat(-5, 3), rat(-3)};
    for (const Rat& k : levels) {
      const bool admissible = is_admissible(g, k).admissible;
      const VarietyResult v = variety_of_level(k, 8);
      c.expect(v.report.in_nilcone == admissible,
               "k=" + rat_to_string(k) + ": in_nilcone=" +
                   (v.report.in_nilcone ? "true" : "false") +
                   " but admissible=" + (admissible ? "true" : "false"));
    }
  });

  criterion(4, "order-2 MLDE for the L1 theta character", 10.0,
            [](Checker& c) {
    const QSeries chi = integrable_character_theta(1, 60);
    const auto fit60 = fit_mlde({chi}, 2);
    c.expect(fit60.has_value(), "no order-2 fit at truncation 60");
    if (!fit60) return;
    c.expect(mlde_apply(*fit60, chi).is_zero(),
             "nonzero residual through q^60");

    const auto fit40 = fit_mlde({qs_truncate(chi, 40)}, 2);
    c.expect(fit40.has_value(), "no order-2 fit at truncation 40");
    if (fit40) {
      bool same = fit40->order == fit60->order;
      for (std::size_t i = 0; same && i < fit60->coeff_forms.size(); ++i)
        same = fit40->coeff_forms[i].weight == fit60->coeff_forms[i].weight &&
               fit40->coeff_forms[i].coords == fit60->coeff_forms[i].coords;
      c.expect(same, "fits at truncations 40 and 60 differ");
    }

    const IndicialInfo info = indicial_roots(*fit60);
    c.expect(info.complete && info.roots.size() == 2, "roots not rational");
    std::vector<Rat> roots = info.roots;
    std::sort(roots.begin(), roots.end());
    c.expect(roots == std::vector<Rat>{rat(-1, 24), rat(5, 24)},
             "roots differ from {-1/24, 5/24}");
    c.expect(roots[0] + roots[1] == rat(1, 6), "root sum differs from 1/6");
  });

  criterion(5, "Deligne A1 end-to-end report, N = 12", 600.0, [](Checker& c) {
    const std::string cmd = std::string(QLK_CLI_PATH) +
                            " report-deligne-a1 --N 12 --max-order 4"
                            " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    c.expect(pipe != nullptr, "cannot launch cli");
    if (!pipe) return;
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    c.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0,
             "cli exited nonzero");
    const Json doc = Json::parse(out, nullptr, false);
    c.expect(!doc.is_discarded(), "output is not JSON");
    if (doc.is_discarded()) return;
    c.expect(doc["verdict"] == "CONSISTENT", "aggregate verdict not CONSISTENT");
    c.expect(doc["variety"]["krull_dim"] == 2, "variety dim != 2");
    c.expect(doc["variety"]["in_nilcone"] == true, "variety not in nilcone");
    c.expect(doc["slodowy"]["dim"] == 0, "slodowy restriction dim != 0");
    c.expect(doc["character"]["alpha"] == "1/4", "alpha != 1/4");
    c.expect(doc["mlde"]["order"].get<int>() <= 4, "mlde order > 4");
    c.expect(doc["mlde"]["residual_zero"] == true, "mlde residual nonzero");
  });

  criterion(6, "oracle equivalences (theta, partitions, Ramanujan)", 0,
            [](Checker& c) {
    for (int k : {1, 2})
      c.expect(qs_equal(simple_character(rat(k), 8),
                        integrable_character_theta(k, 8)),
               "Gram character differs from theta quotient at k=" +
                   std::to_string(k));

    const QCharacter uni = universal_character(20, rat(0));
    const auto counts = colored3_counts(20);
    for (int n = 0; n <= 20; ++n)
      c.expect(uni.c[n] == rat(counts[n]),
               "universal character differs from 3-colored count at q^" +
                   std::to_string(n));

    const int N = 200;
    const QSeries e2 = eisenstein(2, N), e4 = eisenstein(4, N),
                  e6 = eisenstein(6, N);
    c.expect(qs_equal(qs_qdq(e2),
                      qs_scale(rat(1, 12), qs_sub(qs_mul(e2, e2), e4))),
             "q E2' != (E2^2 - E4)/12 through q^200");
    c.expect(qs_equal(qs_qdq(e4),
                      qs_scale(rat(1, 3), qs_sub(qs_mul(e2, e4), e6))),
             "q E4' != (E2 E4 - E6)/3 through q^200");
    c.expect(qs_equal(qs_qdq(e6),
                      qs_scale(rat(1, 2), qs_sub(qs_mul(e2, e6),
                                                 qs_mul(e4, e4)))),
             "q E6' != (E2 E6 - E4^2)/2 through q^200");
  });

  criterion(7, "invariant suites", 900.0, [](Checker& c) {
    // Ad-stability of adjoint closures.
    std::vector<PolyIdeal> ideals;
    ideals.push_back(adjoint_closure(
        {poly_from_terms({{Mono{{2, 0, 0, 0}}, rat(1)}})}));
    ideals.push_back(adjoint_closure({casimir_poly()}));
    ideals.push_back(variety_of_level(rat(-4, 3), 8).ideal);
    for (PolyIdeal& ideal : ideals) {
      const auto& gb = ensure_groebner(ideal);
      for (const Poly& g : ideal.generators)
        for (int v : {0, 1, 2})
          c.expect(reduce_full(poisson_bracket_gen(v, g), gb, ideal.order)
                       .is_zero(),
                   "closure not bracket stable");
    }

    // Gram symmetry w <-> -w and basis-order independence of ranks.
    const Rat k = rat(7, 5);
    for (int d = 1; d <= 4; ++d)
      for (int w = 0; w <= 2 * d; w += 2) {
        const auto plus = contravariant_gram(k, d, w);
        if (plus.empty()) continue;
        const auto minus = contravariant_gram(k, d, -w);
        c.expect(rank_of(plus) == rank_of(minus),
                 "rank asymmetry at (" + std::to_string(d) + "," +
                     std::to_string(w) + ")");
        auto reversed = plus;
        const std::size_t s = plus.size();
        for (std::size_t i = 0; i < s; ++i)
          for (std::size_t j = 0; j < s; ++j)
            reversed[i][j] = plus[s - 1 - i][s - 1 - j];
        c.expect(rank_of(plus) == rank_of(reversed),
                 "rank depends on basis order at (" + std::to_string(d) +
                     "," + std::to_string(w) + ")");
      }

    // Truncation monotonicity of the variety dimension.
    int prev = 3;
    for (int n : {4, 6, 8}) {
      const int dim = variety_of_level(rat(-4, 3), n).report.krull_dim;
      c.expect(dim <= prev, "krull_dim grew with truncation");
      prev = dim;
    }

    // MLDE round trips and the indicial-sum identity n(n-1)/12.
    const std::vector<QSeries> chars = {integrable_character_theta(1, 40),
                                        simple_character(rat(-4, 3), 12)};
    for (const QSeries& chi : chars) {
      const auto fit = minimal_mlde({chi}, 4);
      c.expect(fit.has_value(), "no MLDE of order <= 4");
      if (!fit) continue;
      c.expect(mlde_apply(fit->second, chi).is_zero(),
               "round-trip residual nonzero");
      const IndicialInfo info = indicial_roots(fit->second);
      c.expect(info.complete, "indicial roots not all rational");
      Rat sum = rat(0);
      for (const Rat& r : info.roots) sum += r;
      const int n = fit->second.order;
      c.expect(sum == rat(static_cast<long>(n) * (n - 1), 12),
               "indicial sum differs from n(n-1)/12");
    }
  });

  std::printf("%s: %d %s failed\n",
              g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              g_failures, g_failures == 1 ? "criterion" : "criteria");
  return g_failures;
}
