#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qlk/level_class.hpp"

using namespace qlk;

TEST_CASE("admissibility: spec instances") {
  auto a1 = build(Series::A, 1);
  auto r = is_admissible(a1, rat(-1, 2));
  CHECK(r.admissible);
  CHECK(*r.p == 3);
  CHECK(*r.q == 2);

  CHECK(!is_admissible(a1, rat(-1)).admissible);  // p = 1 < 2
  CHECK(!is_admissible(a1, rat(-2)).admissible);  // critical
  CHECK(!is_admissible(a1, rat(-3)).admissible);  // below critical

  auto f4 = build(Series::F, 4);
  auto rf = is_admissible(f4, rat(-5, 2));
  CHECK(rf.admissible);  // 13/2, gcd(2,2)=2 so threshold h=12, 13 >= 12
  CHECK(*rf.p == 13);
  CHECK(*rf.q == 2);
  CHECK(!is_admissible(f4, rat(-7, 2)).admissible);  // 11/2, 11 < 12
}

TEST_CASE("integrable implies admissible with q=1") {
  for (auto [s, n] : std::vector<std::pair<Series, int>>{
           {Series::A, 1}, {Series::B, 2}, {Series::G, 2}, {Series::E, 8}}) {
    auto g = build(s, n);
    for (int k = 0; k <= 5; ++k) {
      CHECK(is_integrable(g, rat(k)));
      auto r = is_admissible(g, rat(k));
      CHECK(r.admissible);
      CHECK(*r.q == 1);
      CHECK(*r.p == k + dual_coxeter_number(g));
    }
    CHECK(!is_integrable(g, rat(-1)));
    CHECK(!is_integrable(g, rat(1, 2)));
  }
}

TEST_CASE("admissibility agrees with exhaustive-scan oracle under fuzz") {
  // Oracle: scan all pairs (p, q) with q up to den(k + h_check) and check
  // the criterion from scratch, independent of the canonical-form shortcut.
  auto oracle = [](const SimpleLieAlgebraData& g, const Rat& k) {
    Rat shifted = k + dual_coxeter_number(g);
    long maxq = shifted.get_den().get_si();
    int h = coxeter_number(g), hc = dual_coxeter_number(g);
    int rc = lacing_number(g);
    for (long q = 1; q <= 2 * maxq; ++q) {
      Rat pq = shifted * q;
      if (!is_integer(pq)) continue;
      if (pq <= 0) continue;
      Int p = pq.get_num();
      if (gcd(p, Int(q)) != 1) continue;
      int threshold = (gcd(Int(rc), Int(q)) == 1) ? hc : h;
      if (p >= threshold) return true;
    }
    return false;
  };
  std::vector<SimpleLieAlgebraData> gs;
  for (auto [s, n] : std::vector<std::pair<Series, int>>{
           {Series::A, 1}, {Series::A, 2}, {Series::B, 3}, {Series::C, 2},
           {Series::D, 4}, {Series::F, 4}, {Series::G, 2}})
    gs.push_back(build(s, n));
  // deterministic LCG fuzz
  std::uint64_t state = 88172645463325252ull;
  auto next = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  int checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    long num = static_cast<long>(next() % 61) - 30;
    long den = static_cast<long>(next() % 12) + 1;
    Rat k = rat(num, den);
    const auto& g = gs[next() % gs.size()];
    CHECK(is_admissible(g, k).admissible == oracle(g, k));
    ++checked;
  }
  CHECK(checked == 10000);
}

TEST_CASE("deligne levels") {
  auto a1 = build(Series::A, 1);
  CHECK(deligne_level(a1, 0) == rat(-4, 3));
  auto e8 = build(Series::E, 8);
  CHECK(deligne_level(e8, 0) == rat(-6));

  auto d4 = build(Series::D, 4);
  CHECK(deligne_level(d4, 0) == rat(-2));
  CHECK_THROWS_AS(deligne_level(d4, 2), Error);  // k = 0 excluded
  try {
    deligne_level(d4, 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ExcludedLevel);
  }

  auto b3 = build(Series::B, 3);
  CHECK_THROWS_AS(deligne_level(b3, 0), Error);
  try {
    deligne_level(b3, 0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDeligneSeries);
  }
}

TEST_CASE("deligne n=0 admissibility partition") {
  // Evaluated by the criterion: A1, A2, G2, F4 admissible; D4, E6, E7, E8 not.
  std::vector<std::tuple<Series, int, bool>> expect = {
      {Series::A, 1, true},  {Series::A, 2, true}, {Series::G, 2, true},
      {Series::F, 4, true},  {Series::D, 4, false}, {Series::E, 6, false},
      {Series::E, 7, false}, {Series::E, 8, false}};
  for (auto [s, n, adm] : expect) {
    auto g = build(s, n);
    Rat k = deligne_level(g, 0);
    CAPTURE(series_name(s) + std::to_string(n));
    CHECK(is_admissible(g, k).admissible == adm);
  }
}

TEST_CASE("sugawara central charge") {
  auto a1 = build(Series::A, 1);
  CHECK(sugawara_central_charge(a1, rat(1)) == rat(1));
  CHECK(sugawara_central_charge(a1, rat(-1, 2)) == rat(-1));
  CHECK(sugawara_central_charge(a1, rat(-4, 3)) == rat(-6));
  CHECK_THROWS_AS(sugawara_central_charge(a1, rat(-2)), Error);
  try {
    sugawara_central_charge(a1, rat(-2));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CriticalLevel);
  }
}

TEST_CASE("c4d_to_c2d") {
  CHECK(c4d_to_c2d(rat(0)) == rat(0));
  CHECK(c4d_to_c2d(rat(1)) == rat(-12));
  CHECK(c4d_to_c2d(rat(5, 6)) == rat(-10));
}

TEST_CASE("classify: spec examples") {
  auto a1 = build(Series::A, 1);

  auto r1 = classify(a1, rat(-4, 3));
  CHECK(r1.admissible);
  CHECK(r1.deligne_index.has_value());
  CHECK(*r1.deligne_index == 0);
  CHECK(r1.c_sugawara == rat(-6));
  CHECK(r1.predicted_variety == PredictedVariety::NilpotentCone);

  auto r2 = classify(a1, rat(1));
  CHECK(r2.integrable);
  CHECK(r2.predicted_variety == PredictedVariety::Point);
  CHECK(r2.c_sugawara == rat(1));

  auto e6 = build(Series::E, 6);
  auto r3 = classify(e6, rat(-3));
  CHECK(!r3.admissible);
  CHECK(r3.deligne_index.has_value());
  CHECK(*r3.deligne_index == 0);
  CHECK(r3.predicted_variety == PredictedVariety::MinimalOrbitClosure);

  auto r4 = classify(a1, rat(-2));
  CHECK(r4.critical);
  CHECK(!r4.admissible);
  CHECK(!r4.c_defined);
  CHECK(r4.predicted_variety == PredictedVariety::NilpotentCone);

  auto b3 = build(Series::B, 3);  // h = 6, h_check = 5, lacing 2
  auto r5 = classify(b3, rat(-5, 2));
  // shifted 5/2: q = 2, gcd(2,2) = 2 -> threshold h = 6; p = 5 < 6
  CHECK(!r5.admissible);
  CHECK(r5.predicted_variety == PredictedVariety::Unknown);

  auto r6 = classify(b3, rat(-1, 4));
  // shifted 19/4: q = 4, gcd(2,4) = 2 -> threshold 6; p = 19 >= 6
  CHECK(r6.admissible);
  CHECK(!r6.integrable);
  CHECK(r6.predicted_variety == PredictedVariety::OrbitClosureUnspecified);
}

TEST_CASE("classify invariants over a grid") {
  for (auto [s, n] : std::vector<std::pair<Series, int>>{
           {Series::A, 1}, {Series::A, 3}, {Series::C, 2}, {Series::G, 2}}) {
    auto g = build(s, n);
    for (long num = -20; num <= 20; ++num) {
      for (long den = 1; den <= 4; ++den) {
        Rat k = rat(num, den);
        auto rep = classify(g, k);
        if (rep.admissible) {
          REQUIRE(rep.p.has_value());
          REQUIRE(rep.q.has_value());
          CHECK(gcd(*rep.p, *rep.q) == 1);
          CHECK(Rat(*rep.p) / *rep.q == k + dual_coxeter_number(g));
        }
        if (rep.integrable) {
          CHECK(rep.admissible);
          CHECK(*rep.q == 1);
        }
        CHECK(rep.critical == (k == rat(-dual_coxeter_number(g))));
        if (rep.critical) CHECK(!rep.admissible);
        CHECK(rep.c_defined == !rep.critical);
      }
    }
  }
}
