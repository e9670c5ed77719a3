#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <vector>

#include "qlk/errors.hpp"
#include "qlk/vacuum_engine.hpp"

using namespace qlk;

namespace {

// Recompute e(0) v and f(1) v through the public straightening action and
// assert both vanish: an independent check of every returned singular vector.
void assert_singular(const Rat& k, const SingularVector& sv) {
  const auto& blk = enumerate_basis(sv.degree, sv.weight);
  REQUIRE(sv.coords.size() == blk.basis.size());
  for (const auto op : {std::pair{GenE, 0}, std::pair{GenF, 1}}) {
    std::vector<Rat> image;  // indexed by interned id on demand
    std::vector<MonoId> ids;
    auto slot = [&](MonoId id) -> Rat& {
      for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == id) return image[i];
      ids.push_back(id);
      image.emplace_back(0);
      return image.back();
    };
    for (std::size_t j = 0; j < blk.basis.size(); ++j) {
      if (sv.coords[j] == 0) continue;
      for (const ActionTerm& t : apply_mode(op.first, op.second, blk.basis[j]))
        slot(t.id) += sv.coords[j] *
                      (Rat(static_cast<long>(t.c0)) +
                       k * static_cast<long>(t.c1));
    }
    for (const Rat& r : image) CHECK(r == 0);
  }
  // Primitive integer normalization with positive leading entry.
  Int g(0);
  int lead = 0;
  for (const Rat& r : sv.coords) {
    CHECK(is_integer(r));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.get_num().get_mpz_t());
    if (lead == 0 && r != 0) lead = sgn(r);
  }
  CHECK(g == 1);
  CHECK(lead == 1);
}

}  // namespace

TEST_CASE("universal character counts 3-colored partitions") {
  const QCharacter chi = universal_character(3, rat(-1, 8));
  CHECK(chi.alpha == rat(-1, 8));
  CHECK(chi.c == std::vector<Rat>{rat(1), rat(3), rat(9), rat(22)});
}

TEST_CASE("contravariant gram fixtures") {
  CHECK(contravariant_gram(rat(5, 3), 0, 0) ==
        std::vector<std::vector<Rat>>{{rat(1)}});

  for (const Rat k : {rat(0), rat(1), rat(-4, 3), rat(7, 5)}) {
    CHECK(contravariant_gram(k, 1, 2) == std::vector<std::vector<Rat>>{{k}});
    CHECK(contravariant_gram(k, 1, 0) ==
          std::vector<std::vector<Rat>>{{2 * k}});
    CHECK(contravariant_gram(k, 1, -2) == std::vector<std::vector<Rat>>{{k}});
  }

  // (2, 2) over the basis e(-2); e(-1)h(-1).
  const Rat k = rat(1);
  const auto g = contravariant_gram(k, 2, 2);
  REQUIRE(g.size() == 2);
  CHECK(g[0][0] == 2 * k);
  CHECK(g[0][1] == -2 * k);
  CHECK(g[1][0] == -2 * k);
  CHECK(g[1][1] == 2 * k * k);
}

TEST_CASE("gram matrices are symmetric") {
  const Rat k = rat(7, 5);
  for (int d = 0; d <= 4; ++d)
    for (int w = -2 * d; w <= 2 * d; w += 2) {
      const auto g = contravariant_gram(k, d, w);
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) CHECK(g[i][j] == g[j][i]);
    }
}

TEST_CASE("generic gram specializes to exact gram") {
  const Rat k = rat(7, 3);
  for (int d = 0; d <= 3; ++d)
    for (int w = -2 * d; w <= 2 * d; w += 2) {
      const auto gp = contravariant_gram_generic(d, w);
      const auto g = contravariant_gram(k, d, w);
      REQUIRE(gp.size() == g.size());
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
          Rat v(0), pw(1);
          for (const Rat& c : gp[i][j]) {
            CHECK(is_integer(c));  // entries live in Z[k]
            v += c * pw;
            pw *= k;
          }
          CHECK(v == g[i][j]);
        }
    }
}

TEST_CASE("graded dimensions at generic level are full") {
  const std::vector<Int> u = universal_graded_dims(6);
  for (int d = 0; d <= 6; ++d)
    CHECK(Int(graded_dim_simple(KSpec::generic_k(), d)) == u[d]);
}

TEST_CASE("graded dimensions at integrable levels match theta quotients") {
  const QCharacter t1 = integrable_character_theta(1, 5);
  CHECK(t1.c == std::vector<Rat>{rat(1), rat(3), rat(4), rat(7), rat(13),
                                 rat(19)});
  for (int d = 0; d <= 5; ++d)
    CHECK(Rat(graded_dim_simple(KSpec::at(rat(1)), d)) == t1.c[d]);

  const QCharacter t2 = integrable_character_theta(2, 4);
  for (int d = 0; d <= 4; ++d)
    CHECK(Rat(graded_dim_simple(KSpec::at(rat(2)), d)) == t2.c[d]);
}

TEST_CASE("level zero collapses to the trivial module") {
  CHECK(graded_dim_simple(KSpec::at(rat(0)), 0) == 1);
  CHECK(graded_dim_simple(KSpec::at(rat(0)), 1) == 0);
  CHECK(graded_dim_simple(KSpec::at(rat(0)), 2) == 0);
  CHECK(graded_dim_simple(KSpec::at(rat(0)), 3) == 0);
}

TEST_CASE("critical level dimensions need no central charge") {
  // k = -2: degree-1 norms are k, 2k, k, all nonzero.
  CHECK(graded_dim_simple(KSpec::at(rat(-2)), 1) == 3);
}

TEST_CASE("singular vector fixtures") {
  // k = 0: e(-1) vac at degree 1.
  const auto s0 = singular_vectors(KSpec::at(rat(0)), 1);
  REQUIRE(s0.size() == 1);
  CHECK(s0[0].degree == 1);
  CHECK(s0[0].weight == 2);
  CHECK(s0[0].coords == std::vector<Rat>{rat(1)});
  assert_singular(rat(0), s0[0]);

  // k = 1: e(-1)^2 vac at degree 2, nothing at degree 1.
  CHECK(singular_vectors(KSpec::at(rat(1)), 1).empty());
  const auto s1 = singular_vectors(KSpec::at(rat(1)), 2);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0].degree == 2);
  CHECK(s1[0].weight == 4);
  CHECK(s1[0].coords == std::vector<Rat>{rat(1)});
  assert_singular(rat(1), s1[0]);

  // Generic level: no singular vectors in the scanned range.
  for (int d = 0; d <= 6; ++d)
    CHECK(singular_vectors(KSpec::generic_k(), d).empty());
}

TEST_CASE("admissible non-integer levels") {
  // k = -4/3 = -2 + 2/3: first singular vector at degree 3, weight 2.
  for (int d = 0; d <= 2; ++d)
    CHECK(singular_vectors(KSpec::at(rat(-4, 3)), d).empty());
  const auto s = singular_vectors(KSpec::at(rat(-4, 3)), 3);
  REQUIRE(s.size() == 1);
  CHECK(s[0].degree == 3);
  CHECK(s[0].weight == 2);
  assert_singular(rat(-4, 3), s[0]);

  // k = -1/2 = -2 + 3/2: first singular vector at degree 4, weight 4.
  for (int d = 0; d <= 3; ++d)
    CHECK(singular_vectors(KSpec::at(rat(-1, 2)), d).empty());
  const auto s2 = singular_vectors(KSpec::at(rat(-1, 2)), 4);
  REQUIRE(s2.size() == 1);
  CHECK(s2[0].degree == 4);
  CHECK(s2[0].weight == 4);
  assert_singular(rat(-1, 2), s2[0]);
}

TEST_CASE("simple graded dimension drops below universal after a singular vector") {
  // k = 1 at degree 2: ranks 0 (w = +-4), 1 (w = +-2), 2 (w = 0).
  CHECK(graded_dim_simple(KSpec::at(rat(1)), 2) == 4);
  const std::vector<Int> u = universal_graded_dims(3);
  CHECK(Int(graded_dim_simple(KSpec::at(rat(-4, 3)), 2)) == u[2]);
  CHECK(Int(graded_dim_simple(KSpec::at(rat(-4, 3)), 3)) < u[3]);
}

TEST_CASE("simple character agrees with the theta quotient") {
  const QCharacter chi = simple_character(rat(1), 6);
  const QCharacter theta = integrable_character_theta(1, 6);
  CHECK(chi.alpha == rat(-1, 24));
  CHECK(chi.alpha == theta.alpha);
  CHECK(chi.c == theta.c);

  std::vector<Rat> trivial(6, rat(0));
  trivial[0] = rat(1);
  const QCharacter chi0 = simple_character(rat(0), 5);
  CHECK(chi0.alpha == 0);
  CHECK(chi0.c == trivial);
}

TEST_CASE("critical level refuses a character") {
  CHECK_THROWS_AS(simple_character(rat(-2), 3), Error);
  try {
    simple_character(rat(-2), 3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CriticalLevel);
  }
}

TEST_CASE("theta quotient input validation") {
  CHECK_THROWS_AS(integrable_character_theta(-1, 4), Error);
}

TEST_CASE("thread count parsing") {
  unsetenv("QLK_THREADS");
  CHECK(engine_thread_count() == 1);
  setenv("QLK_THREADS", "4", 1);
  CHECK(engine_thread_count() == 4);
  setenv("QLK_THREADS", "0", 1);
  CHECK(engine_thread_count() == 1);
  unsetenv("QLK_THREADS");
}

TEST_CASE("parallel evaluation reproduces serial results") {
  setenv("QLK_THREADS", "3", 1);
  const QCharacter theta = integrable_character_theta(3, 4);
  for (int d = 0; d <= 4; ++d)
    CHECK(Rat(graded_dim_simple(KSpec::at(rat(3)), d)) == theta.c[d]);
  unsetenv("QLK_THREADS");
}
