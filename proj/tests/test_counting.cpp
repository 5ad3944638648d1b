#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "ffcount/counting.hpp"

using namespace ffcount;

namespace {

Curve random_short_curve(const FieldCtxPtr& ctx, Rng& rng) {
  for (;;) {
    try {
      return Curve::make_short(ctx, ctx->random_element(rng),
                               ctx->random_element(rng));
    } catch (const std::invalid_argument&) {
    }
  }
}

// independent oracle: count affine solutions of the curve equation plus O
Int enumerate_count(const Curve& E) {
  unsigned long q = to_ulong(E.ctx()->q());
  Int n = 1;
  for (unsigned long i = 0; i < q; ++i)
    for (unsigned long j = 0; j < q; ++j)
      if (on_curve(E, Point(E.ctx()->element_at(Int((long)i)),
                            E.ctx()->element_at(Int((long)j)))))
        ++n;
  return n;
}

}  // namespace

TEST_CASE("hasse window") {
  auto [lo5, hi5] = hasse_window(5);
  CHECK(lo5 == 2);
  CHECK(hi5 == 10);
  auto [lo4, hi4] = hasse_window(4);
  CHECK(lo4 == 1);
  CHECK(hi4 == 9);
  auto [lo, hi] = hasse_window(1048609);
  CHECK(lo <= 1049412);
  CHECK(hi >= 1049412);
  CHECK_THROWS_AS(hasse_window(0), std::invalid_argument);
}

TEST_CASE("naive counting, small examples") {
  auto f5 = FieldCtx::make(5);
  Curve E = Curve::make_short(f5, f5->from_int(1), f5->from_int(1));
  CountResult r = count_naive(E);
  CHECK(r.n_points == 9);
  CHECK(r.trace == -3);
  CHECK(r.n_points == enumerate_count(E));

  auto f2 = FieldCtx::make(2);
  Curve E2 = Curve::make_general(f2, f2->one(), f2->zero(), f2->zero(),
                                 f2->zero(), f2->one());
  CountResult r2 = count_naive(E2);
  CHECK(r2.n_points == 4);
  CHECK(r2.trace == -1);

  // guard
  CHECK_THROWS_AS(count_naive(E, Int(3)), std::runtime_error);
}

TEST_CASE("naive parallel kernel matches the serial reference") {
  Rng rng(2024);
  for (long p : {5, 7, 11, 101, 1009, 4003}) {
    auto fp = FieldCtx::make(p);
    for (int i = 0; i < 5; ++i) {
      Curve E = random_short_curve(fp, rng);
      CountResult a = count_naive(E);
      CountResult b = count_naive_serial(E);
      CHECK(a.n_points == b.n_points);
      auto [lo, hi] = hasse_window(fp->q());
      CHECK(a.n_points >= lo);
      CHECK(a.n_points <= hi);
    }
  }
}

TEST_CASE("naive on extension fields and general models") {
  Rng rng(8);
  // odd p, d = 2: against full enumeration
  auto f9 = FieldCtx::make(3, 2, rng);
  for (int i = 0; i < 5; ++i) {
    Curve E = [&] {
      for (;;) {
        try {
          return Curve::make_general(f9, f9->random_element(rng),
                                     f9->random_element(rng),
                                     f9->random_element(rng),
                                     f9->random_element(rng),
                                     f9->random_element(rng));
        } catch (const std::invalid_argument&) {
        }
      }
    }();
    CHECK(count_naive(E).n_points == enumerate_count(E));
  }
  // char 2 extension: trace-based kernel against enumeration
  auto f16 = FieldCtx::make(2, 4, rng);
  for (int i = 0; i < 8; ++i) {
    Curve E = [&] {
      for (;;) {
        try {
          return Curve::make_general(f16, f16->random_element(rng),
                                     f16->random_element(rng),
                                     f16->random_element(rng),
                                     f16->random_element(rng),
                                     f16->random_element(rng));
        } catch (const std::invalid_argument&) {
        }
      }
    }();
    CHECK(count_naive(E).n_points == enumerate_count(E));
    CHECK(count_naive_serial(E).n_points == enumerate_count(E));
  }
}

TEST_CASE("bsgs agrees with naive") {
  Rng rng(99);
  // below the Mestre threshold this delegates; above it runs for real
  for (long p : {5, 7, 11, 13, 101, 1009}) {
    auto fp = FieldCtx::make(p);
    for (int i = 0; i < 8; ++i) {
      Curve E = random_short_curve(fp, rng);
      CHECK(count_bsgs(E, rng).n_points == count_naive(E).n_points);
    }
  }
  for (long p : {2003, 10007, 65537}) {
    auto fp = FieldCtx::make(p);
    for (int i = 0; i < 4; ++i) {
      Curve E = random_short_curve(fp, rng);
      BsgsStats st;
      CountResult r = count_bsgs(E, rng, &st);
      CHECK(r.n_points == count_naive(E).n_points);
      CHECK(st.samples >= 1);
    }
  }
}

TEST_CASE("bsgs operation budget per sample") {
  Rng rng(123);
  auto fp = FieldCtx::make(1048609);
  for (int i = 0; i < 3; ++i) {
    Curve E = random_short_curve(fp, rng);
    BsgsStats st;
    CountResult r = count_bsgs(E, rng, &st);
    CHECK(r.n_points == count_naive(E).n_points);
    double budget = 4.0 * std::sqrt(8.0 * std::sqrt(1048609.0));
    CHECK((double)st.max_group_ops_per_sample <= budget);
  }
}

TEST_CASE("twist identity") {
  Rng rng(55);
  for (long p : {5, 7, 101, 2003}) {
    auto fp = FieldCtx::make(p);
    for (int i = 0; i < 10; ++i) {
      Curve E = random_short_curve(fp, rng);
      FieldElement w = random_nonsquare(fp, rng);
      Curve Et = quadratic_twist(E, w);
      Int ne = count_naive(E).n_points;
      Int nt = count_naive(Et).n_points;
      CHECK(ne + nt == 2 * (fp->q() + 1));
    }
  }
}

TEST_CASE("cornacchia examples") {
  using PV = std::vector<std::pair<Int, Int>>;
  PV s37 = cornacchia(3, 7);
  CHECK(s37 == PV{{1, 3}, {4, 2}, {5, 1}});

  // the only solution of x^2 + 7y^2 = 44 is the doubled class (4, 2)
  PV s711 = cornacchia(7, 11);
  CHECK(s711 == PV{{4, 2}});

  // D = 4q forces x = 0, which is excluded
  CHECK(cornacchia(4 * 7, 7).empty());

  // -D not a square anywhere
  CHECK(cornacchia(5, 7).empty());
  CHECK_THROWS_AS(cornacchia(3, 11), std::domain_error);
}

TEST_CASE("cornacchia equals exhaustive search") {
  // exhaustive oracle over a grid of (D, q); q runs over primes and prime
  // powers with 4q <= 10^6
  std::vector<Int> qs = {3,   5,    7,    11,   13,   101,  1009, 4001,
                         9973, 249989, 25, 49, 343, 121, 729};
  std::vector<Int> Ds = {1, 2, 3, 4, 7, 8, 11, 12, 15, 16, 20, 43, 163};
  for (const Int& q : qs) {
    for (const Int& D : Ds) {
      std::set<std::pair<Int, Int>> want;
      for (Int y = 1; D * y * y <= 4 * q; ++y) {
        Int rest = 4 * q - D * y * y;
        if (rest <= 0) break;
        Int x = isqrt(rest);
        if (x >= 1 && x * x == rest) {
          Int g = gcd(x, y);
          if (g == 1 || g == 2) want.insert({x, y});
        }
      }
      std::vector<std::pair<Int, Int>> got;
      try {
        got = cornacchia(D, q);
      } catch (const std::domain_error&) {
        CHECK(want.empty());
        continue;
      }
      std::set<std::pair<Int, Int>> got_set(got.begin(), got.end());
      CHECK(got_set == want);
      for (const auto& [x, y] : got) CHECK(x * x + D * y * y == 4 * q);
    }
  }
}

TEST_CASE("cm counting") {
  Rng rng(7);
  auto f7 = FieldCtx::make(7);
  // y^2 = x^3 + 1 has j = 0, CM by discriminant -3
  Curve E = Curve::make_short(f7, f7->zero(), f7->one());
  CountResult r = count_cm(E, 3, rng);
  CHECK(r.n_points == 12);
  CHECK(r.trace == -4);
  CHECK(r.n_points == count_naive(E).n_points);

  Curve E2 = Curve::make_short(f7, f7->zero(), f7->from_int(-1));
  CountResult r2 = count_cm(E2, 3, rng);
  CHECK(r2.n_points == count_naive(E2).n_points);

  // wrong discriminant: either no candidate survives or none exists
  CHECK_THROWS(count_cm(E, 11, rng));
}

TEST_CASE("cm counting across j = 0 twists") {
  Rng rng(77);
  // all sextic twists of y^2 = x^3 + b over F_13 have CM by -3
  auto f13 = FieldCtx::make(13);
  for (long b = 1; b < 13; ++b) {
    Curve E = Curve::make_short(f13, f13->zero(), f13->from_int(b));
    CountResult r = count_cm(E, 3, rng);
    CHECK(r.n_points == count_naive(E).n_points);
  }
  // j = 1728 family y^2 = x^3 + ax has CM by -4
  for (long a = 1; a < 13; ++a) {
    Curve E = Curve::make_short(f13, f13->from_int(a), f13->zero());
    CountResult r = count_cm(E, 4, rng);
    CHECK(r.n_points == count_naive(E).n_points);
  }
}
