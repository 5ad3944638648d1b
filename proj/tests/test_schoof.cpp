#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "ffcount/schoof.hpp"

using namespace ffcount;

namespace {

Curve short_curve(long p, long a, long b) {
  auto fp = FieldCtx::make(p);
  return Curve::make_short(fp, fp->from_int(a), fp->from_int(b));
}

Curve random_short_curve(const FieldCtxPtr& ctx, Rng& rng) {
  for (;;) {
    try {
      return Curve::make_short(ctx, ctx->random_element(rng),
                               ctx->random_element(rng));
    } catch (const std::invalid_argument&) {
    }
  }
}

}  // namespace

TEST_CASE("division polynomials") {
  // p = 101 keeps every ell in {3..13} nondegenerate
  Curve E = short_curve(101, 1, 1);
  auto cache = division_polys(E, 13);
  auto fp = E.ctx();

  CHECK(cache.psi[1] == Poly::constant(fp, Int(1)));

  // psi_3 = 3x^4 + 6a x^2 + 12b x - a^2, here a = b = 1
  Poly psi3 = Poly::from_ints(fp, {Int(-1), Int(12), Int(6), Int(0), Int(3)});
  CHECK(cache.psi[3] == psi3);

  CHECK(cache.psi[5].degree() == 12);   // (25-1)/2
  CHECK(cache.psi[7].degree() == 24);
  CHECK(cache.psi[11].degree() == 60);
  CHECK(cache.psi[13].degree() == 84);
}

TEST_CASE("psi_3 vanishes exactly on 3-torsion abscissas") {
  Rng rng(6);
  for (long p : {5, 7, 11}) {
    auto fp = FieldCtx::make(p);
    for (int rep = 0; rep < 3; ++rep) {
      Curve E = random_short_curve(fp, rng);
      auto cache = division_polys(E, 3);
      // brute force over F_p and a quadratic extension
      for (unsigned k = 1; k <= 2; ++k) {
        auto ext = k == 1 ? fp : FieldCtx::make(Int(p), 2, rng);
        Curve Eext =
            Curve::make_short(ext, ext->from_int(E.short_model().a.coeffs()[0]),
                              ext->from_int(E.short_model().b.coeffs()[0]));
        Poly psi3 = Poly::from_ints(
            ext, [&] {
              std::vector<Int> c;
              for (int i = 0; i <= cache.psi[3].degree(); ++i)
                c.push_back(cache.psi[3].coeff((size_t)i).coeffs()[0]);
              return c;
            }());
        unsigned long qe = to_ulong(ext->q());
        for (unsigned long i = 0; i < qe; ++i)
          for (unsigned long j = 0; j < qe; ++j) {
            Point P(ext->element_at(Int((long)i)), ext->element_at(Int((long)j)));
            if (!on_curve(Eext, P)) continue;
            bool is3tors = scalar_mul(Eext, 3, P).is_infinity();
            if (is3tors) CHECK(psi3.eval(P.x()).is_zero());
          }
      }
    }
  }
}

TEST_CASE("trace mod 2") {
  // x^3 + x + 1 has no root mod 5, trace odd (-3)
  CHECK(trace_mod_2(short_curve(5, 1, 1)) == 1);
  // x^3 - x splits completely, trace even (-2)
  CHECK(trace_mod_2(short_curve(5, -1, 0)) == 0);
  // any curve with a rational 2-torsion point
  CHECK(trace_mod_2(short_curve(7, -1, 0)) == 0);
}

TEST_CASE("trace mod ell examples") {
  auto cache515 = division_polys(short_curve(5, 1, 1), 7);
  // t = -3 for y^2 = x^3 + x + 1 / F_5
  CHECK(trace_mod_ell(short_curve(5, 1, 1), 3, cache515) == 0);
  CHECK(trace_mod_ell(short_curve(5, 1, 1), 7, cache515) == 4);

  // y^2 = x^3 + 2 over F_7 has 9 points, t = -1 = 2 mod 3
  auto cache = division_polys(short_curve(7, 0, 2), 3);
  CHECK(trace_mod_ell(short_curve(7, 0, 2), 3, cache) == 2);
}

TEST_CASE("trace mod ell against the naive oracle") {
  Rng rng(2718);
  for (long p : {5, 7, 11, 101}) {
    auto fp = FieldCtx::make(p);
    for (int rep = 0; rep < 6; ++rep) {
      Curve E = random_short_curve(fp, rng);
      Int t = Int(p) + 1 - count_naive(E).n_points;
      auto cache = division_polys(E, 13);
      for (unsigned ell : {3u, 5u, 7u, 11u, 13u}) {
        if (Int(ell) == fp->p()) continue;
        EllTrace diag;
        unsigned long r = trace_mod_ell(E, ell, cache, &diag);
        CHECK(Int(r) == mod(t, Int(ell)));
        CHECK(diag.dim >= 1);
      }
    }
  }
}

TEST_CASE("prime plans") {
  PrimePlan p5 = make_prime_plan(5, 5);
  CHECK(p5.use_two);
  CHECK(p5.odd_primes == std::vector<unsigned>{3, 7});
  CHECK(p5.product == 42);

  PrimePlan p7 = make_prime_plan(7, 7);
  CHECK(p7.use_two);
  CHECK(p7.odd_primes == std::vector<unsigned>{3, 5});

  PrimePlan p2 = make_prime_plan(2, 2);
  CHECK(!p2.use_two);
  CHECK(p2.odd_primes == std::vector<unsigned>{3, 5});

  // product always clears 4 sqrt(q)
  for (long q : {5, 7, 101, 10007, 1048609}) {
    PrimePlan pl = make_prime_plan(q, 2);
    CHECK(pl.product * pl.product > 16 * Int(q));
  }
}

TEST_CASE("schoof on small curves") {
  CHECK(schoof_count(short_curve(7, 0, 2)).n_points == 9);
  CHECK(schoof_count(short_curve(7, 0, 2)).trace == -1);
  CHECK(schoof_count(short_curve(5, 1, 1)).n_points == 9);
  CHECK(schoof_count(short_curve(5, 1, 1)).trace == -3);
}

TEST_CASE("schoof equals naive on a regression corpus") {
  Rng rng(31415);
  for (long p : {5, 7, 11, 13, 101, 1009}) {
    auto fp = FieldCtx::make(p);
    for (int rep = 0; rep < 5; ++rep) {
      Curve E = random_short_curve(fp, rng);
      CountResult s = schoof_count(E);
      CountResult n = count_naive(E);
      CHECK(s.n_points == n.n_points);
      CHECK(s.trace == n.trace);
    }
  }
}

TEST_CASE("schoof serial equals parallel and the trace log is stable") {
  Rng rng(999);
  auto fp = FieldCtx::make(10007);
  Curve E = random_short_curve(fp, rng);
  std::ostringstream log_par, log_ser;
  CountResult a = schoof_count(E, true, &log_par);
  CountResult b = schoof_count(E, false, &log_ser);
  CHECK(a.n_points == b.n_points);
  CHECK(log_par.str() == log_ser.str());
  CHECK(log_par.str().find("l=3 t=") != std::string::npos);
  CHECK(a.n_points == count_bsgs(E, rng).n_points);
}

TEST_CASE("schoof on an extension field") {
  Rng rng(5);
  auto f121 = FieldCtx::make(11, 2, rng);
  for (int rep = 0; rep < 3; ++rep) {
    Curve E = random_short_curve(f121, rng);
    CountResult s = schoof_count(E);
    CountResult n = count_naive(E);
    CHECK(s.n_points == n.n_points);
  }
}
