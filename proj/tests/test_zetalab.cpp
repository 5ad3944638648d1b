#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffcount/counting.hpp"
#include "ffcount/zetalab.hpp"

using namespace ffcount;

TEST_CASE("elliptic zeta") {
  ZetaFn z = zeta_elliptic(5, -3);
  CHECK(z.num() == std::vector<Int>{Int(1), Int(3), Int(5)});
  CHECK(z.den() == std::vector<Int>{Int(1), Int(-6), Int(5)});

  ZetaFn z0 = zeta_elliptic(7, 0);
  CHECK(z0.num() == std::vector<Int>{Int(1), Int(0), Int(7)});

  ZetaFn zp = zeta_elliptic(1048609, -802);
  CHECK(zp.num() == std::vector<Int>{Int(1), Int(802), Int(1048609)});

  CHECK_THROWS_AS(zeta_elliptic(5, 5), std::invalid_argument);
}

TEST_CASE("zeta constant terms and coprimality are enforced") {
  CHECK_THROWS_AS(ZetaFn({Int(2), Int(1)}, {Int(1)}), std::invalid_argument);
  // common factor (1 - t) cancels
  ZetaFn z({Int(1), Int(-1)}, {Int(1), Int(-3), Int(2)});
  CHECK(z.num() == std::vector<Int>{Int(1)});
  CHECK(z.den() == std::vector<Int>{Int(1), Int(-2)});
}

TEST_CASE("counts from zeta") {
  // affine line: 1/(1 - q t)
  ZetaFn line({Int(1)}, {Int(1), Int(-5)});
  CountSeq cs = zeta_to_counts(line, 3, 5);
  CHECK(cs.counts == std::vector<Int>{Int(5), Int(25), Int(125)});

  CountSeq ce = zeta_to_counts(zeta_elliptic(5, -3), 2, 5);
  CHECK(ce.counts[0] == 9);
  CHECK(ce.counts[1] == 27);

  // three rational points: 1/(1-t)^3
  ZetaFn pts({Int(1)}, {Int(1), Int(-3), Int(3), Int(-1)});
  CountSeq cp = zeta_to_counts(pts, 2, 5);
  CHECK(cp.counts == std::vector<Int>{Int(3), Int(3)});
}

TEST_CASE("brute force variety counts") {
  // x1^2 + x2^2 over F_3: only the origin
  VarietySystem sys = parse_variety("3,1 ; 2 ; 1:2,0+1:0,2");
  CHECK(brute_force_variety_count(sys, 1) == 1);
  CHECK(brute_force_variety_count_serial(sys, 1) == 1);

  // no equations: the whole affine space q^{kn}
  VarietySystem all = parse_variety("3,1 ; 2 ; ");
  CHECK(brute_force_variety_count(all, 1) == 9);
  CHECK(brute_force_variety_count(all, 2) == 81);

  // affine elliptic curve y^2 - x^3 - x - 1 over F_5: 9 points minus O
  VarietySystem ell = parse_variety("5,1 ; 2 ; 1:0,2+-1:3,0+-1:1,0+-1:0,0");
  CHECK(brute_force_variety_count(ell, 1) == 8);

  // guard
  CHECK_THROWS_AS(brute_force_variety_count(all, 30), std::runtime_error);
}

TEST_CASE("brute force over extension fields embeds coefficients") {
  Rng rng(3);
  // over F_4, x1 = g has exactly one solution in F_4 and... still one in F_16
  auto f4 = FieldCtx::make(2, 2, {Int(1), Int(1), Int(1)});
  VarietySystem sys;
  sys.ctx = f4;
  sys.nvars = 1;
  Monomial m1{f4->one(), {1}};
  Monomial m0{f4->gen(), {0}};
  sys.polys = {{m1, m0}};  // x + g = 0
  CHECK(brute_force_variety_count(sys, 1) == 1);
  CHECK(brute_force_variety_count(sys, 2) == 1);
  CHECK(brute_force_variety_count_serial(sys, 2) == 1);

  // x^4 = x picks out the F_4 subfield inside F_16
  VarietySystem sub;
  sub.ctx = f4;
  sub.nvars = 1;
  sub.polys = {{Monomial{f4->one(), {4}}, Monomial{-f4->one(), {1}}}};
  CHECK(brute_force_variety_count(sub, 1) == 4);
  CHECK(brute_force_variety_count(sub, 2) == 4);
}

TEST_CASE("parallel and serial brute force agree") {
  VarietySystem sys = parse_variety("7,1 ; 3 ; 1:2,0,0+1:0,2,0+6:0,0,2+3:0,0,0");
  for (unsigned k = 1; k <= 2; ++k)
    CHECK(brute_force_variety_count(sys, k) ==
          brute_force_variety_count_serial(sys, k));
}

TEST_CASE("counts to zeta") {
  // single pole: N_k = 5^k
  CountSeq geo{5, {Int(5), Int(25), Int(125), Int(625), Int(3125)}};
  ZetaFn zg = counts_to_zeta(geo, 2);
  CHECK(zg.num() == std::vector<Int>{Int(1)});
  CHECK(zg.den() == std::vector<Int>{Int(1), Int(-5)});

  // elliptic round trip at bound 4
  ZetaFn ze = zeta_elliptic(5, -3);
  CountSeq cs = zeta_to_counts(ze, 9, 5);
  ZetaFn back = counts_to_zeta(cs, 4);
  CHECK(back == ze);

  // constant counts 3: needs degree 3, rejected at bound 2
  CountSeq c3{5, {Int(3), Int(3), Int(3), Int(3), Int(3), Int(3), Int(3)}};
  CHECK_THROWS_AS(counts_to_zeta(c3, 2), std::runtime_error);
  ZetaFn z3 = counts_to_zeta(c3, 3);
  CHECK(z3.num() == std::vector<Int>{Int(1)});
  CHECK(z3.den() == std::vector<Int>{Int(1), Int(-3), Int(3), Int(-1)});

  // too few counts for the bound
  CountSeq tiny{5, {Int(3), Int(3)}};
  CHECK_THROWS_AS(counts_to_zeta(tiny, 2), std::invalid_argument);

  // inconsistent counts within reach of no rational function of bound 2
  CountSeq bad{5, {Int(1), Int(7), Int(2), Int(9), Int(100)}};
  CHECK_THROWS_AS(counts_to_zeta(bad, 2), std::runtime_error);
}

TEST_CASE("round trips on random zeta functions") {
  Rng rng(123);
  int done = 0;
  while (done < 50) {
    // distinct nonzero reciprocal roots, numerator and denominator disjoint
    std::vector<long> pool{-5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6, 7};
    for (size_t i = pool.size(); i > 1; --i)
      std::swap(pool[i - 1], pool[rng.below_ulong((unsigned long)i)]);
    unsigned na = 1 + rng.below_ulong(3);
    unsigned nb = 1 + rng.below_ulong(3);
    std::vector<Int> num{Int(1)}, den{Int(1)};
    auto mul_in = [](std::vector<Int>& poly, long root) {
      std::vector<Int> next(poly.size() + 1, Int(0));
      for (size_t i = 0; i < poly.size(); ++i) {
        next[i] += poly[i];
        next[i + 1] -= root * poly[i];
      }
      poly = std::move(next);
    };
    for (unsigned i = 0; i < na; ++i) mul_in(num, pool[i]);
    for (unsigned i = 0; i < nb; ++i) mul_in(den, pool[na + i]);
    ZetaFn z(num, den);
    unsigned B = na + nb;
    CountSeq cs = zeta_to_counts(z, 2 * B + 1, 0);
    ZetaFn back = counts_to_zeta(cs, B);
    CHECK(back == z);
    ++done;
  }
}

TEST_CASE("N_2 from the elliptic zeta matches projective brute force") {
  Rng rng(2);
  int done = 0;
  for (long p : {5, 7}) {
    auto fp = FieldCtx::make(p);
    for (int rep = 0; rep < 10; ++rep, ++done) {
      Curve E = [&] {
        for (;;) {
          try {
            return Curve::make_short(fp, fp->random_element(rng),
                                     fp->random_element(rng));
          } catch (const std::invalid_argument&) {
          }
        }
      }();
      Int t = count_naive(E).trace;
      CountSeq cs = zeta_to_counts(zeta_elliptic(p, t), 2, p);
      // affine counts over F_{q^2} plus the single point at infinity
      VarietySystem sys;
      sys.ctx = fp;
      sys.nvars = 2;
      std::vector<Monomial> poly;
      poly.push_back(Monomial{fp->one(), {0, 2}});
      poly.push_back(Monomial{-fp->one(), {3, 0}});
      poly.push_back(Monomial{-E.short_model().a, {1, 0}});
      poly.push_back(Monomial{-E.short_model().b, {0, 0}});
      sys.polys = {poly};
      Int n2_affine = brute_force_variety_count(sys, 2);
      CHECK(cs.counts[1] == n2_affine + 1);
    }
  }
  CHECK(done == 20);
}

TEST_CASE("bombieri bound helper") {
  CHECK(bombieri_bound(1, 1, 1) == 169);     // 13^2
  CHECK(bombieri_bound(2, 1, 3) == 9261);    // 21^3
}

TEST_CASE("weil modulus check") {
  WeilReport ok = weil_modulus_check(zeta_elliptic(5, -3), 5, 1);
  CHECK(!ok.any_flagged);
  for (const auto& r : ok.roots) {
    if (r.from_numerator) {
      CHECK(r.nearest_s == 1);  // |alpha| = sqrt(5)
      CHECK(r.rel_dev < 1e-6);
    }
  }

  WeilReport line = weil_modulus_check(ZetaFn({Int(1)}, {Int(1), Int(-5)}), 5, 1);
  CHECK(!line.any_flagged);
  CHECK(line.roots.size() == 1);
  CHECK(line.roots[0].nearest_s == 2);

  // corrupted numerator: real roots, moduli far from sqrt(5)
  WeilReport bad = weil_modulus_check(ZetaFn({Int(1), Int(10), Int(5)},
                                             {Int(1), Int(-6), Int(5)}),
                                      5, 1);
  CHECK(bad.any_flagged);
}
