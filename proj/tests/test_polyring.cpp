#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffcount/polyring.hpp"
#include "ffcount/textio.hpp"

using namespace ffcount;

namespace {

Poly P(const FieldCtxPtr& ctx, std::vector<long> c) {
  std::vector<Int> v(c.begin(), c.end());
  return Poly::from_ints(ctx, v);
}

}  // namespace

TEST_CASE("divmod and gcd basics") {
  auto f5 = FieldCtx::make(5);
  // gcd(x^2 - 1, x - 1) = x - 1
  Poly g = poly_gcd(P(f5, {-1, 0, 1}), P(f5, {-1, 1}));
  CHECK(g == P(f5, {-1, 1}));

  auto [q, r] = poly_divmod(P(f5, {0, 0, 0, 1}), P(f5, {0, 0, 1}));
  CHECK(q == P(f5, {0, 1}));
  CHECK(r.is_zero());

  // over F_2: x^2 + 1 = (x+1)^2 and x^2 + x + 1 irreducible, so gcd = 1
  auto f2 = FieldCtx::make(2);
  Poly g2 = poly_gcd(P(f2, {1, 0, 1}), P(f2, {1, 1, 1}));
  CHECK(g2.degree() == 0);
  CHECK(g2.leading().is_one());

  CHECK_THROWS_AS(poly_divmod(P(f5, {1}), Poly(f5)), std::domain_error);
}

TEST_CASE("ring axioms, randomized") {
  auto f7 = FieldCtx::make(7);
  Rng rng(42);
  auto rand_poly = [&](int maxdeg) {
    std::vector<FieldElement> c;
    long deg = (long)rng.below_ulong((unsigned long)maxdeg + 1);
    for (long i = 0; i <= deg; ++i) c.push_back(f7->random_element(rng));
    return Poly(f7, c);
  };
  for (int i = 0; i < 1000; ++i) {
    Poly a = rand_poly(6), b = rand_poly(6), c = rand_poly(6);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
  // divmod identity on random pairs
  for (int i = 0; i < 1000; ++i) {
    Poly f = rand_poly(9);
    Poly g = rand_poly(5);
    if (g.is_zero()) continue;
    auto [q, r] = poly_divmod(f, g);
    CHECK(f == q * g + r);
    CHECK(r.degree() < g.degree());
  }
}

TEST_CASE("karatsuba agrees across the cutoff") {
  auto f101 = FieldCtx::make(101);
  Rng rng(9);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<FieldElement> a, b;
    for (int i = 0; i < 90; ++i) a.push_back(f101->random_element(rng));
    for (int i = 0; i < 75; ++i) b.push_back(f101->random_element(rng));
    Poly pa(f101, a), pb(f101, b);
    Poly prod = pa * pb;
    // check a few coefficients by direct convolution
    for (size_t k : {0ul, 1ul, 50ul, 100ul, 163ul}) {
      FieldElement s = f101->zero();
      for (size_t i = 0; i <= k && i < a.size(); ++i) {
        size_t j = k - i;
        if (j < b.size()) s = s + a[i] * b[j];
      }
      CHECK(prod.coeff(k) == s);
    }
  }
}

TEST_CASE("quotient ring powers") {
  auto f5 = FieldCtx::make(5);
  auto m = std::make_shared<const Poly>(P(f5, {1, 0, 1}));  // x^2 + 1
  QuotientElem x(m, Poly::x(f5));
  // x^2 = -1, so x^5 = x
  CHECK(qr_pow(x, 5) == x);
  CHECK(qr_pow(x, 0).rep() == P(f5, {1}));
  CHECK(qr_pow(x, 1) == x);

  Rng rng(4);
  auto m2 = std::make_shared<const Poly>(P(f5, {2, 0, 3, 1}));
  for (int i = 0; i < 30; ++i) {
    std::vector<FieldElement> c;
    for (int j = 0; j < 3; ++j) c.push_back(f5->random_element(rng));
    QuotientElem e(m2, Poly(f5, c));
    QuotientElem p3 = qr_pow(e, 3);
    CHECK(p3 == e * e * e);
  }
}

TEST_CASE("quotient inverse and zero-divisor witness") {
  auto f5 = FieldCtx::make(5);
  auto m = std::make_shared<const Poly>(P(f5, {1, 0, 1}));  // x^2 + 1
  QuotientElem x(m, Poly::x(f5));
  auto r = qr_inv(x);
  REQUIRE(std::holds_alternative<QuotientElem>(r));
  CHECK(std::get<QuotientElem>(r).rep() == P(f5, {0, 4}));  // -x

  // (x - 1) is a zero divisor mod x^2 - 1
  auto m2 = std::make_shared<const Poly>(P(f5, {-1, 0, 1}));
  QuotientElem e(m2, P(f5, {-1, 1}));
  auto r2 = qr_inv(e);
  REQUIRE(std::holds_alternative<ZeroDivisorWitness>(r2));
  Poly w = std::get<ZeroDivisorWitness>(r2).factor;
  CHECK(w == P(f5, {-1, 1}));
  CHECK(poly_divmod(*m2, w).second.is_zero());  // witness divides the modulus

  QuotientElem one(m, P(f5, {1}));
  auto r3 = qr_inv(one);
  REQUIRE(std::holds_alternative<QuotientElem>(r3));
  CHECK(std::get<QuotientElem>(r3) == one);

  CHECK_THROWS_AS(qr_inv(QuotientElem(m, Poly(f5))), std::domain_error);

  // whenever an inverse exists, e * inv(e) = 1; randomized
  Rng rng(17);
  auto m3 = std::make_shared<const Poly>(P(f5, {1, 2, 0, 0, 1}));
  for (int i = 0; i < 100; ++i) {
    std::vector<FieldElement> c;
    for (int j = 0; j < 4; ++j) c.push_back(f5->random_element(rng));
    QuotientElem e3(m3, Poly(f5, c));
    if (e3.is_zero()) continue;
    auto ri = qr_inv(e3);
    if (std::holds_alternative<QuotientElem>(ri)) {
      CHECK((e3 * std::get<QuotientElem>(ri)).rep() == P(f5, {1}));
    } else {
      Poly w3 = std::get<ZeroDivisorWitness>(ri).factor;
      CHECK(poly_divmod(*m3, w3).second.is_zero());
      CHECK(w3.degree() >= 1);
      CHECK(w3.degree() < m3->degree());
    }
  }
}

TEST_CASE("crt") {
  auto [r, M] = crt_combine({{Int(2), Int(3)}, {Int(3), Int(5)}});
  CHECK(r == 8);
  CHECK(M == 15);

  auto [r1, M1] = crt_combine({{Int(0), Int(7)}});
  CHECK(r1 == 0);
  CHECK(M1 == 7);

  auto [r2, M2] = crt_combine({{Int(1), Int(2)}, {Int(1), Int(3)}, {Int(1), Int(5)}});
  CHECK(r2 == 1);
  CHECK(M2 == 30);

  CHECK_THROWS_AS(crt_combine({{Int(1), Int(4)}, {Int(1), Int(6)}}),
                  std::invalid_argument);

  // verify every call by direct reduction
  Rng rng(23);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<std::pair<Int, Int>> rs = {
        {rng.below(Int(7)), Int(7)},
        {rng.below(Int(11)), Int(11)},
        {rng.below(Int(13)), Int(13)},
    };
    auto [rr, MM] = crt_combine(rs);
    CHECK(MM == 1001);
    for (const auto& [ri, mi] : rs) CHECK(mod(rr, mi) == ri);
    CHECK(rr >= 0);
    CHECK(rr < MM);
  }
}

TEST_CASE("poly text format") {
  auto f5 = FieldCtx::make(5);
  Poly f = P(f5, {1, 0, 3});
  CHECK(format_poly(f) == "1,0,3");
  CHECK(parse_poly(f5, "1,0,3") == f);

  auto f4 = FieldCtx::make(2, 2, {Int(1), Int(1), Int(1)});
  Poly g(f4, {f4->from_coeffs({Int(1), Int(0)}), f4->from_coeffs({Int(0), Int(1)})});
  CHECK(format_poly(g) == "1,0;0,1");
  CHECK(parse_poly(f4, "1,0;0,1") == g);
}
