#include "ffcount/ecurve.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace ffcount {

namespace {

FieldElement general_discriminant(const FieldElement& a1, const FieldElement& a2,
                                  const FieldElement& a3, const FieldElement& a4,
                                  const FieldElement& a6) {
  const auto& ctx = a1.ctx();
  auto k = [&](long n) { return ctx->from_int(Int(n)); };
  FieldElement b2 = a1 * a1 + k(4) * a2;
  FieldElement b4 = k(2) * a4 + a1 * a3;
  FieldElement b6 = a3 * a3 + k(4) * a6;
  FieldElement b8 = a1 * a1 * a6 + k(4) * a2 * a6 - a1 * a3 * a4 +
                    a2 * a3 * a3 - a4 * a4;
  return -(b2 * b2 * b8) - k(8) * b4 * b4 * b4 - k(27) * b6 * b6 +
         k(9) * b2 * b4 * b6;
}

}  // namespace

Curve Curve::make_short(const FieldCtxPtr& ctx, const FieldElement& a,
                        const FieldElement& b) {
  if (ctx->p() <= 3)
    throw std::invalid_argument("curve_make: short model needs p > 3");
  Curve E;
  E.ctx_ = ctx;
  E.short_ = ShortModel{a, b};
  E.a1_ = ctx->zero();
  E.a2_ = ctx->zero();
  E.a3_ = ctx->zero();
  E.a4_ = a;
  E.a6_ = b;
  // -16 (4a^3 + 27b^2)
  auto k = [&](long n) { return ctx->from_int(Int(n)); };
  E.disc_ = -(k(16) * (k(4) * a * a * a + k(27) * b * b));
  if (E.disc_.is_zero())
    throw std::invalid_argument("curve_make: singular curve (discriminant 0)");
  return E;
}

Curve Curve::make_general(const FieldCtxPtr& ctx, const FieldElement& a1,
                          const FieldElement& a2, const FieldElement& a3,
                          const FieldElement& a4, const FieldElement& a6) {
  Curve E;
  E.ctx_ = ctx;
  E.a1_ = a1;
  E.a2_ = a2;
  E.a3_ = a3;
  E.a4_ = a4;
  E.a6_ = a6;
  E.disc_ = general_discriminant(a1, a2, a3, a4, a6);
  if (E.disc_.is_zero())
    throw std::invalid_argument("curve_make: singular curve (discriminant 0)");
  return E;
}

const ShortModel& Curve::short_model() const {
  if (!short_) throw std::invalid_argument("curve: not in short form");
  return *short_;
}

FieldElement Curve::j_invariant() const {
  const auto& ctx = ctx_;
  auto k = [&](long n) { return ctx->from_int(Int(n)); };
  FieldElement b2 = a1_ * a1_ + k(4) * a2_;
  FieldElement b4 = k(2) * a4_ + a1_ * a3_;
  FieldElement c4 = b2 * b2 - k(24) * b4;
  return c4 * c4 * c4 / disc_;
}

bool Point::operator==(const Point& o) const {
  if (inf_ || o.inf_) return inf_ == o.inf_;
  return x_ == o.x_ && y_ == o.y_;
}

bool on_curve(const Curve& E, const Point& P) {
  if (P.is_infinity()) return true;
  const FieldElement& x = P.x();
  const FieldElement& y = P.y();
  FieldElement lhs = y * y + E.a1() * x * y + E.a3() * y;
  FieldElement rhs = ((x + E.a2()) * x + E.a4()) * x + E.a6();
  return lhs == rhs;
}

Point point_neg(const Curve& E, const Point& P) {
  if (P.is_infinity()) return P;
  return Point(P.x(), -P.y() - E.a1() * P.x() - E.a3());
}

Point point_add(const Curve& E, const Point& P, const Point& Q) {
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  const auto& ctx = E.ctx();
  const FieldElement &x1 = P.x(), &y1 = P.y(), &x2 = Q.x(), &y2 = Q.y();
  FieldElement lambda;
  if (x1 == x2) {
    // either Q = -P, or a tangent
    FieldElement den = y1 + y1 + E.a1() * x1 + E.a3();
    if (y2 != y1 || den.is_zero()) return Point();  // Q == -P
    FieldElement three = ctx->from_int(3);
    FieldElement two = ctx->from_int(2);
    lambda = (three * x1 * x1 + two * E.a2() * x1 + E.a4() - E.a1() * y1) / den;
  } else {
    lambda = (y2 - y1) / (x2 - x1);
  }
  FieldElement nu = y1 - lambda * x1;
  FieldElement x3 = lambda * lambda + E.a1() * lambda - E.a2() - x1 - x2;
  FieldElement y3 = -(lambda + E.a1()) * x3 - nu - E.a3();
  return Point(std::move(x3), std::move(y3));
}

Point scalar_mul(const Curve& E, const Int& n, const Point& P) {
  if (n < 0) return scalar_mul(E, -n, point_neg(E, P));
  Point r;  // O
  Point base = P;
  Int k = n;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = point_add(E, r, base);
    k >>= 1;
    if (k > 0) base = point_add(E, base, base);
  }
  return r;
}

Point random_point(const Curve& E, Rng& rng) {
  const auto& ctx = E.ctx();
  if (ctx->p() == 2) {
    // solve the quadratic in y by scanning candidates; desk scale only
    if (ctx->q() > (Int(1) << 20))
      throw std::runtime_error("random_point: char-2 field too large for y-scan");
    unsigned long q = to_ulong(ctx->q());
    for (int tries = 0; tries < 1000; ++tries) {
      FieldElement x = ctx->random_element(rng);
      std::vector<FieldElement> sols;
      for (unsigned long i = 0; i < q; ++i) {
        FieldElement y = ctx->element_at(Int(i));
        if (on_curve(E, Point(x, y))) sols.push_back(y);
      }
      if (sols.empty()) continue;
      return Point(x, sols[rng.below_ulong(sols.size())]);
    }
    throw std::runtime_error("random_point: no affine point found");
  }
  // odd p: complete the square, pick x, take a square root
  FieldElement inv2 = ctx->from_int(2).inv();
  FieldElement inv4 = inv2 * inv2;
  for (int tries = 0; tries < 1000; ++tries) {
    FieldElement x = ctx->random_element(rng);
    FieldElement hx = E.a1() * x + E.a3();
    FieldElement g = ((x + E.a2()) * x + E.a4()) * x + E.a6() + hx * hx * inv4;
    if (legendre_chi(g) == -1) continue;
    FieldElement yp = sqrt_mod(g, &rng);
    FieldElement y = yp - hx * inv2;
    Point P(x, y);
    if (rng.coin()) P = point_neg(E, P);
    return P;
  }
  throw std::runtime_error("random_point: no affine point found");
}

Curve quadratic_twist(const Curve& E, const FieldElement& omega) {
  if (!E.is_short())
    throw std::invalid_argument("quadratic_twist: short model required");
  if (legendre_chi(omega) != -1)
    throw std::invalid_argument("quadratic_twist: omega must be a non-square");
  const auto& m = E.short_model();
  FieldElement w2 = omega * omega;
  return Curve::make_short(E.ctx(), m.a * w2, m.b * w2 * omega);
}

namespace {

std::string point_key(const FieldCtxPtr& ctx, const Point& P) {
  // x-coordinate bytes only; the +-y bit is stored next to the entry
  std::string s;
  for (const auto& c : P.x().coeffs()) {
    s += c.get_str(16);
    s += ',';
  }
  (void)ctx;
  return s;
}

// canonical bit distinguishing P from -P (0 when self-inverse)
int y_sign_bit(const Curve& E, const Point& P) {
  Point N = point_neg(E, P);
  const auto& a = P.y().coeffs();
  const auto& b = N.y().coeffs();
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return 0;
    if (b[i] < a[i]) return 1;
  }
  return 0;
}

}  // namespace

std::vector<Int> point_order_in_window(const Curve& E, const Point& P,
                                       const Int& center, const Int& radius,
                                       std::uint64_t* group_ops) {
  if (radius < 0)
    throw std::invalid_argument("point_order_in_window: radius must be >= 0");
  std::uint64_t ops = 0;
  auto add = [&](const Point& A, const Point& B) {
    ++ops;
    return point_add(E, A, B);
  };
  Int lo = center - radius;
  Int hi = center + radius;
  std::vector<Int> found;
  if (P.is_infinity()) {
    for (Int m = lo; m <= hi; ++m) found.push_back(m);
    if (group_ops) *group_ops += ops;
    return found;
  }

  Int width = 2 * radius + 1;
  Int t_big = isqrt(width);
  if (t_big * t_big < width) ++t_big;
  unsigned long t = to_ulong(t_big);
  if (t == 0) t = 1;

  // baby steps j*P for 0 <= j < t, keyed by x with a +-y bit
  std::map<std::string, std::vector<std::pair<unsigned long, int>>> baby;
  {
    Point B;  // 0*P
    for (unsigned long j = 0; j < t; ++j) {
      if (!B.is_infinity())
        baby[point_key(E.ctx(), B)].push_back({j, y_sign_bit(E, B)});
      B = add(B, P);
    }
  }

  Point Q = scalar_mul(E, lo, P);
  ops += (std::uint64_t)mpz_sizeinbase(lo.get_mpz_t(), 2) * 2;
  Point S = scalar_mul(E, Int(t), P);
  ops += (std::uint64_t)mpz_sizeinbase(Int(t).get_mpz_t(), 2) * 2;

  std::vector<Int> candidates;
  auto consider = [&](const Int& k) {
    if (k >= 0 && k < width) candidates.push_back(lo + k);
  };

  // R_i = -(Q + i t P); a baby-step hit jP = R_i means (lo + it + j) P = O,
  // a hit on the negative side means (lo + it - j) P = O.
  Point R = point_neg(E, Q);
  Point negS = point_neg(E, S);
  for (Int i = 0; i * t_big < width; ++i) {
    if (R.is_infinity()) {
      consider(i * t_big);
    } else {
      auto it = baby.find(point_key(E.ctx(), R));
      if (it != baby.end()) {
        int rbit = y_sign_bit(E, R);
        for (const auto& [j, bit] : it->second) {
          if (bit == rbit) consider(i * t_big + (long)j);
          if (bit != rbit || point_neg(E, R) == R)
            consider(i * t_big - (long)j);
        }
      }
    }
    R = add(R, negS);
  }

  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  for (const Int& m : candidates) {
    ops += (std::uint64_t)mpz_sizeinbase(m.get_mpz_t(), 2) * 2;
    if (scalar_mul(E, m, P).is_infinity()) found.push_back(m);
  }
  if (group_ops) *group_ops += ops;
  return found;
}

}  // namespace ffcount
