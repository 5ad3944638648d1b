// Weierstrass curves over F_q: group law on the general model (valid in any
// characteristic), random points, quadratic twists, and baby-step/giant-step
// search for annihilating multiples inside an interval.
#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ffcount/ffield.hpp"

namespace ffcount {

struct ShortModel {
  FieldElement a, b;  // y^2 = x^3 + a x + b, p > 3 only
};

struct GeneralModel {
  FieldElement a1, a2, a3, a4, a6;  // y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
};

class Curve {
 public:
  static Curve make_short(const FieldCtxPtr& ctx, const FieldElement& a,
                          const FieldElement& b);
  static Curve make_general(const FieldCtxPtr& ctx, const FieldElement& a1,
                            const FieldElement& a2, const FieldElement& a3,
                            const FieldElement& a4, const FieldElement& a6);

  const FieldCtxPtr& ctx() const { return ctx_; }
  bool is_short() const { return short_.has_value(); }
  const ShortModel& short_model() const;
  const FieldElement& discriminant() const { return disc_; }
  FieldElement j_invariant() const;

  // General coefficients; zeros filled in for the short model.
  const FieldElement& a1() const { return a1_; }
  const FieldElement& a2() const { return a2_; }
  const FieldElement& a3() const { return a3_; }
  const FieldElement& a4() const { return a4_; }
  const FieldElement& a6() const { return a6_; }

 private:
  Curve() = default;

  FieldCtxPtr ctx_;
  std::optional<ShortModel> short_;
  FieldElement a1_, a2_, a3_, a4_, a6_;
  FieldElement disc_;
};

class Point {
 public:
  Point() : inf_(true) {}  // point at infinity
  Point(FieldElement x, FieldElement y)
      : inf_(false), x_(std::move(x)), y_(std::move(y)) {}

  bool is_infinity() const { return inf_; }
  const FieldElement& x() const { return x_; }
  const FieldElement& y() const { return y_; }

  bool operator==(const Point& o) const;
  bool operator!=(const Point& o) const { return !(*this == o); }

 private:
  bool inf_;
  FieldElement x_, y_;
};

bool on_curve(const Curve& E, const Point& P);
Point point_neg(const Curve& E, const Point& P);
Point point_add(const Curve& E, const Point& P, const Point& Q);
Point scalar_mul(const Curve& E, const Int& n, const Point& P);

// Uniform over affine points up to the +-y pairing bias. Odd p picks x then
// takes a square root; p = 2 solves for y directly by scanning candidates.
Point random_point(const Curve& E, Rng& rng);

// y^2 = x^3 + a w^2 x + b w^3 for a non-square w; short model, p > 3.
Curve quadratic_twist(const Curve& E, const FieldElement& omega);

// All integers m in [center - radius, center + radius] with m*P = O, sorted.
// O(sqrt(2 radius)) group operations and stored baby steps; every candidate
// is re-verified by a direct scalar multiplication before being reported.
// group_ops, when given, accumulates the number of group operations used.
std::vector<Int> point_order_in_window(const Curve& E, const Point& P,
                                       const Int& center, const Int& radius,
                                       std::uint64_t* group_ops = nullptr);

}  // namespace ffcount
