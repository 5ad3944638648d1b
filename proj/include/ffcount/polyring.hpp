// Dense univariate polynomials over F_q, quotient rings F_q[x]/(m), and
// integer CRT. Quotient inversion either inverts or hands back a nontrivial
// factor of the modulus (the gcd witness), which Schoof's algorithm consumes.
#pragma once

#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "ffcount/ffield.hpp"

namespace ffcount {

class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldCtxPtr ctx) : ctx_(std::move(ctx)) {}
  Poly(FieldCtxPtr ctx, std::vector<FieldElement> coeffs);

  static Poly constant(const FieldCtxPtr& ctx, const FieldElement& c);
  static Poly constant(const FieldCtxPtr& ctx, const Int& c);
  static Poly x(const FieldCtxPtr& ctx);
  // coeffs lowest degree first, as field elements of ctx
  static Poly from_ints(const FieldCtxPtr& ctx, const std::vector<Int>& coeffs);

  const FieldCtxPtr& ctx() const { return ctx_; }
  // no trailing zeros; empty means the zero polynomial
  const std::vector<FieldElement>& coeffs() const { return c_; }
  int degree() const { return (int)c_.size() - 1; }
  bool is_zero() const { return c_.empty(); }
  FieldElement coeff(size_t i) const;
  FieldElement leading() const;
  FieldElement eval(const FieldElement& at) const;
  Poly monic() const;
  Poly derivative() const;

  Poly operator-() const;
  friend Poly operator+(const Poly&, const Poly&);
  friend Poly operator-(const Poly&, const Poly&);
  friend Poly operator*(const Poly&, const Poly&);
  Poly operator*(const FieldElement& s) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

 private:
  void trim();

  FieldCtxPtr ctx_;
  std::vector<FieldElement> c_;
};

// Euclidean division f = q*g + r with deg r < deg g; g != 0.
std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g);
// Monic gcd.
Poly poly_gcd(const Poly& f, const Poly& g);

class QuotientElem {
 public:
  QuotientElem() = default;
  QuotientElem(std::shared_ptr<const Poly> modulus, Poly rep);

  const std::shared_ptr<const Poly>& modulus() const { return modulus_; }
  const Poly& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }

  QuotientElem operator-() const;
  friend QuotientElem operator+(const QuotientElem&, const QuotientElem&);
  friend QuotientElem operator-(const QuotientElem&, const QuotientElem&);
  friend QuotientElem operator*(const QuotientElem&, const QuotientElem&);
  bool operator==(const QuotientElem& o) const { return rep_ == o.rep_; }
  bool operator!=(const QuotientElem& o) const { return !(*this == o); }

 private:
  std::shared_ptr<const Poly> modulus_;
  Poly rep_;
};

// A proper monic divisor of the modulus discovered while trying to invert a
// zero divisor.
struct ZeroDivisorWitness {
  Poly factor;
};

QuotientElem qr_pow(const QuotientElem& e, const Int& n);
std::variant<QuotientElem, ZeroDivisorWitness> qr_inv(const QuotientElem& e);

// r mod m_i == r_i for pairwise coprime moduli; returns (r, prod m_i) with
// 0 <= r < prod.
std::pair<Int, Int> crt_combine(const std::vector<std::pair<Int, Int>>& residues);

}  // namespace ffcount
