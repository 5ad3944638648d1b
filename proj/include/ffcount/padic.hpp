// Truncated unramified 2-adic arithmetic Z_q mod 2^N with per-element
// precision tracking, the Frobenius lift sigma, square roots of units
// congruent to 1 mod 8, norms to Z_2, and the 2-adic AGM point count for
// ordinary curves y^2 + xy = x^3 + c over F_{2^d}.
#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

#include "ffcount/counting.hpp"
#include "ffcount/ffield.hpp"

namespace ffcount {

class PadicCtx;
class PadicElem;
using PadicCtxPtr = std::shared_ptr<const PadicCtx>;

// Z_2[x]/(modulus) mod 2^N, modulus the coefficientwise {0,1} lift of the
// F_2 modulus of the base field; sigma(x) is the root of the modulus with
// sigma(x) = x^2 mod 2, found by Newton iteration.
class PadicCtx : public std::enable_shared_from_this<PadicCtx> {
 public:
  static PadicCtxPtr make(const FieldCtxPtr& f2_ctx, unsigned N);

  unsigned d() const { return d_; }
  unsigned N() const { return N_; }
  const Int& two_N() const { return two_N_; }
  const std::vector<Int>& modulus() const { return modulus_; }
  const FieldCtxPtr& base() const { return base_; }
  const std::vector<Int>& sigma_x() const { return sigma_x_; }

  PadicElem zero() const;
  PadicElem one() const;
  PadicElem from_int(const Int& n) const;
  // coefficientwise lift of an F_{2^d} element, exact at precision N
  PadicElem lift(const FieldElement& a) const;
  PadicElem from_coeffs(std::vector<Int> c, unsigned prec) const;

 private:
  PadicCtx() = default;

  unsigned d_ = 1;
  unsigned N_ = 0;
  Int two_N_;
  std::vector<Int> modulus_;  // size d+1, monic; empty for d == 1
  std::vector<Int> sigma_x_;  // size d; empty for d == 1
  FieldCtxPtr base_;
};

class PadicElem {
 public:
  PadicElem() = default;

  const PadicCtxPtr& ctx() const { return ctx_; }
  // size d, entries in [0, 2^N); bits at or above prec are not meaningful
  const std::vector<Int>& coeffs() const { return c_; }
  unsigned prec() const { return prec_; }
  Int coeff_mod_prec(size_t i) const;
  // caller-asserted precision adjustment (capped at N)
  PadicElem with_prec(unsigned p) const;

  bool is_unit() const;  // constant term odd is necessary and sufficient? no:
                         // unit iff reduction mod 2 is nonzero in F_{2^d}

  PadicElem operator-() const;
  friend PadicElem operator+(const PadicElem&, const PadicElem&);
  friend PadicElem operator-(const PadicElem&, const PadicElem&);
  friend PadicElem operator*(const PadicElem&, const PadicElem&);

 private:
  PadicElem(PadicCtxPtr ctx, std::vector<Int> c, unsigned prec)
      : ctx_(std::move(ctx)), c_(std::move(c)), prec_(prec) {}

  PadicCtxPtr ctx_;
  std::vector<Int> c_;
  unsigned prec_ = 0;

  friend class PadicCtx;
  friend PadicElem padic_inv(const PadicElem&);
  friend PadicElem padic_shift_down(const PadicElem&, unsigned);
  friend PadicElem frobenius_lift(const PadicElem&);
};

// b must be a unit; result precision is min of the operands'.
PadicElem padic_inv(const PadicElem& b);
PadicElem padic_div(const PadicElem& a, const PadicElem& b);
// divide by 2^k; every coefficient must be divisible, costs k bits of
// precision
PadicElem padic_shift_down(const PadicElem& a, unsigned k);

// sigma(a) = a evaluated at sigma(x); reduces to Frobenius mod 2.
PadicElem frobenius_lift(const PadicElem& a);

// product of the d Frobenius conjugates, a constant of Z_2; precision kept.
PadicElem padic_norm(const PadicElem& a);

// the unique square root congruent to 1 mod 4 of u = 1 mod 8; one bit of
// precision is lost.
PadicElem sqrt_1mod8(const PadicElem& u);

struct AgmState {
  PadicElem xi;  // = 1 mod 8 throughout
  unsigned n = 4;
};

// xi_{n+1} = (1 + xi_n) / (2 sqrt(xi_n))
AgmState agm_step(const AgmState& s);

// Exact count for the ordinary curve y^2 + xy = x^3 + c, c != 0, given as a
// general-model Curve with a1 = 1 and a2 = a3 = a4 = 0 over F_{2^d}. The
// optional stream receives one line per iteration: "n=<n> prec=<bits>".
CountResult agm_count(const Curve& E, std::ostream* trace_log = nullptr);

}  // namespace ffcount
