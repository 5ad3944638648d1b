// Finite fields F_{p^d}: prime fields with arbitrary-precision p, extension
// fields presented as F_p[t]/(modulus), quadratic character and square roots.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ffcount/bigint.hpp"
#include "ffcount/rng.hpp"

namespace ffcount {

class FieldCtx;
class FieldElement;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

// Immutable field descriptor; shareable across threads. Elements keep a
// pointer to their context. For d > 1 the modulus is monic, irreducible of
// degree d over F_p, coefficients lowest degree first (size d + 1).
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
 public:
  // Prime field F_p.
  static FieldCtxPtr make(const Int& p);
  // Extension with an explicit modulus (validated monic, degree d,
  // irreducible).
  static FieldCtxPtr make(const Int& p, unsigned d,
                          const std::vector<Int>& modulus);
  // Extension with a modulus found by random sampling + irreducibility test.
  static FieldCtxPtr make(const Int& p, unsigned d, Rng& rng);

  const Int& p() const { return p_; }
  unsigned d() const { return d_; }
  const Int& q() const { return q_; }
  // Empty for d == 1.
  const std::vector<Int>& modulus() const { return modulus_; }

  FieldElement zero() const;
  FieldElement one() const;
  // The class of t for d > 1.
  FieldElement gen() const;
  // Constant embedding of n mod p.
  FieldElement from_int(const Int& n) const;
  // Coefficients lowest degree first, reduced mod p; at most d of them.
  FieldElement from_coeffs(const std::vector<Int>& coeffs) const;

  // Mixed-radix enumeration of all q elements, index in [0, q).
  FieldElement element_at(const Int& index) const;
  Int index_of(const FieldElement& a) const;

  FieldElement random_element(Rng& rng) const;

  bool same_field(const FieldCtx& other) const;

 private:
  FieldCtx() = default;
  static FieldCtxPtr finish(const Int& p, unsigned d, std::vector<Int> modulus);

  Int p_;
  unsigned d_ = 1;
  Int q_;
  std::vector<Int> modulus_;

  friend class FieldElement;
};

// Elements reference their context without owning it: the FieldCtx (held
// alive by whoever built it, typically through a FieldCtxPtr, a Curve or a
// Poly) must outlive its elements. Keeping the reference non-owning lets
// OpenMP kernels copy elements freely without contending on a shared
// reference count.
class FieldElement {
 public:
  FieldElement() = default;  // empty, usable only as a placeholder

  const FieldCtx* ctx() const { return ctx_; }
  // Always size d, entries in [0, p).
  const std::vector<Int>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;

  FieldElement operator-() const;
  FieldElement inv() const;           // throws on zero
  FieldElement pow(const Int& n) const;  // negative n inverts first

  friend FieldElement operator+(const FieldElement&, const FieldElement&);
  friend FieldElement operator-(const FieldElement&, const FieldElement&);
  friend FieldElement operator*(const FieldElement&, const FieldElement&);
  friend FieldElement operator/(const FieldElement&, const FieldElement&);
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  FieldElement(const FieldCtx* ctx, std::vector<Int> c)
      : ctx_(ctx), c_(std::move(c)) {}

  const FieldCtx* ctx_ = nullptr;
  std::vector<Int> c_;

  friend class FieldCtx;
  friend void check_same_ctx(const FieldElement&, const FieldElement&);
};

// Quadratic character of F_q, odd p only: 1 for nonzero squares, 0 for zero,
// -1 otherwise.
int legendre_chi(const FieldElement& a);

// Square root when legendre_chi(a) >= 0; canonical representative: for d = 1
// the root with integer value <= (p-1)/2, for d > 1 the lexicographically
// smaller coefficient vector of the pair {b, -b}. Tonelli-Shanks needs a
// random non-residue; rng = nullptr uses a private Rng(0), keeping the output
// deterministic either way.
FieldElement sqrt_mod(const FieldElement& a, Rng* rng = nullptr);

// a^p, the generator of Gal(F_q / F_p).
FieldElement frobenius(const FieldElement& a);

// Random element with legendre_chi == -1; odd p only.
FieldElement random_nonsquare(const FieldCtxPtr& ctx, Rng& rng);

}  // namespace ffcount
