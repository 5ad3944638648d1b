// Zeta functions of varieties over finite fields: the elliptic zeta from the
// trace, count sequences via Newton's identities (no root extraction),
// brute-force counting of affine varieties over extension fields, rational
// reconstruction of Z(X, t) from counts, and the Weil-modulus diagnostic.
#pragma once

#include <string>
#include <vector>

#include "ffcount/textio.hpp"

namespace ffcount {

// P1 / P2 with integer coefficients, both constant term 1, coprime.
class ZetaFn {
 public:
  // lowest degree first; validates and reduces to lowest terms
  ZetaFn(std::vector<Int> num, std::vector<Int> den);

  const std::vector<Int>& num() const { return num_; }
  const std::vector<Int>& den() const { return den_; }
  bool operator==(const ZetaFn& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }

 private:
  std::vector<Int> num_, den_;
};

struct CountSeq {
  Int q;                    // base field size the counts refer to
  std::vector<Int> counts;  // N_1 .. N_K
};

// (1 - t_E t + q t^2) / ((1 - t)(1 - q t)); requires |t_E| <= 2 sqrt(q).
ZetaFn zeta_elliptic(const Int& q, const Int& t_E);

// N_k = sum beta_j^k - sum alpha_j^k through Newton's identities on the
// coefficients of den and num.
CountSeq zeta_to_counts(const ZetaFn& Z, unsigned K, const Int& q = 0);

inline const Int kDefaultBruteGuard = Int(1) << 26;

// Number of common zeros in F_{q^k}^n of the system, by full enumeration;
// q^{kn} must stay within the guard. The extension field and the embedding
// of the coefficients are constructed deterministically.
Int brute_force_variety_count(const VarietySystem& sys, unsigned k,
                              const Int& guard = kDefaultBruteGuard);
// Single-threaded reference for the OpenMP kernel above.
Int brute_force_variety_count_serial(const VarietySystem& sys, unsigned k,
                                     const Int& guard = kDefaultBruteGuard);

// The unique rational function with deg P1 + deg P2 <= degree_bound
// reproducing the counts: exact-rational series exponential followed by a
// Pade approximant (extended Euclid), integrality checks, and a full
// round-trip verification. Throws when the counts are inconsistent or the
// bound is too small. Requires counts.size() >= 2 * degree_bound + 1.
ZetaFn counts_to_zeta(const CountSeq& seq, unsigned degree_bound);

// Bombieri's degree budget (4a + 9)^(n + m) for n variables, m equations of
// degree at most a.
Int bombieri_bound(unsigned nvars, unsigned m_eqs, unsigned a_deg);

// Advisory numeric check that every reciprocal root has modulus q^{s/2}.
struct WeilReport {
  struct Entry {
    bool from_numerator;
    double modulus;
    int nearest_s;
    double rel_dev;
    bool flagged;
  };
  std::vector<Entry> roots;
  bool any_flagged = false;
};

WeilReport weil_modulus_check(const ZetaFn& Z, const Int& q, unsigned dim,
                              double rel_tol = 1e-6);

}  // namespace ffcount
