// Schoof's deterministic point counting: division polynomials, the torsion
// algebra F_q[x, y]/(psi_ell(x), y^2 - x^3 - a x - b), the trace of Frobenius
// modulo each small prime, and the CRT / Hasse-interval finish.
#pragma once

#include <iosfwd>
#include <vector>

#include "ffcount/counting.hpp"
#include "ffcount/polyring.hpp"

namespace ffcount {

// psi_m with the y factor stripped from even indices: entry m holds psi_m for
// odd m and psi_m / y for even m, both univariate in x after eliminating y^2
// through the curve equation.
struct DivPolyCache {
  unsigned lmax = 0;
  std::vector<Poly> psi;
};

// Cache for all indices up to lmax; short model, p > 3.
DivPolyCache division_polys(const Curve& E, unsigned lmax);

// t mod 2: even iff x^3 + ax + b has a root in F_q, detected through
// gcd(x^q - x, f).
int trace_mod_2(const Curve& E);

// Per-ell diagnostics for the optional trace log.
struct EllTrace {
  unsigned ell = 0;
  unsigned long residue = 0;
  int dim = 0;        // degree of the final working modulus
  unsigned restarts = 0;
};

// The unique residue t mod ell with pi^2 + q = t pi on E[ell]; odd prime ell,
// ell != p, ell <= cache.lmax. Zero-divisor witnesses met along the way
// replace the working modulus by a proper factor and restart the search.
unsigned long trace_mod_ell(const Curve& E, unsigned ell,
                            const DivPolyCache& cache,
                            EllTrace* diag = nullptr);

struct PrimePlan {
  bool use_two = false;
  std::vector<unsigned> odd_primes;
  Int product;  // over all plan primes, > 4 sqrt(q)
};

// Smallest admissible set {2, odd primes ascending, p skipped} whose product
// L satisfies L^2 > 16 q.
PrimePlan make_prime_plan(const Int& q, const Int& p);

// Exact trace and count; the per-ell computations run as independent tasks
// (OpenMP) unless parallel is false. The optional stream receives one line
// per ell: "l=<l> t=<r> dim=<deg> restarts=<k>".
CountResult schoof_count(const Curve& E, bool parallel = true,
                         std::ostream* trace_log = nullptr);

}  // namespace ffcount
