// Counting engines below Schoof: the Legendre-sum sweep (OpenMP kernel with a
// serial reference), baby-step/giant-step with Mestre's quadratic-twist
// argument, and Cornacchia's algorithm for CM curves. Shared Hasse-interval
// utilities live here too.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffcount/ecurve.hpp"

namespace ffcount {

struct CountResult {
  Int q;
  std::string curve;   // canonical curve text
  std::string method;  // naive | bsgs | schoof | agm | cm
  Int n_points;
  Int trace;
  double ms = 0.0;
};

inline const Int kDefaultNaiveGuard = Int(1) << 28;

// [q+1 - floor(2 sqrt q), q+1 + floor(2 sqrt q)]
std::pair<Int, Int> hasse_window(const Int& q);

// Exact count by summing the quadratic character of the right-hand side over
// all x (odd p; general models are handled by completing the square), or by
// counting y-solvability per x in characteristic 2.
CountResult count_naive(const Curve& E, const Int& guard = kDefaultNaiveGuard);
// Straight single-threaded loop, kept as the reference the kernels are
// checked against.
CountResult count_naive_serial(const Curve& E,
                               const Int& guard = kDefaultNaiveGuard);

struct BsgsStats {
  std::uint64_t samples = 0;
  std::uint64_t max_group_ops_per_sample = 0;
};

// Exact count via random point orders on E and its quadratic twist; p > 3,
// q >= 5. Below Mestre's q >= 1373 threshold this silently delegates to
// count_naive.
CountResult count_bsgs(const Curve& E, Rng& rng, BsgsStats* stats = nullptr,
                       const Int& naive_guard = kDefaultNaiveGuard);

// All (x, y), x >= 1, y >= 1, gcd(x, y) in {1, 2}, with x^2 + D y^2 = 4q,
// sorted by x. Square roots of -D are found mod p, lifted by Newton to p^e,
// and combined with the mod-4 classes; each candidate is verified by
// substitution. Throws when -D has no square root modulo 4q, q or 4.
std::vector<std::pair<Int, Int>> cornacchia(const Int& D, const Int& q,
                                            Rng* rng = nullptr);

// Trace from the Cornacchia candidates for a curve with CM by discriminant
// -D; the sign (and the solution) is singled out by testing (q+1-t)P = O on
// random points until a unique candidate survives.
CountResult count_cm(const Curve& E, const Int& D, Rng& rng);

}  // namespace ffcount
