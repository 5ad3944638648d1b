#include "ffcount/counting.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "ffcount/textio.hpp"

namespace ffcount {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Jacobi symbol (a | n) for odd n > 0, machine-word path.
int jacobi_u64(std::uint64_t a, std::uint64_t n) {
  int t = 1;
  a %= n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      std::uint64_t r = n & 7;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return (std::uint64_t)((unsigned __int128)a * b % m);
}

// Bit-packed F_{2^d} arithmetic for the characteristic-2 counting kernel.
struct Gf2m {
  unsigned d;
  std::uint64_t modbits;   // modulus with the monic bit set
  std::uint64_t trace_mask;

  explicit Gf2m(const FieldCtx& ctx) : d(ctx.d()) {
    modbits = 0;
    if (d == 1) {
      modbits = 2;  // t
    } else {
      const auto& m = ctx.modulus();
      for (unsigned i = 0; i <= d; ++i)
        if (m[i] == 1) modbits |= (std::uint64_t)1 << i;
    }
    trace_mask = 0;
    for (unsigned j = 0; j < d; ++j) {
      std::uint64_t e = (std::uint64_t)1 << j;
      std::uint64_t s = e;
      std::uint64_t tr = 0;
      for (unsigned i = 0; i < d; ++i) {
        tr ^= s;
        s = mul(s, s);
      }
      // trace of x^j is the parity captured in bit 0 after summing conjugates
      if (tr & 1) trace_mask |= e;
    }
  }

  std::uint64_t reduce(std::uint64_t v, unsigned top) const {
    for (unsigned i = top + 1; i-- > d;)
      if (v & ((std::uint64_t)1 << i)) v ^= modbits << (i - d);
    return v & (((std::uint64_t)1 << d) - 1);
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t acc = 0;
    unsigned top = 0;
    for (unsigned i = 0; i < d; ++i)
      if (b & ((std::uint64_t)1 << i)) {
        acc ^= a << i;
        top = i;
      }
    return reduce(acc, d - 1 + top);
  }

  std::uint64_t sqr(std::uint64_t a) const { return mul(a, a); }

  std::uint64_t inv(std::uint64_t a) const {
    // a^(2^d - 2) = a^2 * a^4 * ... * a^(2^(d-1))
    std::uint64_t r = 1, base = a;
    for (unsigned i = 1; i < d; ++i) {
      base = sqr(base);
      r = mul(r, base);
    }
    return r;
  }

  int trace(std::uint64_t a) const {
    return __builtin_popcountll(a & trace_mask) & 1;
  }
};

// y^2 + h y = v over F_{2^d} has 1 solution when h = 0, else 2 or 0 according
// to Tr(v / h^2).
Int count_char2(const Curve& E, bool parallel) {
  const auto& ctx = *E.ctx();
  unsigned d = ctx.d();
  if (d > 62) throw std::runtime_error("count_naive: char-2 degree too large");
  Gf2m gf(ctx);
  auto bits_of = [&](const FieldElement& e) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < d; ++i)
      if (e.coeffs()[i] == 1) v |= (std::uint64_t)1 << i;
    return v;
  };
  std::uint64_t a1 = bits_of(E.a1()), a2 = bits_of(E.a2()), a3 = bits_of(E.a3()),
                a4 = bits_of(E.a4()), a6 = bits_of(E.a6());
  std::uint64_t q = (std::uint64_t)1 << d;
  long long affine = 0;
#pragma omp parallel for reduction(+ : affine) schedule(static) if (parallel && d >= 12)
  for (long long xi = 0; xi < (long long)q; ++xi) {
    std::uint64_t x = (std::uint64_t)xi;
    std::uint64_t h = gf.mul(a1, x) ^ a3;
    std::uint64_t v =
        gf.mul(gf.mul(x ^ a2, x) ^ a4, x) ^ a6;  // x^3 + a2 x^2 + a4 x + a6
    if (h == 0) {
      affine += 1;  // squaring is a bijection
    } else {
      std::uint64_t hi = gf.inv(h);
      std::uint64_t w = gf.mul(v, gf.sqr(hi));
      if (gf.trace(w) == 0) affine += 2;
    }
  }
  return Int((long)affine) + 1;
}

// Completed-square cubic g with y' = y + (a1 x + a3)/2, so that counting
// points is 1 + sum over x of (1 + chi(g(x))).
void completed_square(const Curve& E, FieldElement& c3, FieldElement& c2,
                      FieldElement& c1, FieldElement& c0) {
  const auto& ctx = E.ctx();
  FieldElement inv4 = ctx->from_int(4).inv();
  FieldElement inv2 = ctx->from_int(2).inv();
  c3 = ctx->one();
  c2 = E.a2() + E.a1() * E.a1() * inv4;
  c1 = E.a4() + E.a1() * E.a3() * inv2;
  c0 = E.a6() + E.a3() * E.a3() * inv4;
}

Int count_odd_generic(const Curve& E, bool parallel) {
  const auto& ctx = E.ctx();
  FieldElement c3, c2, c1, c0;
  completed_square(E, c3, c2, c1, c0);
  const Int q = ctx->q();
  if (!fits_ulong(q))
    throw std::runtime_error("count_naive: field too large for enumeration");
  unsigned long qn = to_ulong(q);
  long long acc = 0;
#pragma omp parallel for reduction(+ : acc) schedule(static) if (parallel && qn >= 4096)
  for (long long i = 0; i < (long long)qn; ++i) {
    FieldElement x = ctx->element_at(Int((long)i));
    FieldElement g = ((x + c2) * x + c1) * x + c0;
    acc += legendre_chi(g);
  }
  return Int((long)acc) + q + 1;
}

// Machine-word kernel for prime fields.
Int count_odd_prime_u64(const Curve& E, bool parallel) {
  const auto& ctx = E.ctx();
  std::uint64_t p = to_ulong(ctx->p());
  FieldElement c3, c2, c1, c0;
  completed_square(E, c3, c2, c1, c0);
  std::uint64_t b2 = to_ulong(c2.coeffs()[0]);
  std::uint64_t b1 = to_ulong(c1.coeffs()[0]);
  std::uint64_t b0 = to_ulong(c0.coeffs()[0]);
  long long acc = 0;
#pragma omp parallel for reduction(+ : acc) schedule(static) if (parallel && p >= 4096)
  for (long long xi = 0; xi < (long long)p; ++xi) {
    std::uint64_t x = (std::uint64_t)xi;
    std::uint64_t g = mulmod_u64((x + b2) % p, x, p) + b1;
    g = mulmod_u64(g % p, x, p) + b0;
    g %= p;
    acc += jacobi_u64(g, p);
  }
  return Int((long)acc) + Int((unsigned long)p) + 1;
}

CountResult finish_result(const Curve& E, const char* method, Int n,
                          Clock::time_point t0) {
  CountResult r;
  r.q = E.ctx()->q();
  r.curve = format_curve(E);
  r.method = method;
  r.n_points = std::move(n);
  r.trace = r.q + 1 - r.n_points;
  r.ms = ms_since(t0);
  return r;
}

Int count_naive_impl(const Curve& E, const Int& guard, bool parallel) {
  const auto& ctx = E.ctx();
  if (ctx->q() > guard)
    throw std::runtime_error("count_naive: q exceeds the enumeration guard");
  if (ctx->p() == 2) return count_char2(E, parallel);
  if (ctx->d() == 1 && fits_ulong(ctx->p()) && to_ulong(ctx->p()) < ((std::uint64_t)1 << 31))
    return count_odd_prime_u64(E, parallel);
  return count_odd_generic(E, parallel);
}

}  // namespace

std::pair<Int, Int> hasse_window(const Int& q) {
  if (q < 1) throw std::invalid_argument("hasse_window: q must be >= 1");
  Int s = isqrt(4 * q);  // floor(2 sqrt q)
  return {q + 1 - s, q + 1 + s};
}

CountResult count_naive(const Curve& E, const Int& guard) {
  auto t0 = Clock::now();
  return finish_result(E, "naive", count_naive_impl(E, guard, true), t0);
}

CountResult count_naive_serial(const Curve& E, const Int& guard) {
  auto t0 = Clock::now();
  const auto& ctx = E.ctx();
  if (ctx->q() > guard)
    throw std::runtime_error("count_naive: q exceeds the enumeration guard");
  Int n;
  if (ctx->p() == 2) {
    if (ctx->q() <= 1024) {
      // full (x, y) scan
      unsigned long qn = to_ulong(ctx->q());
      Int affine = 0;
      for (unsigned long i = 0; i < qn; ++i)
        for (unsigned long j = 0; j < qn; ++j)
          if (on_curve(E, Point(ctx->element_at(Int(i)), ctx->element_at(Int(j)))))
            ++affine;
      n = affine + 1;
    } else {
      n = count_char2(E, false);
    }
  } else if (!fits_ulong(ctx->q())) {
    throw std::runtime_error("count_naive: field too large for enumeration");
  } else {
    // plain reference loop over field elements
    FieldElement c3, c2, c1, c0;
    completed_square(E, c3, c2, c1, c0);
    unsigned long qn = to_ulong(ctx->q());
    Int acc = 0;
    for (unsigned long i = 0; i < qn; ++i) {
      FieldElement x = ctx->element_at(Int((long)i));
      FieldElement g = ((x + c2) * x + c1) * x + c0;
      acc += legendre_chi(g);
    }
    n = acc + ctx->q() + 1;
  }
  return finish_result(E, "naive", n, t0);
}

namespace {

std::vector<std::uint64_t>& small_primes() {
  static std::vector<std::uint64_t> primes = [] {
    const std::uint64_t limit = 1000000;
    std::vector<bool> sieve(limit + 1, true);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (!sieve[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = i * i; j <= limit; j += i) sieve[j] = false;
    }
    return out;
  }();
  return primes;
}

// Exact order of P given an annihilating multiple m: strip the prime factors
// found by trial division up to 10^6; an unfactored cofactor stays in place.
Int refine_order(const Curve& E, const Point& P, Int m) {
  for (std::uint64_t f : small_primes()) {
    if (Int(f) * f > m) break;
    while (m % f == 0 && scalar_mul(E, m / f, P).is_infinity()) m /= f;
  }
  return m;
}

// number of multiples of L in [lo, hi], and the smallest one
std::pair<Int, Int> multiples_in(const Int& L, const Int& lo, const Int& hi) {
  Int first = ((lo + L - 1) / L) * L;
  if (first > hi) return {0, 0};
  Int count = (hi - first) / L + 1;
  return {count, first};
}

}  // namespace

CountResult count_bsgs(const Curve& E, Rng& rng, BsgsStats* stats,
                       const Int& naive_guard) {
  auto t0 = Clock::now();
  const auto& ctx = E.ctx();
  if (ctx->p() <= 3)
    throw std::invalid_argument("count_bsgs: requires p > 3");
  if (!E.is_short())
    throw std::invalid_argument("count_bsgs: short model required");
  const Int& q = ctx->q();
  if (q < 1373) {
    // Mestre's twist lemma is only guaranteed from here up
    CountResult r = count_naive_serial(E, naive_guard);
    r.method = "bsgs";
    r.ms = ms_since(t0);
    return r;
  }

  FieldElement omega = random_nonsquare(ctx, rng);
  Curve Etw = quadratic_twist(E, omega);
  auto [lo, hi] = hasse_window(q);
  Int radius = isqrt(4 * q);
  const Curve* curves[2] = {&E, &Etw};
  Int L[2] = {Int(1), Int(1)};

  for (int round = 0; round < 200; ++round) {
    int side = round % 2;
    Point P = random_point(*curves[side], rng);
    std::uint64_t ops = 0;
    std::vector<Int> ann =
        point_order_in_window(*curves[side], P, q + 1, radius, &ops);
    if (stats) {
      stats->samples += 1;
      stats->max_group_ops_per_sample =
          std::max(stats->max_group_ops_per_sample, ops);
    }
    if (ann.empty()) continue;  // cannot happen for points on the curve
    Int g = ann[0];
    for (size_t i = 1; i < ann.size(); ++i) g = gcd(g, ann[i]);
    Int ord = refine_order(*curves[side], P, g);
    L[side] = lcm(L[side], ord);
    auto [count, first] = multiples_in(L[side], lo, hi);
    if (count == 1) {
      Int n = side == 0 ? first : 2 * (q + 1) - first;
      return finish_result(E, "bsgs", n, t0);
    }
  }
  if (q <= naive_guard) {
    CountResult r = count_naive(E, naive_guard);
    r.method = "bsgs";
    r.ms = ms_since(t0);
    return r;
  }
  throw std::runtime_error(
      "count_bsgs: no unique order after 200 samples and q exceeds the naive guard");
}

namespace {

// prime power decomposition; throws if q is not one
void prime_power(const Int& q, Int& p, unsigned& e) {
  if (q < 2) throw std::invalid_argument("cornacchia: q must be a prime power");
  if (is_probable_prime(q)) {
    p = q;
    e = 1;
    return;
  }
  size_t bits = mpz_sizeinbase(q.get_mpz_t(), 2);
  for (unsigned k = 2; k <= bits; ++k) {
    Int r;
    if (mpz_root(r.get_mpz_t(), q.get_mpz_t(), k) != 0 && is_probable_prime(r)) {
      p = r;
      e = k;
      return;
    }
  }
  throw std::invalid_argument("cornacchia: q must be a prime power");
}

// square roots of a mod p^e (p odd, p not dividing a), from the prime-level
// root by Newton lifting
std::vector<Int> lift_sqrt_odd(const Int& a, const Int& p, unsigned e, Rng* rng) {
  auto fp = FieldCtx::make(p);
  FieldElement am = fp->from_int(a);
  if (am.is_zero()) {
    if (mod(a, pow_ui(p, e)) == 0) return {Int(0)};
    return {};  // p | a but p^e does not: unsupported non-unit case
  }
  if (legendre_chi(am) == -1) return {};
  Int u = sqrt_mod(am, rng).coeffs()[0];
  Int pk = p;
  for (unsigned k = 1; k < e; ++k) {
    // u <- u - (u^2 - a) / (2u)  mod p^{k+1}
    Int pk1 = pk * p;
    Int num = mod(u * u - a, pk1);
    Int den = invmod(mod(2 * u, pk1), pk1);
    u = mod(u - num * den, pk1);
    pk = pk1;
  }
  Int m = pow_ui(p, e);
  Int v = mod(-u, m);
  if (u == v) return {u};
  return {u, v};
}

// primitive solutions (gcd 1, x >= 1, y >= 1) of x^2 + D y^2 = N via Euclid
// on (N, u) for each square-root class u of -D mod N
std::set<std::pair<Int, Int>> cornacchia_primitive(const Int& D, const Int& N,
                                                   const Int& p, unsigned e,
                                                   bool n_has_factor4,
                                                   Rng* rng, bool* had_root) {
  std::set<std::pair<Int, Int>> out;
  // collect square roots of -D modulo N, where N = p^e or 4 p^e
  std::vector<Int> roots_q = lift_sqrt_odd(mod(-D, pow_ui(p, e)), p, e, rng);
  std::vector<Int> roots;
  Int pe = pow_ui(p, e);
  if (!n_has_factor4) {
    roots = roots_q;
  } else {
    std::vector<Int> roots4;
    Int m4 = mod(-D, 4);
    if (m4 == 0) roots4 = {Int(0), Int(2)};
    else if (m4 == 1) roots4 = {Int(1), Int(3)};
    for (const Int& r4 : roots4)
      for (const Int& rq : roots_q)
        roots.push_back(crt_combine({{r4, Int(4)}, {rq, pe}}).first);
  }
  if (roots.empty()) {
    if (had_root) *had_root = false;
    return out;
  }
  if (had_root) *had_root = true;

  std::set<Int> u_classes;
  for (const Int& r : roots) {
    // one representative per +-class, taken in (N/2, N)
    Int u = mod(r, N);
    if (2 * u < N) u = N - u;
    if (u > 0 && u < N) u_classes.insert(u);
  }
  auto push = [&](const Int& x, const Int& y) {
    if (x >= 1 && y >= 1 && x * x + D * y * y == N && gcd(x, y) == 1) {
      out.insert({x, y});
      if (D == 1) out.insert({y, x});
    }
  };
  for (const Int& u0 : u_classes) {
    Int a = N, b = u0;
    while (b > 0 && b * b >= N) {
      Int r = a % b;
      a = b;
      b = r;
    }
    if (b <= 0) continue;
    Int rem = N - b * b;
    if (rem % D != 0) continue;
    Int y2 = rem / D;
    Int y = isqrt(y2);
    if (y * y == y2) push(b, y);
  }
  return out;
}

}  // namespace

std::vector<std::pair<Int, Int>> cornacchia(const Int& D, const Int& q,
                                            Rng* rng) {
  if (D <= 0) throw std::invalid_argument("cornacchia: D must be positive");
  Int p;
  unsigned e = 0;
  prime_power(q, p, e);
  if (p == 2)
    throw std::invalid_argument("cornacchia: odd characteristic required");

  bool root4q = false, rootq = false, rootq4 = false;
  std::set<std::pair<Int, Int>> sols;
  // gcd-1 solutions of x^2 + D y^2 = 4q
  for (auto& s : cornacchia_primitive(D, 4 * q, p, e, true, rng, &root4q))
    sols.insert(s);
  // gcd-2 class: doubled primitive solutions of x^2 + D y^2 = q
  for (auto& s : cornacchia_primitive(D, q, p, e, false, rng, &rootq))
    sols.insert({2 * s.first, 2 * s.second});
  // D = 0 mod 4: x even with y odd comes from x'^2 + (D/4) y^2 = q
  if (D % 4 == 0) {
    for (auto& s : cornacchia_primitive(D / 4, q, p, e, false, rng, &rootq4))
      sols.insert({2 * s.first, s.second});
  } else {
    rootq4 = false;
  }
  if (!root4q && !rootq && !rootq4)
    throw std::domain_error("cornacchia: -D is not a square mod 4q");

  std::vector<std::pair<Int, Int>> out;
  for (const auto& s : sols) {
    if (s.first * s.first + D * s.second * s.second != 4 * q) continue;
    Int g = gcd(s.first, s.second);
    if (g == 1 || g == 2) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CountResult count_cm(const Curve& E, const Int& D, Rng& rng) {
  auto t0 = Clock::now();
  const auto& ctx = E.ctx();
  const Int& q = ctx->q();
  std::vector<Int> candidates;
  for (const auto& [x, y] : cornacchia(D, q, &rng)) {
    candidates.push_back(x);
    candidates.push_back(-x);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  if (candidates.empty())
    throw std::domain_error("count_cm: no Cornacchia solution for this D");

  // Alternate between E and its quadratic twist: a candidate t means
  // #E = q+1-t and #E' = q+1+t, and both counts must annihilate random
  // points. The twist side separates candidates that the exponent of E(F_q)
  // alone cannot (small full-torsion groups).
  std::optional<Curve> twist;
  if (E.is_short() && ctx->p() > 3)
    twist = quadratic_twist(E, random_nonsquare(ctx, rng));
  std::vector<Int> survivors = candidates;
  for (int trial = 0; trial < 50 && survivors.size() > 1; ++trial) {
    bool on_twist = twist && trial % 2 == 1;
    const Curve& side = on_twist ? *twist : E;
    Point P = random_point(side, rng);
    std::vector<Int> keep;
    for (const Int& t : survivors) {
      Int m = on_twist ? Int(q + 1 + t) : Int(q + 1 - t);
      if (scalar_mul(side, m, P).is_infinity()) keep.push_back(t);
    }
    survivors = std::move(keep);
    if (survivors.empty())
      throw std::domain_error(
          "count_cm: no candidate annihilates sampled points (wrong D?)");
  }
  if (survivors.size() != 1) {
    std::string msg = "count_cm: ambiguous trace candidates:";
    for (const Int& t : survivors) msg += " " + t.get_str();
    throw std::runtime_error(msg);
  }
  return finish_result(E, "cm", q + 1 - survivors[0], t0);
}

}  // namespace ffcount
