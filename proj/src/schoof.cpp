#include "ffcount/schoof.hpp"

#include <omp.h>

#include <cassert>
#include <chrono>
#include <ostream>
#include <stdexcept>

#include "ffcount/textio.hpp"

namespace ffcount {

namespace {

using Clock = std::chrono::steady_clock;

void require_short(const Curve& E, const char* who) {
  if (E.ctx()->p() <= 3 || !E.is_short())
    throw std::invalid_argument(std::string(who) +
                                ": short model with p > 3 required");
}

}  // namespace

DivPolyCache division_polys(const Curve& E, unsigned lmax) {
  require_short(E, "division_polys");
  const auto& ctx = E.ctx();
  const FieldElement& a = E.short_model().a;
  const FieldElement& b = E.short_model().b;
  auto k = [&](long n) { return ctx->from_int(Int(n)); };

  DivPolyCache cache;
  cache.lmax = lmax;
  auto& s = cache.psi;
  s.assign(lmax + 1, Poly(ctx));
  // f = x^3 + a x + b; even-index entries are psi_m / y and carry f through
  // y^2 = f(x) eliminations.
  Poly f = Poly(ctx, {b, a, ctx->zero(), ctx->one()});
  Poly f2 = f * f;

  if (lmax >= 1) s[1] = Poly::constant(ctx, Int(1));
  if (lmax >= 2) s[2] = Poly::constant(ctx, Int(2));
  if (lmax >= 3)
    s[3] = Poly(ctx, {-(a * a), k(12) * b, k(6) * a, ctx->zero(), k(3)});
  if (lmax >= 4) {
    // 4 (x^6 + 5 a x^4 + 20 b x^3 - 5 a^2 x^2 - 4 a b x - 8 b^2 - a^3)
    s[4] = Poly(ctx, {k(-8) * b * b - a * a * a, k(-4) * a * b, k(-5) * a * a,
                      k(20) * b, k(5) * a, ctx->zero(), ctx->one()}) *
           k(4);
  }
  FieldElement inv2 = k(2).inv();
  for (unsigned m2 = 5; m2 <= lmax; ++m2) {
    unsigned m = m2 / 2;
    if (m2 % 2 == 1) {
      // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3
      Poly t1 = s[m + 2] * s[m] * s[m] * s[m];
      Poly t2 = s[m - 1] * s[m + 1] * s[m + 1] * s[m + 1];
      s[m2] = (m % 2 == 0) ? f2 * t1 - t2 : t1 - f2 * t2;
    } else {
      // psi_{2m} = (psi_m / 2y)(psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2)
      Poly t1 = s[m + 2] * s[m - 1] * s[m - 1];
      Poly t2 = s[m - 2] * s[m + 1] * s[m + 1];
      s[m2] = s[m] * (t1 - t2) * inv2;
    }
  }
  // degree sanity for odd prime indices away from p
  for (unsigned l = 3; l <= lmax; l += 2) {
    bool is_prime = l > 1;
    for (unsigned w = 2; w * w <= l; ++w)
      if (l % w == 0) is_prime = false;
    if (is_prime && Int(l) != ctx->p())
      assert(s[l].degree() == (int)((l * l - 1) / 2));
  }
  return cache;
}

int trace_mod_2(const Curve& E) {
  require_short(E, "trace_mod_2");
  const auto& ctx = E.ctx();
  Poly f = Poly(ctx, {E.short_model().b, E.short_model().a, ctx->zero(),
                      ctx->one()});
  auto fm = std::make_shared<const Poly>(f);
  QuotientElem x(fm, Poly::x(ctx));
  QuotientElem xq = qr_pow(x, ctx->q());
  Poly diff = (xq - x).rep();
  if (diff.is_zero()) return 0;  // every root rational
  Poly g = poly_gcd(diff, f);
  return g.degree() >= 1 ? 0 : 1;
}

namespace {

// Thrown inside the torsion-algebra arithmetic when an inversion meets a zero
// divisor; carries the discovered factor of the working modulus.
struct ZeroDivisor {
  Poly factor;
};

// Endomorphism image (X, y Y) of the tautological point, coordinates in
// F_q[x]/(m) with the y^2 = f(x) elimination carried by the caller.
struct Endo {
  bool inf = true;
  QuotientElem X, Y;
};

QuotientElem must_invert(const QuotientElem& e) {
  auto r = qr_inv(e);
  if (std::holds_alternative<ZeroDivisorWitness>(r))
    throw ZeroDivisor{std::get<ZeroDivisorWitness>(r).factor};
  return std::get<QuotientElem>(r);
}

struct TorsionAlgebra {
  std::shared_ptr<const Poly> m;
  QuotientElem f_img;  // class of x^3 + a x + b
  QuotientElem a_img;  // class of a
  QuotientElem two, three;

  Endo add(const Endo& A, const Endo& B) const {
    if (A.inf) return B;
    if (B.inf) return A;
    QuotientElem lam;
    if (A.X == B.X) {
      if (A.Y == -B.Y) return Endo{};  // includes the 2-torsion tangent
      if (A.Y == B.Y) {
        // lambda = y Lam, Lam = (3X^2 + a) / (2 f Y)
        QuotientElem den = two * f_img * A.Y;
        lam = (three * A.X * A.X + a_img) * must_invert(den);
      } else {
        // X agrees but Y is neither equal nor opposite: the ring splits
        Poly g = poly_gcd((A.Y - B.Y).rep(), *m);
        if (g.degree() < 1 || g.degree() >= m->degree())
          g = poly_gcd((A.Y + B.Y).rep(), *m);
        throw ZeroDivisor{g};
      }
    } else {
      lam = (B.Y - A.Y) * must_invert(B.X - A.X);
    }
    Endo R;
    R.inf = false;
    R.X = f_img * lam * lam - A.X - B.X;
    R.Y = lam * (A.X - R.X) - A.Y;
    return R;
  }

  Endo scalar(unsigned long n, const Endo& P) const {
    Endo r;
    Endo base = P;
    while (n > 0) {
      if (n & 1) r = add(r, base);
      n >>= 1;
      if (n > 0) base = add(base, base);
    }
    return r;
  }
};

}  // namespace

unsigned long trace_mod_ell(const Curve& E, unsigned ell,
                            const DivPolyCache& cache, EllTrace* diag) {
  require_short(E, "trace_mod_ell");
  if (ell < 3 || ell % 2 == 0 || ell > cache.lmax)
    throw std::invalid_argument("trace_mod_ell: need an odd prime <= lmax");
  const auto& ctx = E.ctx();
  if (Int(ell) == ctx->p())
    throw std::invalid_argument("trace_mod_ell: ell must differ from p");
  const Int& q = ctx->q();

  Poly f = Poly(ctx, {E.short_model().b, E.short_model().a, ctx->zero(),
                      ctx->one()});
  Poly modulus = cache.psi[ell].monic();
  unsigned restarts = 0;

  for (;;) {
    try {
      TorsionAlgebra A;
      A.m = std::make_shared<const Poly>(modulus);
      A.f_img = QuotientElem(A.m, f);
      A.a_img = QuotientElem(A.m, Poly::constant(ctx, E.short_model().a));
      A.two = QuotientElem(A.m, Poly::constant(ctx, Int(2)));
      A.three = QuotientElem(A.m, Poly::constant(ctx, Int(3)));

      QuotientElem x(A.m, Poly::x(ctx));
      QuotientElem one(A.m, Poly::constant(ctx, Int(1)));

      Endo taut{false, x, one};
      Endo pi{false, qr_pow(x, q), qr_pow(A.f_img, (q - 1) / 2)};
      Endo pi2{false, qr_pow(x, q * q), qr_pow(A.f_img, (q * q - 1) / 2)};

      unsigned long qk = to_ulong(mod(q, Int(ell)));
      Endo Q = A.scalar(qk, taut);
      Endo v = A.add(pi2, Q);
      unsigned long result = 0;
      if (!v.inf) {
        Endo w = pi;
        bool matched = false;
        for (unsigned long t = 1; 2 * t <= ell - 1; ++t) {
          if (w.X == v.X) {
            if (w.Y == v.Y) {
              result = t;
            } else if (w.Y == -v.Y) {
              result = ell - t;
            } else {
              Poly g = poly_gcd((w.Y - v.Y).rep(), modulus);
              if (g.degree() < 1 || g.degree() >= modulus.degree())
                g = poly_gcd((w.Y + v.Y).rep(), modulus);
              throw ZeroDivisor{g};
            }
            matched = true;
            break;
          }
          w = A.add(w, pi);
        }
        if (!matched)
          throw std::logic_error("trace_mod_ell: no candidate matched");
      }
      if (diag) {
        diag->ell = ell;
        diag->residue = result;
        diag->dim = modulus.degree();
        diag->restarts = restarts;
      }
      return result;
    } catch (const ZeroDivisor& zd) {
      // restart on the larger of the two pieces; either determines t mod ell
      Poly g = zd.factor.monic();
      if (g.degree() < 1 || g.degree() >= modulus.degree())
        throw std::logic_error("trace_mod_ell: bad zero-divisor witness");
      Poly h = poly_divmod(modulus, g).first.monic();
      Poly next = h.degree() >= g.degree() ? h : g;
      assert(next.degree() < modulus.degree() && next.degree() >= 1);
      modulus = next;
      ++restarts;
    }
  }
}

PrimePlan make_prime_plan(const Int& q, const Int& p) {
  PrimePlan plan;
  plan.product = 1;
  Int target = 16 * q;
  Int ell = 1;
  while (plan.product * plan.product <= target) {
    ell = next_prime(ell);
    if (ell == p) continue;
    if (ell == 2)
      plan.use_two = true;
    else
      plan.odd_primes.push_back((unsigned)to_ulong(ell));
    plan.product *= ell;
  }
  return plan;
}

CountResult schoof_count(const Curve& E, bool parallel,
                         std::ostream* trace_log) {
  auto t0 = Clock::now();
  require_short(E, "schoof_count");
  const auto& ctx = E.ctx();
  const Int& q = ctx->q();

  PrimePlan plan = make_prime_plan(q, ctx->p());
  unsigned lmax = plan.odd_primes.empty() ? 3 : plan.odd_primes.back();
  DivPolyCache cache = division_polys(E, lmax);

  std::vector<std::pair<Int, Int>> residues;
  std::vector<EllTrace> diags(plan.odd_primes.size());
  if (plan.use_two) residues.push_back({Int(trace_mod_2(E)), Int(2)});

  std::vector<Int> odd_residues(plan.odd_primes.size());
  std::exception_ptr fail;
#pragma omp parallel for schedule(dynamic) if (parallel && plan.odd_primes.size() > 1)
  for (long i = 0; i < (long)plan.odd_primes.size(); ++i) {
    try {
      unsigned ell = plan.odd_primes[(size_t)i];
      odd_residues[(size_t)i] =
          Int(trace_mod_ell(E, ell, cache, &diags[(size_t)i]));
    } catch (...) {
#pragma omp critical
      fail = std::current_exception();
    }
  }
  if (fail) std::rethrow_exception(fail);
  for (size_t i = 0; i < plan.odd_primes.size(); ++i)
    residues.push_back({odd_residues[i], Int(plan.odd_primes[i])});

  if (trace_log) {
    if (plan.use_two)
      *trace_log << "l=2 t=" << residues[0].first.get_str()
                 << " dim=3 restarts=0\n";
    for (const auto& d : diags)
      *trace_log << "l=" << d.ell << " t=" << d.residue << " dim=" << d.dim
                 << " restarts=" << d.restarts << "\n";
  }

  auto [r, L] = crt_combine(residues);
  // centered representative; |t| <= 2 sqrt(q) < L/2 picks it out uniquely
  Int t = r;
  if (2 * t > L) t -= L;
  if (t * t > 4 * q)
    throw std::logic_error("schoof_count: trace escaped the Hasse bound");
  Int n = q + 1 - t;
  auto [lo, hi] = hasse_window(q);
  if (n < lo || n > hi)
    throw std::logic_error("schoof_count: count escaped the Hasse window");

  CountResult res;
  res.q = q;
  res.curve = format_curve(E);
  res.method = "schoof";
  res.n_points = n;
  res.trace = t;
  res.ms =
      std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return res;
}

}  // namespace ffcount
