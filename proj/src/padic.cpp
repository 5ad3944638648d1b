#include "ffcount/padic.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <ostream>
#include <stdexcept>

#include "ffcount/textio.hpp"

namespace ffcount {

namespace {

using Clock = std::chrono::steady_clock;
using Vec = std::vector<Int>;

Vec vec_add(const Vec& a, const Vec& b, const Int& m) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] + b[i], m);
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b, const Int& m) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] - b[i], m);
  return r;
}

// multiply and reduce by the monic modulus, coefficients mod 2^N
Vec vec_mulmod(const Vec& a, const Vec& b, const Vec& modulus, const Int& m,
               unsigned d) {
  if (d == 1) return {mod(a[0] * b[0], m)};
  Vec prod(2 * d - 1, Int(0));
  for (size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < d; ++j) prod[i + j] += a[i] * b[j];
  }
  for (size_t i = 2 * d - 2; i >= d; --i) {
    Int c = mod(prod[i], m);
    if (c != 0)
      for (size_t j = 0; j < d; ++j)
        prod[i - d + j] -= c * modulus[j];
    if (i == d) break;
  }
  Vec r(d);
  for (size_t i = 0; i < d; ++i) r[i] = mod(prod[i], m);
  return r;
}

}  // namespace

PadicCtxPtr PadicCtx::make(const FieldCtxPtr& f2_ctx, unsigned N) {
  if (f2_ctx->p() != 2)
    throw std::invalid_argument("padic_ctx: base field must have p = 2");
  if (N < 8) throw std::invalid_argument("padic_ctx: need N >= 8");
  auto ctx = std::shared_ptr<PadicCtx>(new PadicCtx());
  ctx->d_ = f2_ctx->d();
  ctx->N_ = N;
  ctx->two_N_ = Int(1) << N;
  ctx->base_ = f2_ctx;
  unsigned d = ctx->d_;
  if (d == 1) return ctx;

  Vec& f = ctx->modulus_;
  f.resize(d + 1);
  for (unsigned i = 0; i <= d; ++i) f[i] = f2_ctx->modulus()[i];

  // Newton iteration for the root of f congruent to x^2 mod 2. Derivatives
  // and inverses live in the same quotient ring; the mod-2 inverse seed comes
  // from the residue field.
  const Int& m = ctx->two_N_;
  auto eval_poly = [&](const Vec& s) {
    Vec acc(d, Int(0));
    acc[0] = f[d];
    for (unsigned i = d; i-- > 0;) {
      acc = vec_mulmod(acc, s, f, m, d);
      acc[0] = mod(acc[0] + f[i], m);
    }
    return acc;
  };
  auto eval_deriv = [&](const Vec& s) {
    Vec acc(d, Int(0));
    acc[0] = mod(Int(d) * f[d], m);
    for (unsigned i = d; i-- > 1;) {
      acc = vec_mulmod(acc, s, f, m, d);
      acc[0] = mod(acc[0] + Int(i) * f[i], m);
    }
    return acc;
  };
  auto unit_inv = [&](const Vec& u) {
    // seed: inverse in F_{2^d}
    std::vector<Int> bits(d);
    for (unsigned i = 0; i < d; ++i) bits[i] = mod(u[i], 2);
    FieldElement u0 = f2_ctx->from_coeffs(bits);
    if (u0.is_zero()) throw std::domain_error("padic: inverse of a non-unit");
    FieldElement v0 = u0.inv();
    Vec v(d);
    for (unsigned i = 0; i < d; ++i) v[i] = v0.coeffs()[i];
    unsigned k = 1;
    while (k < ctx->N_) {
      k = std::min(2 * k, ctx->N_);
      // v <- v (2 - u v)
      Vec uv = vec_mulmod(u, v, f, m, d);
      Vec two_minus(d, Int(0));
      two_minus[0] = 2;
      two_minus = vec_sub(two_minus, uv, m);
      v = vec_mulmod(v, two_minus, f, m, d);
    }
    return v;
  };

  Vec s(d, Int(0));
  if (d >= 3) {
    s[2] = 1;  // x^2
  } else {
    // d == 2: x^2 reduced by the modulus
    s[0] = mod(-f[0], m);
    s[1] = mod(-f[1], m);
  }
  unsigned k = 1;
  while (k < N) {
    k = std::min(2 * k, N);
    Vec val = eval_poly(s);
    Vec der = eval_deriv(s);
    Vec corr = vec_mulmod(val, unit_inv(der), f, m, d);
    s = vec_sub(s, corr, m);
  }
  // sanity: f(s) = 0 and s = x^2 mod 2
  Vec check = eval_poly(s);
  for (const Int& c : check)
    if (c != 0) throw std::logic_error("padic_ctx: Newton did not converge");
  ctx->sigma_x_ = std::move(s);
  return ctx;
}

PadicElem PadicCtx::zero() const {
  return PadicElem(shared_from_this(), Vec(d_, Int(0)), N_);
}

PadicElem PadicCtx::one() const { return from_int(1); }

PadicElem PadicCtx::from_int(const Int& n) const {
  Vec c(d_, Int(0));
  c[0] = mod(n, two_N_);
  return PadicElem(shared_from_this(), std::move(c), N_);
}

PadicElem PadicCtx::lift(const FieldElement& a) const {
  if (!a.ctx()->same_field(*base_))
    throw std::invalid_argument("padic lift: wrong base field");
  Vec c(d_);
  for (unsigned i = 0; i < d_; ++i) c[i] = a.coeffs()[i];
  return PadicElem(shared_from_this(), std::move(c), N_);
}

PadicElem PadicCtx::from_coeffs(std::vector<Int> c, unsigned prec) const {
  if (c.size() != d_) throw std::invalid_argument("padic: wrong coefficient count");
  for (auto& x : c) x = mod(x, two_N_);
  return PadicElem(shared_from_this(), std::move(c), std::min(prec, N_));
}

Int PadicElem::coeff_mod_prec(size_t i) const {
  return mod(c_[i], Int(1) << prec_);
}

PadicElem PadicElem::with_prec(unsigned p) const {
  return PadicElem(ctx_, c_, std::min(p, ctx_->N()));
}

bool PadicElem::is_unit() const {
  for (const auto& x : c_)
    if (mpz_odd_p(x.get_mpz_t())) return true;
  return false;
}

PadicElem PadicElem::operator-() const {
  Vec r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = mod(-c_[i], ctx_->two_N());
  return PadicElem(ctx_, std::move(r), prec_);
}

PadicElem operator+(const PadicElem& a, const PadicElem& b) {
  return PadicElem(a.ctx_, vec_add(a.c_, b.c_, a.ctx_->two_N()),
                   std::min(a.prec_, b.prec_));
}

PadicElem operator-(const PadicElem& a, const PadicElem& b) {
  return PadicElem(a.ctx_, vec_sub(a.c_, b.c_, a.ctx_->two_N()),
                   std::min(a.prec_, b.prec_));
}

PadicElem operator*(const PadicElem& a, const PadicElem& b) {
  return PadicElem(a.ctx_,
                   vec_mulmod(a.c_, b.c_, a.ctx_->modulus(), a.ctx_->two_N(),
                              a.ctx_->d()),
                   std::min(a.prec_, b.prec_));
}

PadicElem padic_inv(const PadicElem& b) {
  if (!b.is_unit()) throw std::domain_error("padic: division by a non-unit");
  const auto& ctx = b.ctx_;
  unsigned d = ctx->d();
  const Int& m = ctx->two_N();
  if (d == 1)
    return PadicElem(ctx, {invmod(b.c_[0], m)}, b.prec_);
  // Newton v <- v (2 - b v) from the residue-field inverse
  std::vector<Int> bits(d);
  for (unsigned i = 0; i < d; ++i) bits[i] = mod(b.c_[i], 2);
  FieldElement v0 = ctx->base()->from_coeffs(bits).inv();
  Vec v(d);
  for (unsigned i = 0; i < d; ++i) v[i] = v0.coeffs()[i];
  unsigned k = 1;
  while (k < ctx->N()) {
    k = std::min(2 * k, ctx->N());
    Vec uv = vec_mulmod(b.c_, v, ctx->modulus(), m, d);
    Vec two_minus(d, Int(0));
    two_minus[0] = 2;
    two_minus = vec_sub(two_minus, uv, m);
    v = vec_mulmod(v, two_minus, ctx->modulus(), m, d);
  }
  return PadicElem(ctx, std::move(v), b.prec_);
}

PadicElem padic_div(const PadicElem& a, const PadicElem& b) {
  return a * padic_inv(b);
}

PadicElem padic_shift_down(const PadicElem& a, unsigned k) {
  if (a.prec_ < k + 1)
    throw std::domain_error("padic: precision exhausted by shift");
  Vec r(a.c_.size());
  Int twok = Int(1) << k;
  for (size_t i = 0; i < a.c_.size(); ++i) {
    Int v = mod(a.c_[i], Int(1) << a.prec_);
    if (v % twok != 0)
      throw std::domain_error("padic: inexact division by a power of 2");
    r[i] = v / twok;
  }
  return PadicElem(a.ctx_, std::move(r), a.prec_ - k);
}

PadicElem frobenius_lift(const PadicElem& a) {
  const auto& ctx = a.ctx_;
  unsigned d = ctx->d();
  if (d == 1) return a;
  const Int& m = ctx->two_N();
  PadicElem s(ctx, ctx->sigma_x(), a.prec_);
  // Horner at sigma(x)
  PadicElem acc = ctx->from_int(0);
  acc = PadicElem(ctx, acc.coeffs(), a.prec_);
  for (unsigned i = d; i-- > 0;) {
    acc = acc * s;
    Vec c = acc.coeffs();
    c[0] = mod(c[0] + a.c_[i], m);
    acc = PadicElem(ctx, std::move(c), acc.prec());
  }
  return acc;
}

PadicElem padic_norm(const PadicElem& a) {
  if (!a.is_unit()) throw std::domain_error("padic_norm: unit required");
  const auto& ctx = a.ctx();
  PadicElem acc = a;
  PadicElem conj = a;
  for (unsigned i = 1; i < ctx->d(); ++i) {
    conj = frobenius_lift(conj);
    acc = acc * conj;
  }
  // the norm is rational: non-constant coefficients vanish at precision
  for (size_t i = 1; i < acc.coeffs().size(); ++i)
    if (acc.coeff_mod_prec(i) != 0)
      throw std::logic_error("padic_norm: result not in Z_2");
  return acc;
}

PadicElem sqrt_1mod8(const PadicElem& u) {
  const auto& ctx = u.ctx();
  if (u.prec() < 4) throw std::domain_error("sqrt_1mod8: need precision >= 4");
  if (mod(u.coeffs()[0], 8) != 1)
    throw std::domain_error("sqrt_1mod8: input must be 1 mod 8");
  for (size_t i = 1; i < u.coeffs().size(); ++i)
    if (mod(u.coeffs()[i], 8) != 0)
      throw std::domain_error("sqrt_1mod8: input must be 1 mod 8");

  // write s = 1 + 4t; then t satisfies 2t^2 + t = (u - 1)/8, a Hensel lift
  // with unit derivative 4t + 1. Seeding with t = c makes the first residual
  // 2c^2, which is divisible by 2, so the valuation doubles from there.
  PadicElem c = padic_shift_down(u - ctx->one(), 3);
  PadicElem t = c;
  unsigned k = 1;
  while (k < c.prec()) {
    k = std::min(2 * k, c.prec());
    PadicElem g = ctx->from_int(2) * t * t + t - c;
    PadicElem gp = ctx->from_int(4) * t + ctx->one();
    t = t - padic_div(g, gp);
  }
  PadicElem s = ctx->one() + ctx->from_int(4) * t;
  // t is pinned mod 2^(prec(u)-3), so s is good one bit shy of the input
  return s.with_prec(u.prec() - 1);
}

AgmState agm_step(const AgmState& st) {
  const auto& ctx = st.xi.ctx();
  PadicElem root = sqrt_1mod8(st.xi);
  PadicElem half = padic_shift_down(st.xi + ctx->one(), 1);
  PadicElem next = padic_div(half, root);
  if (mod(next.coeffs()[0], 8) != 1)
    throw std::logic_error("agm_step: xi = 1 mod 8 violated");
  for (size_t i = 1; i < next.coeffs().size(); ++i)
    if (mod(next.coeff_mod_prec(i), 8) != 0)
      throw std::logic_error("agm_step: xi = 1 mod 8 violated");
  return AgmState{next, st.n + 1};
}

CountResult agm_count(const Curve& E, std::ostream* trace_log) {
  auto t0 = Clock::now();
  const auto& fctx = E.ctx();
  if (fctx->p() != 2)
    throw std::invalid_argument("agm_count: base field must have p = 2");
  if (E.is_short() || !E.a1().is_one() || !E.a2().is_zero() ||
      !E.a3().is_zero() || !E.a4().is_zero())
    throw std::invalid_argument(
        "agm_count: curve must be y^2 + xy = x^3 + c");
  FieldElement c = E.a6();
  if (c.is_zero())
    throw std::invalid_argument("agm_count: supersingular curve (c = 0)");

  unsigned d = fctx->d();
  unsigned nstar = std::max(4u, d / 2 + 3);
  // Two spare iterations: with the plain coefficient lift as xi_4 the trace
  // congruence is reliable one bit below the state index, so running to
  // nstar + 2 leaves margin before extracting mod 2^nstar.
  unsigned nrun = nstar + 2;
  unsigned N = nrun + 2 * (nrun - 4) + 8;
  auto ctx = PadicCtx::make(fctx, N);

  // xi_4 = 1 + 8 c-hat with the {0,1} coefficient lift of c
  AgmState st{ctx->one() + ctx->from_int(8) * ctx->lift(c), 4};
  if (trace_log)
    *trace_log << "n=" << st.n << " prec=" << st.xi.prec() << "\n";
  while (st.n < nrun) {
    st = agm_step(st);
    if (trace_log)
      *trace_log << "n=" << st.n << " prec=" << st.xi.prec() << "\n";
  }

  PadicElem mu = padic_div(st.xi, padic_shift_down(st.xi + ctx->one(), 1));
  if (mod(mu.coeffs()[0], 4) != 1)
    throw std::logic_error("agm_count: mu = 1 mod 4 violated");
  PadicElem nrm = padic_norm(mu);
  if (nrm.prec() < nstar)
    throw std::logic_error("agm_count: precision fell below the target");

  const Int& q = fctx->q();
  Int M = Int(1) << nstar;
  Int tn = mod(nrm.coeff_mod_prec(0), M);
  // t = t_n + q / t_n mod 2^nstar, then the Hasse bound picks the lift
  Int T = mod(tn + mod(q, M) * invmod(tn, M), M);
  Int t;
  bool found = false;
  for (const Int& cand : {T, Int(T - M)}) {
    if (cand * cand <= 4 * q) {
      if (found) throw std::logic_error("agm_count: ambiguous trace lift");
      t = cand;
      found = true;
    }
  }
  if (!found) throw std::logic_error("agm_count: no trace lift in Hasse range");

  CountResult res;
  res.q = q;
  res.curve = format_curve(E);
  res.method = "agm";
  res.n_points = q + 1 - t;
  res.trace = t;
  res.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return res;
}

}  // namespace ffcount
