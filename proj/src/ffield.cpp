#include "ffcount/ffield.hpp"

#include <algorithm>
#include <stdexcept>

namespace ffcount {

namespace {

// Dense coefficient vectors over F_p, lowest degree first, no invariants
// about trailing zeros. Used for extension arithmetic and for the
// irreducibility test below.
using Vec = std::vector<Int>;

void vec_trim(Vec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

int vec_deg(const Vec& v) {
  for (int i = (int)v.size() - 1; i >= 0; --i)
    if (v[(size_t)i] != 0) return i;
  return -1;
}

Vec vec_mul(const Vec& a, const Vec& b, const Int& p) {
  if (a.empty() || b.empty()) return {};
  Vec r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  for (auto& x : r) x = mod(x, p);
  return r;
}

// Reduce a by the monic polynomial f, in place arithmetic mod p.
Vec vec_rem(Vec a, const Vec& f, const Int& p) {
  int df = vec_deg(f);
  for (int i = (int)a.size() - 1; i >= df; --i) {
    Int c = mod(a[(size_t)i], p);
    if (c == 0) continue;
    for (int j = 0; j < df; ++j)
      a[(size_t)(i - df + j)] = mod(a[(size_t)(i - df + j)] - c * f[(size_t)j], p);
    a[(size_t)i] = 0;
  }
  a.resize((size_t)std::max(df, 1));
  return a;
}

Vec vec_mulmod(const Vec& a, const Vec& b, const Vec& f, const Int& p) {
  return vec_rem(vec_mul(a, b, p), f, p);
}

Vec vec_powmod(Vec base, Int e, const Vec& f, const Int& p) {
  Vec r{Int(1)};
  r.resize(base.size(), Int(0));
  base = vec_rem(std::move(base), f, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = vec_mulmod(r, base, f, p);
    e >>= 1;
    if (e > 0) base = vec_mulmod(base, base, f, p);
  }
  return r;
}

// Monic gcd over F_p.
Vec vec_gcd(Vec a, Vec b, const Int& p) {
  vec_trim(a);
  vec_trim(b);
  while (!b.empty()) {
    // a mod b with b made monic on the fly
    Int lead_inv = invmod(b.back(), p);
    int db = (int)b.size() - 1;
    for (int i = (int)a.size() - 1; i >= db; --i) {
      Int c = mod(a[(size_t)i] * lead_inv, p);
      if (c != 0)
        for (int j = 0; j <= db; ++j)
          a[(size_t)(i - db + j)] = mod(a[(size_t)(i - db + j)] - c * b[(size_t)j], p);
    }
    vec_trim(a);
    std::swap(a, b);
  }
  if (!a.empty() && a.back() != 1) {
    Int li = invmod(a.back(), p);
    for (auto& x : a) x = mod(x * li, p);
  }
  return a;
}

// Extended gcd restricted to what inversion needs: returns u with
// a*u = gcd (mod f); gcd reported monic through *gcd_out.
Vec vec_inv_mod(const Vec& a, const Vec& f, const Int& p, Vec* gcd_out) {
  Vec r0 = f, r1 = vec_rem(a, f, p);
  vec_trim(r0);
  vec_trim(r1);
  Vec u0{}, u1{Int(1)};
  while (!r1.empty()) {
    // divide r0 by r1
    Vec q(std::max<size_t>(r0.size(), 1), Int(0));
    Vec rem = r0;
    Int li = invmod(r1.back(), p);
    int d1 = (int)r1.size() - 1;
    for (int i = (int)rem.size() - 1; i >= d1; --i) {
      Int c = mod(rem[(size_t)i] * li, p);
      if (c != 0) {
        q[(size_t)(i - d1)] = c;
        for (int j = 0; j <= d1; ++j)
          rem[(size_t)(i - d1 + j)] =
              mod(rem[(size_t)(i - d1 + j)] - c * r1[(size_t)j], p);
      }
    }
    vec_trim(rem);
    vec_trim(q);
    Vec qu1 = vec_mul(q, u1, p);
    Vec u2 = u0;
    u2.resize(std::max(u0.size(), qu1.size()), Int(0));
    for (size_t i = 0; i < qu1.size(); ++i) u2[i] = mod(u2[i] - qu1[i], p);
    vec_trim(u2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (!r0.empty() && r0.back() != 1) {
    Int li = invmod(r0.back(), p);
    for (auto& x : r0) x = mod(x * li, p);
    for (auto& x : u0) x = mod(x * li, p);
  }
  if (gcd_out) *gcd_out = r0;
  return u0;
}

bool vec_is_irreducible(const Vec& f, const Int& p, unsigned d) {
  // x^{p^d} == x mod f, and gcd(x^{p^{d/r}} - x, f) = 1 for primes r | d.
  Vec x{Int(0), Int(1)};
  Int pd = 1;
  for (unsigned i = 0; i < d; ++i) pd *= p;
  Vec xq = vec_powmod(x, pd, f, p);
  Vec diff = xq;
  diff.resize(std::max<size_t>(diff.size(), 2), Int(0));
  diff[1] = mod(diff[1] - 1, p);
  vec_trim(diff);
  if (!diff.empty()) return false;

  std::vector<unsigned> prime_divs;
  unsigned rest = d;
  for (unsigned r = 2; r * r <= rest; ++r)
    if (rest % r == 0) {
      prime_divs.push_back(r);
      while (rest % r == 0) rest /= r;
    }
  if (rest > 1) prime_divs.push_back(rest);

  for (unsigned r : prime_divs) {
    Int e = 1;
    for (unsigned i = 0; i < d / r; ++i) e *= p;
    Vec g = vec_powmod(x, e, f, p);
    g.resize(std::max<size_t>(g.size(), 2), Int(0));
    g[1] = mod(g[1] - 1, p);
    Vec gg = vec_gcd(g, f, p);
    if (vec_deg(gg) != 0) return false;
  }
  return true;
}

}  // namespace

FieldCtxPtr FieldCtx::finish(const Int& p, unsigned d, std::vector<Int> modulus) {
  auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
  ctx->p_ = p;
  ctx->d_ = d;
  ctx->q_ = 1;
  for (unsigned i = 0; i < d; ++i) ctx->q_ *= p;
  ctx->modulus_ = std::move(modulus);
  return ctx;
}

FieldCtxPtr FieldCtx::make(const Int& p) {
  if (p < 2 || !is_probable_prime(p))
    throw std::invalid_argument("field_make: p is not prime");
  return finish(p, 1, {});
}

FieldCtxPtr FieldCtx::make(const Int& p, unsigned d,
                           const std::vector<Int>& modulus) {
  if (p < 2 || !is_probable_prime(p))
    throw std::invalid_argument("field_make: p is not prime");
  if (d == 0) throw std::invalid_argument("field_make: d must be >= 1");
  if (d == 1) {
    if (!modulus.empty())
      throw std::invalid_argument("field_make: no modulus allowed for d = 1");
    return finish(p, 1, {});
  }
  if (modulus.size() != d + 1)
    throw std::invalid_argument("field_make: modulus must have degree d");
  Vec f(modulus.size());
  for (size_t i = 0; i < modulus.size(); ++i) f[i] = mod(modulus[i], p);
  if (f.back() != 1)
    throw std::invalid_argument("field_make: modulus must be monic");
  if (!vec_is_irreducible(f, p, d))
    throw std::invalid_argument("field_make: modulus is reducible");
  return finish(p, d, std::move(f));
}

FieldCtxPtr FieldCtx::make(const Int& p, unsigned d, Rng& rng) {
  if (p < 2 || !is_probable_prime(p))
    throw std::invalid_argument("field_make: p is not prime");
  if (d == 0) throw std::invalid_argument("field_make: d must be >= 1");
  if (d == 1) return finish(p, 1, {});
  for (;;) {
    Vec f(d + 1);
    f[d] = 1;
    for (unsigned i = 0; i < d; ++i) f[i] = rng.below(p);
    if (vec_is_irreducible(f, p, d)) return finish(p, d, std::move(f));
  }
}

bool FieldCtx::same_field(const FieldCtx& other) const {
  if (this == &other) return true;
  return p_ == other.p_ && d_ == other.d_ && modulus_ == other.modulus_;
}

void check_same_ctx(const FieldElement& a, const FieldElement& b) {
  if (!a.ctx_ || !b.ctx_ || !a.ctx_->same_field(*b.ctx_))
    throw std::invalid_argument("field elements from different contexts");
}

FieldElement FieldCtx::zero() const {
  return FieldElement(this, std::vector<Int>(d_, Int(0)));
}

FieldElement FieldCtx::one() const { return from_int(1); }

FieldElement FieldCtx::gen() const {
  if (d_ < 2) throw std::invalid_argument("gen: prime field has no generator class");
  std::vector<Int> c(d_, Int(0));
  c[1] = 1;
  return FieldElement(this, std::move(c));
}

FieldElement FieldCtx::from_int(const Int& n) const {
  std::vector<Int> c(d_, Int(0));
  c[0] = mod(n, p_);
  return FieldElement(this, std::move(c));
}

FieldElement FieldCtx::from_coeffs(const std::vector<Int>& coeffs) const {
  if (coeffs.size() > d_)
    throw std::invalid_argument("from_coeffs: too many coefficients");
  std::vector<Int> c(d_, Int(0));
  for (size_t i = 0; i < coeffs.size(); ++i) c[i] = mod(coeffs[i], p_);
  return FieldElement(this, std::move(c));
}

FieldElement FieldCtx::element_at(const Int& index) const {
  Int n = index;
  std::vector<Int> c(d_, Int(0));
  for (unsigned i = 0; i < d_ && n > 0; ++i) {
    c[i] = n % p_;
    n /= p_;
  }
  return FieldElement(this, std::move(c));
}

Int FieldCtx::index_of(const FieldElement& a) const {
  Int n = 0;
  for (unsigned i = d_; i-- > 0;) n = n * p_ + a.coeffs()[i];
  return n;
}

FieldElement FieldCtx::random_element(Rng& rng) const {
  return element_at(rng.below(q_));
}

bool FieldElement::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool FieldElement::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool FieldElement::operator==(const FieldElement& o) const {
  check_same_ctx(*this, o);
  return c_ == o.c_;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  check_same_ctx(a, b);
  const Int& p = a.ctx_->p();
  std::vector<Int> c(a.c_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = mod(a.c_[i] + b.c_[i], p);
  return FieldElement(a.ctx_, std::move(c));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  check_same_ctx(a, b);
  const Int& p = a.ctx_->p();
  std::vector<Int> c(a.c_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = mod(a.c_[i] - b.c_[i], p);
  return FieldElement(a.ctx_, std::move(c));
}

FieldElement FieldElement::operator-() const {
  const Int& p = ctx_->p();
  std::vector<Int> c(c_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = mod(-c_[i], p);
  return FieldElement(ctx_, std::move(c));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  check_same_ctx(a, b);
  const Int& p = a.ctx_->p();
  if (a.ctx_->d() == 1)
    return FieldElement(a.ctx_, {mod(a.c_[0] * b.c_[0], p)});
  Vec prod = vec_mulmod(a.c_, b.c_, a.ctx_->modulus(), p);
  prod.resize(a.ctx_->d(), Int(0));
  return FieldElement(a.ctx_, std::move(prod));
}

FieldElement FieldElement::inv() const {
  if (is_zero()) throw std::domain_error("inv: division by zero");
  const Int& p = ctx_->p();
  if (ctx_->d() == 1) return FieldElement(ctx_, {invmod(c_[0], p)});
  Vec g;
  Vec u = vec_inv_mod(c_, ctx_->modulus(), p, &g);
  // modulus irreducible, so the gcd with a nonzero element is 1
  u.resize(ctx_->d(), Int(0));
  return FieldElement(ctx_, std::move(u));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  return a * b.inv();
}

FieldElement FieldElement::pow(const Int& n) const {
  if (n < 0) return inv().pow(-n);
  FieldElement base = *this;
  FieldElement r = ctx_->one();
  Int e = n;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = r * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return r;
}

int legendre_chi(const FieldElement& a) {
  const auto& ctx = a.ctx();
  if (ctx->p() == 2) throw std::invalid_argument("legendre_chi: p must be odd");
  if (a.is_zero()) return 0;
  FieldElement r = a.pow((ctx->q() - 1) / 2);
  if (r.is_one()) return 1;
  return -1;
}

FieldElement frobenius(const FieldElement& a) { return a.pow(a.ctx()->p()); }

FieldElement random_nonsquare(const FieldCtxPtr& ctx, Rng& rng) {
  if (ctx->p() == 2)
    throw std::invalid_argument("random_nonsquare: p must be odd");
  for (;;) {
    FieldElement a = ctx->random_element(rng);
    if (legendre_chi(a) == -1) return a;
  }
}

namespace {

// Pick the canonical root of the pair {b, -b}.
FieldElement canonical_root(const FieldElement& b) {
  FieldElement nb = -b;
  const auto& x = b.coeffs();
  const auto& y = nb.coeffs();
  const auto& ctx = b.ctx();
  if (ctx->d() == 1) return x[0] <= y[0] ? b : nb;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] < y[i]) return b;
    if (y[i] < x[i]) return nb;
  }
  return b;
}

}  // namespace

FieldElement sqrt_mod(const FieldElement& a, Rng* rng) {
  const auto& ctx = a.ctx();
  const Int& q = ctx->q();
  if (ctx->p() == 2) throw std::invalid_argument("sqrt_mod: p must be odd");
  if (a.is_zero()) return a;
  if (legendre_chi(a) == -1)
    throw std::domain_error("sqrt_mod: non-residue input");
  if (mod(q, 4) == 3) return canonical_root(a.pow((q + 1) / 4));

  // Tonelli-Shanks in F_q*: q - 1 = 2^s * t with t odd.
  Int t = q - 1;
  unsigned long s = 0;
  while (mpz_even_p(t.get_mpz_t())) {
    t >>= 1;
    ++s;
  }
  Rng local(0);
  Rng& rr = rng ? *rng : local;
  FieldElement z = random_nonsquare(ctx->shared_from_this(), rr);
  FieldElement c = z.pow(t);
  FieldElement r = a.pow((t + 1) / 2);
  FieldElement w = a.pow(t);
  unsigned long m = s;
  while (!w.is_one()) {
    FieldElement wk = w;
    unsigned long i = 0;
    while (!wk.is_one()) {
      wk = wk * wk;
      ++i;
    }
    FieldElement b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b;
    m = i;
    c = b * b;
    w = w * c;
    r = r * b;
  }
  return canonical_root(r);
}

}  // namespace ffcount
