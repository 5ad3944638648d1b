#include "ffcount/polyring.hpp"

#include <stdexcept>

namespace ffcount {

namespace {
constexpr size_t kKaratsubaCutoff = 32;
}

Poly::Poly(FieldCtxPtr ctx, std::vector<FieldElement> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const FieldCtxPtr& ctx, const FieldElement& c) {
  return Poly(ctx, std::vector<FieldElement>{c});
}

Poly Poly::constant(const FieldCtxPtr& ctx, const Int& c) {
  return constant(ctx, ctx->from_int(c));
}

Poly Poly::x(const FieldCtxPtr& ctx) {
  return Poly(ctx, {ctx->zero(), ctx->one()});
}

Poly Poly::from_ints(const FieldCtxPtr& ctx, const std::vector<Int>& coeffs) {
  std::vector<FieldElement> c;
  c.reserve(coeffs.size());
  for (const auto& k : coeffs) c.push_back(ctx->from_int(k));
  return Poly(ctx, std::move(c));
}

FieldElement Poly::coeff(size_t i) const {
  return i < c_.size() ? c_[i] : ctx_->zero();
}

FieldElement Poly::leading() const {
  if (c_.empty()) return ctx_->zero();
  return c_.back();
}

FieldElement Poly::eval(const FieldElement& at) const {
  FieldElement r = ctx_->zero();
  for (size_t i = c_.size(); i-- > 0;) r = r * at + c_[i];
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  if (leading().is_one()) return *this;
  return *this * leading().inv();
}

Poly Poly::derivative() const {
  if (c_.size() < 2) return Poly(ctx_);
  std::vector<FieldElement> d;
  d.reserve(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i)
    d.push_back(c_[i] * ctx_->from_int(Int(i)));
  return Poly(ctx_, std::move(d));
}

bool Poly::operator==(const Poly& o) const { return c_ == o.c_; }

Poly Poly::operator-() const {
  std::vector<FieldElement> r;
  r.reserve(c_.size());
  for (const auto& a : c_) r.push_back(-a);
  return Poly(ctx_, std::move(r));
}

Poly operator+(const Poly& a, const Poly& b) {
  if (!a.ctx_ || !b.ctx_ || !a.ctx_->same_field(*b.ctx_))
    throw std::invalid_argument("poly: context mismatch");
  std::vector<FieldElement> r(std::max(a.c_.size(), b.c_.size()),
                              a.ctx_->zero());
  for (size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
  return Poly(a.ctx_, std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

namespace {

using Coeffs = std::vector<FieldElement>;

Coeffs school_mul(const FieldCtxPtr& ctx, const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, ctx->zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] = r[i + j] + a[i] * b[j];
    }
  }
  return r;
}

Coeffs kara_mul(const FieldCtxPtr& ctx, const Coeffs& a, const Coeffs& b) {
  if (a.size() < kKaratsubaCutoff || b.size() < kKaratsubaCutoff)
    return school_mul(ctx, a, b);
  size_t h = std::max(a.size(), b.size()) / 2;
  Coeffs a0(a.begin(), a.begin() + std::min(h, a.size()));
  Coeffs a1(a.begin() + std::min(h, a.size()), a.end());
  Coeffs b0(b.begin(), b.begin() + std::min(h, b.size()));
  Coeffs b1(b.begin() + std::min(h, b.size()), b.end());
  Coeffs z0 = kara_mul(ctx, a0, b0);
  Coeffs z2 = kara_mul(ctx, a1, b1);
  Coeffs sa = a0, sb = b0;
  sa.resize(std::max(a0.size(), a1.size()), ctx->zero());
  sb.resize(std::max(b0.size(), b1.size()), ctx->zero());
  for (size_t i = 0; i < a1.size(); ++i) sa[i] = sa[i] + a1[i];
  for (size_t i = 0; i < b1.size(); ++i) sb[i] = sb[i] + b1[i];
  Coeffs z1 = kara_mul(ctx, sa, sb);
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, ctx->zero());
  for (size_t i = 0; i < z0.size(); ++i) r[i] = r[i] + z0[i];
  for (size_t i = 0; i < z1.size(); ++i) {
    FieldElement m = z1[i];
    if (i < z0.size()) m = m - z0[i];
    if (i < z2.size()) m = m - z2[i];
    if (i + h < r.size()) r[i + h] = r[i + h] + m;
  }
  for (size_t i = 0; i < z2.size(); ++i) r[i + 2 * h] = r[i + 2 * h] + z2[i];
  return r;
}

}  // namespace

Poly operator*(const Poly& a, const Poly& b) {
  if (!a.ctx_ || !b.ctx_ || !a.ctx_->same_field(*b.ctx_))
    throw std::invalid_argument("poly: context mismatch");
  if (a.is_zero() || b.is_zero()) return Poly(a.ctx_);
  return Poly(a.ctx_, kara_mul(a.ctx_, a.c_, b.c_));
}

Poly Poly::operator*(const FieldElement& s) const {
  std::vector<FieldElement> r;
  r.reserve(c_.size());
  for (const auto& a : c_) r.push_back(a * s);
  return Poly(ctx_, std::move(r));
}

std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw std::domain_error("poly_divmod: division by zero");
  const auto& ctx = f.ctx();
  if (f.degree() < g.degree()) return {Poly(ctx), f};
  FieldElement li = g.leading().inv();
  std::vector<FieldElement> rem(f.coeffs());
  int dg = g.degree();
  std::vector<FieldElement> quot((size_t)(f.degree() - dg + 1), ctx->zero());
  for (int i = f.degree(); i >= dg; --i) {
    FieldElement c = rem[(size_t)i] * li;
    if (c.is_zero()) continue;
    quot[(size_t)(i - dg)] = c;
    for (int j = 0; j <= dg; ++j)
      rem[(size_t)(i - dg + j)] =
          rem[(size_t)(i - dg + j)] - c * g.coeffs()[(size_t)j];
  }
  rem.resize((size_t)dg);
  return {Poly(ctx, std::move(quot)), Poly(ctx, std::move(rem))};
}

Poly poly_gcd(const Poly& f, const Poly& g) {
  Poly a = f, b = g;
  while (!b.is_zero()) {
    Poly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

QuotientElem::QuotientElem(std::shared_ptr<const Poly> modulus, Poly rep)
    : modulus_(std::move(modulus)) {
  if (!modulus_ || modulus_->degree() < 1)
    throw std::invalid_argument("quotient: modulus must have degree >= 1");
  rep_ = poly_divmod(rep, *modulus_).second;
}

QuotientElem QuotientElem::operator-() const {
  QuotientElem r;
  r.modulus_ = modulus_;
  r.rep_ = -rep_;
  return r;
}

QuotientElem operator+(const QuotientElem& a, const QuotientElem& b) {
  QuotientElem r;
  r.modulus_ = a.modulus_;
  r.rep_ = a.rep_ + b.rep_;
  return r;
}

QuotientElem operator-(const QuotientElem& a, const QuotientElem& b) {
  QuotientElem r;
  r.modulus_ = a.modulus_;
  r.rep_ = a.rep_ - b.rep_;
  return r;
}

QuotientElem operator*(const QuotientElem& a, const QuotientElem& b) {
  return QuotientElem(a.modulus_, a.rep_ * b.rep_);
}

QuotientElem qr_pow(const QuotientElem& e, const Int& n) {
  if (n < 0) throw std::invalid_argument("qr_pow: negative exponent");
  QuotientElem base = e;
  QuotientElem r(e.modulus(), Poly::constant(e.modulus()->ctx(), Int(1)));
  Int k = n;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = r * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return r;
}

std::variant<QuotientElem, ZeroDivisorWitness> qr_inv(const QuotientElem& e) {
  if (e.is_zero()) throw std::domain_error("qr_inv: zero input");
  const Poly& m = *e.modulus();
  const auto& ctx = m.ctx();
  // extended Euclid on (rep, m)
  Poly r0 = m, r1 = e.rep();
  Poly u0(ctx), u1 = Poly::constant(ctx, Int(1));
  while (!r1.is_zero()) {
    auto [q, r2] = poly_divmod(r0, r1);
    Poly u2 = u0 - q * u1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (r0.degree() == 0) {
    Poly inv = u0 * r0.leading().inv();
    return QuotientElem(e.modulus(), std::move(inv));
  }
  return ZeroDivisorWitness{r0.monic()};
}

std::pair<Int, Int> crt_combine(
    const std::vector<std::pair<Int, Int>>& residues) {
  if (residues.empty()) throw std::invalid_argument("crt_combine: empty input");
  Int r = mod(residues[0].first, residues[0].second);
  Int m = residues[0].second;
  for (size_t i = 1; i < residues.size(); ++i) {
    const Int& r2 = residues[i].first;
    const Int& m2 = residues[i].second;
    Int u, v;
    Int g = ext_gcd(m, m2, u, v);
    if (g != 1) throw std::invalid_argument("crt_combine: moduli not coprime");
    Int m3 = m * m2;
    // r3 = r * v * m2 + r2 * u * m  (mod m3)
    Int r3 = mod(r * v % m3 * m2 + r2 * u % m3 * m, m3);
    r = r3;
    m = m3;
  }
  return {r, m};
}

}  // namespace ffcount
