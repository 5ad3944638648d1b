#include "ffcount/zetalab.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace ffcount {

namespace {

using QVec = std::vector<mpq_class>;  // dense rational polys, lowest first

void qtrim(QVec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

int qdeg(const QVec& v) { return (int)v.size() - 1; }

QVec qmul(const QVec& a, const QVec& b) {
  if (a.empty() || b.empty()) return {};
  QVec r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qtrim(r);
  return r;
}

QVec qsub(QVec a, const QVec& b) {
  a.resize(std::max(a.size(), b.size()), mpq_class(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  qtrim(a);
  return a;
}

// division with remainder; the leading term cancels exactly each round
std::pair<QVec, QVec> qdivmod(QVec a, const QVec& b) {
  QVec q;
  if (qdeg(a) >= qdeg(b)) q.assign((size_t)(qdeg(a) - qdeg(b) + 1), mpq_class(0));
  while (!a.empty() && qdeg(a) >= qdeg(b)) {
    mpq_class c = a.back() / b.back();
    size_t off = a.size() - b.size();
    q[off] = c;
    for (size_t j = 0; j < b.size(); ++j) a[off + j] -= c * b[j];
    qtrim(a);
  }
  qtrim(q);
  return {q, a};
}

QVec q_from_ints(const std::vector<Int>& v) {
  QVec r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

// integer-poly gcd through monic rational Euclid
QVec qgcd(QVec a, QVec b) {
  qtrim(a);
  qtrim(b);
  while (!b.empty()) {
    auto [q, r] = qdivmod(a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    mpq_class lead = a.back();
    for (auto& x : a) x /= lead;
  }
  return a;
}

std::vector<Int> to_ints_or_throw(const QVec& v, const char* who) {
  std::vector<Int> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    mpq_class y = x;
    y.canonicalize();
    if (y.get_den() != 1)
      throw std::runtime_error(std::string(who) +
                               ": non-integer coefficient in result");
    out.push_back(y.get_num());
  }
  return out;
}

// power sums p_k of the reciprocal roots of P(t) = prod (1 - g_j t), from the
// coefficients alone: p_k = -k c_k - sum_{i=1}^{k-1} c_i p_{k-i}.
std::vector<Int> power_sums(const std::vector<Int>& c, unsigned K) {
  std::vector<Int> p(K + 1, Int(0));
  for (unsigned k = 1; k <= K; ++k) {
    Int s = 0;
    if (k < c.size()) s = -Int(k) * c[k];
    for (unsigned i = 1; i < k && i < c.size(); ++i) s -= c[i] * p[k - i];
    p[k] = s;
  }
  return p;
}

}  // namespace

ZetaFn::ZetaFn(std::vector<Int> num, std::vector<Int> den)
    : num_(std::move(num)), den_(std::move(den)) {
  while (!num_.empty() && num_.back() == 0) num_.pop_back();
  while (!den_.empty() && den_.back() == 0) den_.pop_back();
  if (num_.empty() || den_.empty() || num_[0] != 1 || den_[0] != 1)
    throw std::invalid_argument("ZetaFn: constant terms must be 1");
  QVec g = qgcd(q_from_ints(num_), q_from_ints(den_));
  if (qdeg(g) > 0) {
    // normalize the common factor to constant term 1 and divide it out
    if (g[0] == 0) throw std::invalid_argument("ZetaFn: degenerate common factor");
    mpq_class c0 = g[0];
    for (auto& x : g) x /= c0;
    auto [qn, rn] = qdivmod(q_from_ints(num_), g);
    auto [qd, rd] = qdivmod(q_from_ints(den_), g);
    if (!rn.empty() || !rd.empty())
      throw std::logic_error("ZetaFn: inexact cancellation");
    num_ = to_ints_or_throw(qn, "ZetaFn");
    den_ = to_ints_or_throw(qd, "ZetaFn");
  }
}

ZetaFn zeta_elliptic(const Int& q, const Int& t_E) {
  if (t_E * t_E > 4 * q)
    throw std::invalid_argument("zeta_elliptic: |t| exceeds the Hasse bound");
  std::vector<Int> num{Int(1), -t_E, q};
  std::vector<Int> den{Int(1), -(q + 1), q};  // (1 - t)(1 - q t)
  return ZetaFn(std::move(num), std::move(den));
}

CountSeq zeta_to_counts(const ZetaFn& Z, unsigned K, const Int& q) {
  if (K < 1) throw std::invalid_argument("zeta_to_counts: K >= 1 required");
  std::vector<Int> pn = power_sums(Z.num(), K);
  std::vector<Int> pd = power_sums(Z.den(), K);
  CountSeq seq;
  seq.q = q;
  seq.counts.reserve(K);
  for (unsigned k = 1; k <= K; ++k) seq.counts.push_back(pd[k] - pn[k]);
  return seq;
}

namespace {

struct ExtensionView {
  FieldCtxPtr ext;
  std::vector<FieldElement> coef_images;  // per poly, flattened monomials
};

// Deterministic extension F_{q^k} of sys.ctx with the coefficient embedding:
// the modulus is the first irreducible found along the element_at order, the
// embedding image of the base generator the first root of the base modulus.
FieldCtxPtr build_extension(const FieldCtxPtr& base, unsigned k,
                            FieldElement* gen_image) {
  if (k == 1) {
    if (gen_image && base->d() > 1) *gen_image = base->gen();
    return base;
  }
  unsigned dk = base->d() * k;
  const Int& p = base->p();
  FieldCtxPtr ext;
  // scan monic candidates deterministically
  Int idx = 0;
  for (;; ++idx) {
    std::vector<Int> c(dk + 1, Int(0));
    c[dk] = 1;
    Int n = idx;
    for (unsigned i = 0; i < dk && n > 0; ++i) {
      c[i] = n % p;
      n /= p;
    }
    try {
      ext = FieldCtx::make(p, dk, c);
      break;
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  if (base->d() > 1) {
    // embed by sending the base generator to a root of the base modulus
    Poly basemod = Poly::from_ints(ext, base->modulus());
    bool found = false;
    for (Int i = 0; i < ext->q(); ++i) {
      FieldElement cand = ext->element_at(i);
      if (basemod.eval(cand).is_zero()) {
        if (gen_image) *gen_image = cand;
        found = true;
        break;
      }
    }
    if (!found)
      throw std::logic_error("brute_force: no embedding root found");
  }
  return ext;
}

FieldElement embed(const FieldElement& a, const FieldCtxPtr& ext,
                   const FieldElement& gen_image) {
  if (a.ctx()->d() == 1) return ext->from_int(a.coeffs()[0]);
  FieldElement acc = ext->zero();
  for (size_t i = a.coeffs().size(); i-- > 0;)
    acc = acc * gen_image + ext->from_int(a.coeffs()[i]);
  return acc;
}

// machine-word kernel for prime fields: everything stays in uint64
Int brute_count_u64(const VarietySystem& sys, const Int& p_int, bool parallel) {
  std::uint64_t p = to_ulong(p_int);
  unsigned nv = sys.nvars;
  struct Mono {
    std::uint64_t coef;
    std::vector<unsigned> exps;
  };
  std::vector<std::vector<Mono>> polys;
  for (const auto& poly : sys.polys) {
    std::vector<Mono> out;
    for (const auto& m : poly)
      out.push_back({to_ulong(m.coef.coeffs()[0]), m.exps});
    polys.push_back(std::move(out));
  }
  auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
    return (std::uint64_t)((unsigned __int128)a * b % p);
  };
  long long hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(dynamic, 16) if (parallel && p > 1)
  for (long long first = 0; first < (long long)p; ++first) {
    std::vector<std::uint64_t> pt(nv, 0);
    pt[0] = (std::uint64_t)first;
    for (;;) {
      bool all_zero = true;
      for (const auto& poly : polys) {
        std::uint64_t acc = 0;
        for (const auto& m : poly) {
          std::uint64_t term = m.coef;
          for (unsigned v = 0; v < nv; ++v)
            for (unsigned e = 0; e < m.exps[v]; ++e) term = mulmod(term, pt[v]);
          acc = (acc + term) % p;
        }
        if (acc != 0) {
          all_zero = false;
          break;
        }
      }
      if (all_zero) ++hits;
      unsigned v = 1;
      for (; v < nv; ++v) {
        if (++pt[v] < p) break;
        pt[v] = 0;
      }
      if (v >= nv) break;
    }
  }
  return Int((long)hits);
}

Int brute_count_impl(const VarietySystem& sys, unsigned k, const Int& guard,
                     bool parallel) {
  if (k < 1) throw std::invalid_argument("brute_force: k >= 1 required");
  Int Q = 1;
  for (unsigned i = 0; i < k; ++i) Q *= sys.ctx->q();
  Int total = 1;
  for (unsigned i = 0; i < sys.nvars; ++i) {
    total *= Q;
    if (total > guard)
      throw std::runtime_error("brute_force: q^{kn} exceeds the guard");
  }
  if (k == 1 && sys.ctx->d() == 1 && sys.ctx->p() < (Int(1) << 31))
    return brute_count_u64(sys, sys.ctx->p(), parallel);

  FieldElement gen_image;
  FieldCtxPtr ext = build_extension(sys.ctx, k, &gen_image);
  // embed all coefficients once
  std::vector<std::vector<std::pair<FieldElement, const std::vector<unsigned>*>>>
      polys;
  polys.reserve(sys.polys.size());
  for (const auto& poly : sys.polys) {
    std::vector<std::pair<FieldElement, const std::vector<unsigned>*>> out;
    out.reserve(poly.size());
    for (const auto& mono : poly)
      out.push_back({embed(mono.coef, ext, gen_image), &mono.exps});
    polys.push_back(std::move(out));
  }

  unsigned long Qu = to_ulong(Q);
  unsigned nv = sys.nvars;
  // the element table is built once and shared read-only by all threads
  std::vector<FieldElement> elems(Qu);
  for (unsigned long i = 0; i < Qu; ++i)
    elems[i] = ext->element_at(Int((long)i));

  auto vanishes_at = [&](const std::vector<unsigned long>& odo) {
    for (const auto& poly : polys) {
      FieldElement acc = ext->zero();
      for (const auto& [coef, exps] : poly) {
        FieldElement term = coef;
        for (unsigned v = 0; v < nv; ++v)
          for (unsigned e = 0; e < (*exps)[v]; ++e)
            term = term * elems[odo[v]];
        acc = acc + term;
      }
      if (!acc.is_zero()) return false;
    }
    return true;
  };

  long long hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(dynamic, 16) if (parallel && Qu > 1)
  for (long long first = 0; first < (long long)Qu; ++first) {
    std::vector<unsigned long> odo(nv, 0);
    odo[0] = (unsigned long)first;
    for (;;) {
      if (vanishes_at(odo)) ++hits;
      unsigned v = 1;
      for (; v < nv; ++v) {
        if (++odo[v] < Qu) break;
        odo[v] = 0;
      }
      if (v >= nv) break;
    }
  }
  return Int((long)hits);
}

}  // namespace

Int brute_force_variety_count(const VarietySystem& sys, unsigned k,
                              const Int& guard) {
  return brute_count_impl(sys, k, guard, true);
}

Int brute_force_variety_count_serial(const VarietySystem& sys, unsigned k,
                                     const Int& guard) {
  return brute_count_impl(sys, k, guard, false);
}

ZetaFn counts_to_zeta(const CountSeq& seq, unsigned degree_bound) {
  unsigned K = (unsigned)seq.counts.size();
  if (K < 2 * degree_bound + 1)
    throw std::invalid_argument(
        "counts_to_zeta: need at least 2*degree_bound+1 counts");

  // E = exp(sum N_k t^k / k) truncated at t^K, exact rationals
  QVec S(K + 1, mpq_class(0));
  for (unsigned k = 1; k <= K; ++k)
    S[k] = mpq_class(seq.counts[k - 1]) / k;
  QVec E(K + 1, mpq_class(0));
  E[0] = 1;
  for (unsigned k = 1; k <= K; ++k) {
    mpq_class s = 0;
    for (unsigned i = 1; i <= k; ++i) s += mpq_class(i) * S[i] * E[k - i];
    E[k] = s / k;
  }
  qtrim(E);

  // Pade through extended Euclid on (t^{K+1}, E)
  QVec r0(K + 2, mpq_class(0));
  r0[K + 1] = 1;
  QVec r1 = E;
  QVec v0{}, v1{mpq_class(1)};
  QVec p1, p2;
  bool found = false;
  if (qdeg(r1) + qdeg(v1) <= (int)degree_bound) {
    p1 = r1;
    p2 = v1;
    found = true;
  }
  while (!found && !r1.empty()) {
    auto [q, r2] = qdivmod(r0, r1);
    QVec v2 = qsub(v0, qmul(q, v1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    v0 = std::move(v1);
    v1 = std::move(v2);
    if (!r1.empty() && qdeg(r1) + qdeg(v1) <= (int)degree_bound) {
      p1 = r1;
      p2 = v1;
      found = true;
    }
  }
  if (!found)
    throw std::runtime_error("counts_to_zeta: no rational function within bound");
  if (p2.empty() || p2[0] == 0)
    throw std::runtime_error("counts_to_zeta: reconstruction degenerate at 0");
  mpq_class c0 = p2[0];
  for (auto& x : p1) x /= c0;
  for (auto& x : p2) x /= c0;

  try {
    ZetaFn Z(to_ints_or_throw(p1, "counts_to_zeta"),
             to_ints_or_throw(p2, "counts_to_zeta"));
    // verify the round trip against every supplied count
    CountSeq back = zeta_to_counts(Z, K, seq.q);
    for (unsigned k = 0; k < K; ++k)
      if (back.counts[k] != seq.counts[k])
        throw std::runtime_error(
            "counts_to_zeta: counts inconsistent with any function within bound");
    return Z;
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("counts_to_zeta: ") + e.what());
  }
}

Int bombieri_bound(unsigned nvars, unsigned m_eqs, unsigned a_deg) {
  return pow_ui(Int(4 * (unsigned long)a_deg + 9), nvars + m_eqs);
}

namespace {

// Durand-Kerner root finder, good enough for a diagnostic
std::vector<std::complex<double>> poly_roots(const std::vector<Int>& c) {
  int n = (int)c.size() - 1;
  while (n >= 0 && c[(size_t)n] == 0) --n;
  if (n <= 0) return {};
  std::vector<std::complex<double>> a(n + 1);
  for (int i = 0; i <= n; ++i) a[(size_t)i] = c[(size_t)i].get_d();
  for (int i = 0; i <= n; ++i) a[(size_t)i] /= a[(size_t)n];
  std::vector<std::complex<double>> z((size_t)n);
  std::complex<double> seed(0.4, 0.9);
  z[0] = seed;
  for (int i = 1; i < n; ++i) z[(size_t)i] = z[(size_t)i - 1] * seed;
  auto eval = [&](std::complex<double> x) {
    std::complex<double> r = a[(size_t)n];
    for (int i = n - 1; i >= 0; --i) r = r * x + a[(size_t)i];
    return r;
  };
  for (int iter = 0; iter < 500; ++iter) {
    double moved = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> d = eval(z[(size_t)i]);
      for (int j = 0; j < n; ++j)
        if (j != i) d /= (z[(size_t)i] - z[(size_t)j]);
      z[(size_t)i] -= d;
      moved = std::max(moved, std::abs(d));
    }
    if (moved < 1e-14) break;
  }
  return z;
}

}  // namespace

WeilReport weil_modulus_check(const ZetaFn& Z, const Int& q, unsigned dim,
                              double rel_tol) {
  WeilReport rep;
  double qd = q.get_d();
  auto scan = [&](const std::vector<Int>& poly, bool is_num) {
    for (const auto& z : poly_roots(poly)) {
      double gamma = 1.0 / std::abs(z);  // reciprocal-root modulus
      int best_s = 0;
      double best_dev = 1e300;
      for (unsigned s = 0; s <= 2 * dim; ++s) {
        double target = std::pow(qd, s / 2.0);
        double dev = std::abs(gamma - target) / target;
        if (dev < best_dev) {
          best_dev = dev;
          best_s = (int)s;
        }
      }
      bool flag = best_dev > rel_tol;
      rep.roots.push_back({is_num, gamma, best_s, best_dev, flag});
      rep.any_flagged = rep.any_flagged || flag;
    }
  };
  scan(Z.num(), true);
  scan(Z.den(), false);
  return rep;
}

}  // namespace ffcount
