#include "ffcount/textio.hpp"

#include <stdexcept>

namespace ffcount {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

namespace {

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

Int parse_int(const std::string& s) {
  std::string t = strip(s);
  if (t.empty()) throw std::invalid_argument("parse: empty integer");
  return Int(t);
}

}  // namespace

std::string format_element(const FieldElement& a) {
  const auto& c = a.coeffs();
  unsigned d = a.ctx()->d();
  std::string out;
  for (unsigned i = 0; i < d; ++i) {
    if (i) out += ',';
    out += c[i].get_str();
  }
  return out;
}

FieldElement parse_element(const FieldCtxPtr& ctx, const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() > ctx->d())
    throw std::invalid_argument("parse_element: too many coefficients");
  std::vector<Int> c;
  c.reserve(parts.size());
  for (const auto& part : parts) c.push_back(parse_int(part));
  return ctx->from_coeffs(c);
}

std::string format_poly(const Poly& f) {
  const auto& ctx = f.ctx();
  char sep = ctx->d() > 1 ? ';' : ',';
  if (f.is_zero()) return "0";
  std::string out;
  for (int i = 0; i <= f.degree(); ++i) {
    if (i) out += sep;
    out += format_element(f.coeff((size_t)i));
  }
  return out;
}

Poly parse_poly(const FieldCtxPtr& ctx, const std::string& s) {
  char sep = ctx->d() > 1 ? ';' : ',';
  auto parts = split(s, sep);
  std::vector<FieldElement> c;
  c.reserve(parts.size());
  for (const auto& part : parts) c.push_back(parse_element(ctx, part));
  return Poly(ctx, std::move(c));
}

std::string format_curve(const Curve& E) {
  char sep = E.ctx()->d() > 1 ? ';' : ',';
  std::string out;
  if (E.is_short()) {
    out = "short:";
    out += format_element(E.short_model().a);
    out += sep;
    out += format_element(E.short_model().b);
  } else {
    out = "general:";
    const FieldElement* cs[5] = {&E.a1(), &E.a2(), &E.a3(), &E.a4(), &E.a6()};
    for (int i = 0; i < 5; ++i) {
      if (i) out += sep;
      out += format_element(*cs[i]);
    }
  }
  return out;
}

Curve parse_curve(const FieldCtxPtr& ctx, const std::string& s) {
  size_t colon = s.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("parse_curve: expected 'short:...' or 'general:...'");
  std::string kind = strip(s.substr(0, colon));
  std::string body = s.substr(colon + 1);
  char sep = ctx->d() > 1 ? ';' : ',';
  auto parts = split(body, sep);
  if (kind == "short") {
    if (parts.size() != 2)
      throw std::invalid_argument("parse_curve: short model needs a,b");
    return Curve::make_short(ctx, parse_element(ctx, parts[0]),
                             parse_element(ctx, parts[1]));
  }
  if (kind == "general") {
    if (parts.size() != 5)
      throw std::invalid_argument("parse_curve: general model needs a1..a6");
    return Curve::make_general(ctx, parse_element(ctx, parts[0]),
                               parse_element(ctx, parts[1]),
                               parse_element(ctx, parts[2]),
                               parse_element(ctx, parts[3]),
                               parse_element(ctx, parts[4]));
  }
  throw std::invalid_argument("parse_curve: unknown model '" + kind + "'");
}

VarietySystem parse_variety(const std::string& s) {
  auto top = split(s, ';');
  if (top.size() < 3)
    throw std::invalid_argument("parse_variety: expected field;nvars;polys");
  // field part: p,d[,modulus coefficients]
  auto ftoks = split(strip(top[0]), ',');
  if (ftoks.size() < 2)
    throw std::invalid_argument("parse_variety: field needs p,d");
  Int p = parse_int(ftoks[0]);
  unsigned d = (unsigned)to_ulong(parse_int(ftoks[1]));
  VarietySystem sys;
  if (ftoks.size() == 2) {
    if (d == 1) {
      sys.ctx = FieldCtx::make(p);
    } else {
      Rng rng(0);
      sys.ctx = FieldCtx::make(p, d, rng);
    }
  } else {
    if (ftoks.size() != d + 3)
      throw std::invalid_argument("parse_variety: modulus needs d+1 coefficients");
    std::vector<Int> m;
    for (size_t i = 2; i < ftoks.size(); ++i) m.push_back(parse_int(ftoks[i]));
    sys.ctx = FieldCtx::make(p, d, m);
  }
  sys.nvars = (unsigned)to_ulong(parse_int(top[1]));
  if (sys.nvars == 0)
    throw std::invalid_argument("parse_variety: nvars must be >= 1");

  std::string polys_part;
  for (size_t i = 2; i < top.size(); ++i) {
    if (i > 2) polys_part += ';';
    polys_part += top[i];
  }
  for (const auto& ptext0 : split(polys_part, '|')) {
    std::string ptext = strip(ptext0);
    std::vector<Monomial> poly;
    if (!ptext.empty()) {
      for (const auto& mtext0 : split(ptext, '+')) {
        std::string mtext = strip(mtext0);
        size_t colon = mtext.find(':');
        if (colon == std::string::npos)
          throw std::invalid_argument("parse_variety: monomial needs coef:exps");
        Monomial m;
        m.coef = parse_element(sys.ctx, mtext.substr(0, colon));
        auto etoks = split(mtext.substr(colon + 1), ',');
        if (etoks.size() != sys.nvars)
          throw std::invalid_argument(
              "parse_variety: exponent vector length != nvars");
        for (const auto& e : etoks)
          m.exps.push_back((unsigned)to_ulong(parse_int(e)));
        poly.push_back(std::move(m));
      }
    }
    sys.polys.push_back(std::move(poly));
  }
  return sys;
}

}  // namespace ffcount
