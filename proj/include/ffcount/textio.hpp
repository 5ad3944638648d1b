// Text formats shared by the CLI and test fixtures.
//
//   element   coefficients lowest degree first, comma separated: "3", "1,0,1"
//   poly      coefficients lowest first; separator is ',' over F_p and ';'
//             over extensions (each coefficient then uses the element format)
//   curve     "short:a,b" or "general:a1,a2,a3,a4,a6"; coefficient separator
//             as for polynomials
//   variety   "p,d[,modulus] ; nvars ; poly1 | poly2 | ..." where each poly
//             is monomials joined by '+', each monomial "coef:e1,e2,...,en"
#pragma once

#include <string>
#include <vector>

#include "ffcount/ecurve.hpp"
#include "ffcount/ffield.hpp"
#include "ffcount/polyring.hpp"

namespace ffcount {

std::string format_element(const FieldElement& a);
FieldElement parse_element(const FieldCtxPtr& ctx, const std::string& s);

std::string format_poly(const Poly& f);
Poly parse_poly(const FieldCtxPtr& ctx, const std::string& s);

std::string format_curve(const Curve& E);
Curve parse_curve(const FieldCtxPtr& ctx, const std::string& s);

struct Monomial {
  FieldElement coef;
  std::vector<unsigned> exps;  // one exponent per variable
};

struct VarietySystem {
  FieldCtxPtr ctx;
  unsigned nvars = 0;
  std::vector<std::vector<Monomial>> polys;
};

VarietySystem parse_variety(const std::string& s);

std::vector<std::string> split(const std::string& s, char sep);

}  // namespace ffcount
