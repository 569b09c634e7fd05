#ifndef ENRIQ_RATEXPR_HPP
#define ENRIQ_RATEXPR_HPP

#include <enriq/poly.hpp>

namespace enriq {

// num/den without common-factor reduction.  Denominators are only ever unit
// polynomials of the chart at hand; equality tests cross-multiply.
struct RatExpr {
  Poly num;
  Poly den; // nonzero

  RatExpr() = default;
  RatExpr(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw MathError("zero denominator");
  }
  static RatExpr of(Poly p) {
    Poly one = Poly::constant(p.reg(), p.field(), 1);
    return RatExpr(std::move(p), std::move(one));
  }

  bool is_polynomial() const { return den.is_one(); }
  bool is_zero() const { return num.is_zero(); }

  RatExpr operator+(const RatExpr& o) const {
    if (den == o.den) return RatExpr(num + o.num, den);
    return RatExpr(num * o.den + o.num * den, den * o.den);
  }
  RatExpr operator*(const RatExpr& o) const { return RatExpr(num * o.num, den * o.den); }
  RatExpr operator/(const RatExpr& o) const {
    if (o.num.is_zero()) throw MathError("division by zero expression");
    return RatExpr(num * o.den, den * o.num);
  }
  RatExpr pow(unsigned e) const { return RatExpr(num.pow(e), den.pow(e)); }

  // Fold the denominator into Laurent exponents; requires den to be a single
  // monomial supported on inverted variables.
  Poly to_laurent() const;
  // Strict polynomial (denominator must be constant).
  Poly to_poly() const;

  FieldElt evaluate(const std::vector<FieldElt>& point) const {
    FieldElt d = den.evaluate(point);
    if (d.is_zero()) throw MathError("rational expression denominator vanishes at point");
    FieldElt n = num.evaluate(point);
    return FieldElt(n.field->mul(n.bits, n.field->inv(d.bits)), n.field);
  }

  std::string str() const {
    if (is_polynomial()) return num.str();
    return "(" + num.str() + ")/(" + den.str() + ")";
  }
};

// Substitute every variable of f by a rational expression over the target
// registry; the result keeps a single product denominator.
RatExpr substitute_rational(const Poly& f, const RegistryPtr& treg, const FieldPtr& tfield,
                            const std::vector<RatExpr>& images);

// Coefficientwise embedding into a larger field (both parts).
RatExpr embed_rat(const RatExpr& r, const FieldPtr& dst);

} // namespace enriq

#endif
