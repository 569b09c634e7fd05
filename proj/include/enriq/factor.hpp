#ifndef ENRIQ_FACTOR_HPP
#define ENRIQ_FACTOR_HPP

#include <enriq/poly.hpp>

namespace enriq {

// Dense univariate polynomial over GF(2^k); coeff[i] multiplies x^i.
struct UPoly {
  std::vector<std::uint64_t> c;
  FieldPtr field;

  explicit UPoly(FieldPtr f) : field(std::move(f)) {}
  UPoly(std::vector<std::uint64_t> cs, FieldPtr f) : c(std::move(cs)), field(std::move(f)) { trim(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int deg() const { return (int)c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  std::uint64_t lead() const { return c.back(); }

  static UPoly x(const FieldPtr& f) { return UPoly({0, 1}, f); }
  static UPoly constant(const FieldPtr& f, std::uint64_t v) { return UPoly({v}, f); }

  UPoly operator+(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly scaled(std::uint64_t s) const;
  UPoly monic() const;
  UPoly derivative() const;
  std::uint64_t eval(std::uint64_t a) const;

  // division with remainder
  static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
  UPoly operator%(const UPoly& o) const;
  UPoly operator/(const UPoly& o) const;

  static UPoly gcd(UPoly a, UPoly b);
  UPoly powmod(unsigned long long e, const UPoly& m) const;
  UPoly mulmod(const UPoly& o, const UPoly& m) const;

  bool operator==(const UPoly& o) const { return c == o.c; }
  std::string str(const std::string& var = "t") const;
};

struct UFactor {
  UPoly factor;
  int multiplicity;
};

// Deterministic ordering of the output; `seed` drives the equal-degree split.
std::vector<UFactor> factor_univariate(const UPoly& f, std::uint64_t seed = 0);

bool is_irreducible(const UPoly& f);

// Roots of f in its own coefficient field.
std::vector<std::uint64_t> roots_in_field(const UPoly& f, std::uint64_t seed = 0);

// Bridge: a sparse Poly using exactly one variable -> dense UPoly.
UPoly to_univariate(const Poly& p, std::size_t var);
Poly from_univariate(const UPoly& u, const RegistryPtr& reg, std::size_t var);

} // namespace enriq

#endif
