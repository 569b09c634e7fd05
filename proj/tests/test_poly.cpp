#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <enriq/parse.hpp>

using namespace enriq;

namespace {

Poly P(const std::string& s, const RegistryPtr& reg, const FieldPtr& f) {
  return parse_poly(s, reg, f);
}

Poly random_poly(const RegistryPtr& reg, const FieldPtr& F, std::mt19937_64& rng, int terms = 6,
                 int maxdeg = 4) {
  std::vector<Term> ts;
  for (int i = 0; i < terms; ++i) {
    Expo e(reg->size(), 0);
    for (auto& x : e) x = (int)(rng() % (maxdeg + 1));
    std::uint64_t c = rng() & ((1ULL << F->degree()) - 1);
    ts.push_back(Term{std::move(e), c});
  }
  return Poly::from_terms(reg, F, std::move(ts));
}

} // namespace

TEST_CASE("freshman's dream and basic arithmetic") {
  auto reg = Registry::make({"t"});
  auto f2 = Field::gf2();
  CHECK(P("(t+1)^4", reg, f2) == P("t^4+1", reg, f2));
  // A*B of the 12A1 data: t^3(t+1) * t^3(t+1)^3 = t^10 + t^6
  CHECK(P("(t^4+t^3)*(t^6+t^5+t^4+t^3)", reg, f2) == P("t^10+t^6", reg, f2));
  CHECK((P("t^2+1", reg, f2) * Poly::zero(reg, f2)).is_zero());
}

TEST_CASE("parser errors carry positions") {
  auto reg = Registry::make({"t"});
  auto f2 = Field::gf2();
  CHECK_THROWS_AS(P("t + q", reg, f2), ParseError);
  CHECK_THROWS_AS(P("t + ", reg, f2), ParseError);
  CHECK_THROWS_AS(P("t^-2", reg, f2), ParseError);
  try {
    parse_poly("t +\n qq", reg, f2);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.pos.line == 2);
  }
}

TEST_CASE("derivative in characteristic 2") {
  auto reg = Registry::make({"t", "y"});
  auto f2 = Field::gf2();
  // d/dt of t(t+1)^4 = (t+1)^4
  CHECK(P("t^5+t^4+t", reg, f2).derivative(0) == P("t^4+1", reg, f2));
  // d/dt (A(t)B(t)) = 0 for the 12A1 data
  CHECK(P("t^10+t^6", reg, f2).derivative(0).is_zero());
  CHECK(P("y^2", reg, f2).derivative(1).is_zero());
}

TEST_CASE("Laurent convention d(t^-1) = t^-2") {
  auto reg = Registry::make({"t"}, {"t"});
  auto f2 = Field::gf2();
  Poly tinv = Poly::monomial(reg, f2, Expo{-1}, 1);
  Poly d = tinv.derivative(0);
  CHECK(d == Poly::monomial(reg, f2, Expo{-2}, 1));
}

TEST_CASE("substitute: the D12 chart transition") {
  // apply x -> t^2/x0, y -> t^2 y0/x0^2 to the main relation of the D12
  // surface and clear x0^4/t; the x0-chart relation appears.
  auto reg = Registry::make({"x", "y", "t"}, {"t"});
  auto dst = Registry::make({"x0", "y0", "t"}, {"t"});
  auto f2 = Field::gf2();
  Poly f = P("y^2 + t^6*y + x^3 + (t^2+t^6)*x + t^7", reg, f2);
  std::vector<RatExpr> images{parse_ratexpr("t^2/x0", dst, f2), parse_ratexpr("t^2*y0/x0^2", dst, f2),
                              parse_ratexpr("t", dst, f2)};
  RatExpr pulled = substitute_rational(f, dst, f2, images);
  // the pullback equals the chart relation times the unit t^4/x0^4
  Poly expected = P("y0^2 + t^4*x0^2*y0 + x0^3 + t^2*x0 + t^4*x0^3 + t^3*x0^4", dst, f2);
  CHECK(pulled.num * P("x0^4", dst, f2) == expected * pulled.den * P("t^4", dst, f2));
}

TEST_CASE("substitute identity and reciprocal") {
  auto reg = Registry::make({"s"});
  auto f2 = Field::gf2();
  Poly f = P("s^2+s", reg, f2);
  // s -> 1/t : t^2*(t^-2 + t^-1) = 1 + t
  auto treg = Registry::make({"t"}, {"t"});
  std::vector<RatExpr> im{parse_ratexpr("1/t", treg, f2)};
  RatExpr r = substitute_rational(f, treg, f2, im);
  Poly cleared = clear_laurent(r.to_laurent());
  CHECK(cleared == P("1+t", treg, f2));
}

TEST_CASE("evaluate") {
  auto reg = Registry::make({"t"});
  auto gf4 = Field::canonical(2);
  Poly f = P("t^2+t+1", reg, gf4);
  CHECK(f.evaluate({FieldElt(2, gf4)}).is_zero()); // t = w is a root
  Poly c = Poly::constant(reg, gf4, 3);
  CHECK(c.evaluate({FieldElt(2, gf4)}).bits == 3);
  // e1 t(t+1) + e2 at t=0 -> e2
  auto reg2 = Registry::make({"t"});
  Poly g = P("t^2+t", reg2, gf4) + Poly::constant(reg2, gf4, 2);
  CHECK(g.evaluate({FieldElt(0, gf4)}).bits == 2);
  // zero assigned to an inverted variable
  auto reg3 = Registry::make({"t"}, {"t"});
  Poly h = Poly::monomial(reg3, gf4, Expo{-1}, 1);
  CHECK_THROWS_AS(h.evaluate({FieldElt(0, gf4)}), MathError);
}

TEST_CASE("jet truncation") {
  auto reg = Registry::make({"x", "y", "z"});
  auto f2 = Field::gf2();
  Poly f = P("z^2+x^3+y^7+x^9", reg, f2);
  CHECK(f.truncated(7) == P("z^2+x^3+y^7", reg, f2));
  CHECK(Poly::zero(reg, f2).truncated(5).is_zero());
  CHECK(P("x+x*y", reg, f2).truncated(1) == P("x", reg, f2));
  // weighted truncation
  std::vector<long long> w{14, 6, 21};
  CHECK(f.truncated(42, &w) == P("z^2+x^3+y^7", reg, f2));
}

TEST_CASE("char-2 Frobenius additivity, random") {
  auto reg = Registry::make({"x", "y"});
  auto F = Field::canonical(4);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 120; ++i) {
    Poly f = random_poly(reg, F, rng);
    Poly g = random_poly(reg, F, rng);
    CHECK((f + g) * (f + g) == f * f + g * g);
  }
}

TEST_CASE("Leibniz rule, random") {
  auto reg = Registry::make({"x", "y", "t"});
  auto F = Field::canonical(2);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 120; ++i) {
    Poly f = random_poly(reg, F, rng);
    Poly g = random_poly(reg, F, rng);
    for (std::size_t v = 0; v < 3; ++v) {
      CHECK((f * g).derivative(v) == f * g.derivative(v) + g * f.derivative(v));
    }
  }
}

TEST_CASE("serial and parallel multiply agree") {
  auto reg = Registry::make({"x", "y", "z", "t"});
  auto F = Field::canonical(4);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 10; ++i) {
    Poly f = random_poly(reg, F, rng, 80, 9);
    Poly g = random_poly(reg, F, rng, 80, 9);
    CHECK(poly_mul_serial(f, g) == poly_mul_parallel(f, g));
  }
}
