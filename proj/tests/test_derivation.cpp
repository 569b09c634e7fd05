#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <enriq/extension.hpp>
#include <enriq/parse.hpp>
#include <enriq/verify.hpp>

using namespace enriq;

TEST_CASE("every builtin derivation table is well defined and compatible") {
  for (const auto& ex : builtin_registry()) {
    CAPTURE(ex.name);
    for (const Derivation* d : {&ex.d1, &ex.d2}) {
      for (std::size_t c = 0; c < ex.atlas.charts.size(); ++c) {
        auto w = well_defined(ex.atlas, *d, c);
        if (!w.ok) MESSAGE(ex.name, " ", d->name, " ", w.witness);
        CHECK(w.ok);
      }
      for (const auto& t : ex.atlas.transitions) {
        auto w = transition_compatible(ex.atlas, *d, t);
        if (!w.ok) MESSAGE(ex.name, " ", d->name, " ", w.witness);
        CHECK(w.ok);
      }
    }
  }
}

TEST_CASE("a non-derivation is rejected with a witness") {
  const ExampleCase& ex = builtin_case("12A1");
  // D(x)=1, D(y)=0, D(t)=0 on the main chart is not well defined
  Derivation bad = ex.d1;
  std::size_t main = ex.atlas.chart_index("main");
  const Chart& ch = ex.atlas.charts[main];
  bad.images[main][0] = RatExpr::of(Poly::constant(ch.reg, ch.field, 1));
  bad.images[main][1] = RatExpr::of(Poly::zero(ch.reg, ch.field));
  bad.images[main][2] = RatExpr::of(Poly::zero(ch.reg, ch.field));
  auto w = well_defined(ex.atlas, bad, main);
  CHECK(!w.ok);
  CHECK(!w.witness.empty());
}

TEST_CASE("corrupted transitions are incompatible") {
  const ExampleCase& ex = builtin_case("12A1");
  Atlas bad = ex.atlas;
  std::size_t main = bad.chart_index("main");
  for (auto& t : bad.transitions) {
    if (t.src == main && bad.charts[t.dst].name == "x1") {
      // x1 = x/t^3 instead of x/(t^2+t)
      t.images[0] = parse_ratexpr("x/t^3", bad.charts[main].reg, bad.field);
      auto w = transition_compatible(bad, ex.d1, t);
      CHECK(!w.ok);
    }
  }
}

TEST_CASE("square and bracket identities of the 12A1 basis") {
  const ExampleCase& ex = builtin_case("12A1");
  const Atlas& at = ex.atlas;
  Derivation sq1 = square_derivation(at, ex.d1);
  Derivation sq2 = square_derivation(at, ex.d2);
  Derivation br = bracket(at, ex.d1, ex.d2);
  // D1^2 = D1, D2^2 = 0, [D1,D2] = D2
  CHECK(derivations_equal(at, sq1, ex.d1));
  CHECK(derivation_is_zero(at, sq2));
  CHECK(derivations_equal(at, br, ex.d2));
  // bracket(D, D) = 0
  CHECK(derivation_is_zero(at, bracket(at, ex.d1, ex.d1)));
  // express in basis
  BasisCoords b1 = express_in_basis(at, sq1, ex.d1, ex.d2);
  REQUIRE(b1.status == BasisCoords::Ok);
  CHECK(b1.a.bits == 1);
  CHECK(b1.b.bits == 0);
  BasisCoords b2 = express_in_basis(at, sq2, ex.d1, ex.d2);
  REQUIRE(b2.status == BasisCoords::Ok);
  CHECK(b2.a.bits == 0);
  CHECK(b2.b.bits == 0);
  BasisCoords b3 = express_in_basis(at, br, ex.d1, ex.d2);
  REQUIRE(b3.status == BasisCoords::Ok);
  CHECK(b3.a.bits == 0);
  CHECK(b3.b.bits == 1);
}

TEST_CASE("squares vanish on the additive examples") {
  for (const char* name : {"3D4", "D12", "D4D8-same-fiber", "E12"}) {
    const ExampleCase& ex = builtin_case(name);
    CAPTURE(name);
    CHECK(derivation_is_zero(ex.atlas, square_derivation(ex.atlas, ex.d1)));
    CHECK(derivation_is_zero(ex.atlas, square_derivation(ex.atlas, ex.d2)));
    CHECK(derivation_is_zero(ex.atlas, bracket(ex.atlas, ex.d1, ex.d2)));
  }
}

TEST_CASE("char-2 polarization of squares, random coefficients") {
  auto gf4 = Field::canonical(2);
  for (const char* name : {"12A1", "D12"}) {
    ExampleCase cx = coerce_case(builtin_case(name), gf4);
    std::mt19937_64 rng(19);
    Derivation sq1 = square_derivation(cx.atlas, cx.d1);
    Derivation sq2 = square_derivation(cx.atlas, cx.d2);
    Derivation br = bracket(cx.atlas, cx.d1, cx.d2);
    for (int i = 0; i < 3; ++i) {
      FieldElt a(rng() & 3, gf4), b(rng() & 3, gf4);
      Derivation comb = linear_combination(cx.atlas, a, cx.d1, b, cx.d2);
      Derivation lhs = square_derivation(cx.atlas, comb);
      Derivation rhs = linear_combination(cx.atlas, a * a, sq1, b * b, sq2);
      rhs = linear_combination(cx.atlas, FieldElt(1, gf4), rhs, a * b, br);
      CHECK(derivations_equal(cx.atlas, lhs, rhs));
    }
  }
}

TEST_CASE("Leibniz rule for apply, random") {
  const ExampleCase& ex = builtin_case("D12");
  std::size_t main = ex.atlas.chart_index("main");
  const Chart& ch = ex.atlas.charts[main];
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    std::vector<Term> fs, gs;
    for (int j = 0; j < 4; ++j) {
      fs.push_back(Term{Expo{(int)(rng() % 3), (int)(rng() % 3), (int)(rng() % 3)}, rng() & 1});
      gs.push_back(Term{Expo{(int)(rng() % 3), (int)(rng() % 3), (int)(rng() % 3)}, rng() & 1});
    }
    Poly f = Poly::from_terms(ch.reg, ch.field, fs);
    Poly g = Poly::from_terms(ch.reg, ch.field, gs);
    RatExpr lhs = apply_derivation(ex.atlas, ex.d2, main, f * g);
    RatExpr rhs = RatExpr::of(f) * apply_derivation(ex.atlas, ex.d2, main, g) +
                  RatExpr::of(g) * apply_derivation(ex.atlas, ex.d2, main, f);
    Poly diff = lhs.num * rhs.den + rhs.num * lhs.den;
    CHECK(normal_form(diff, ex.atlas.chart_ideal[main]).is_zero());
  }
}

TEST_CASE("fixed ideals and degrees of the model derivations") {
  // E12 model: D(X) = Y^6, D(Y) = X^2 on a smooth plane chart
  auto reg = Registry::make({"X", "Y"});
  auto f2 = Field::gf2();
  std::vector<Poly> fix{parse_poly("Y^6", reg, f2), parse_poly("X^2", reg, f2)};
  auto deg = local_multiplicity_at_origin(fix);
  REQUIRE(deg.has_value());
  CHECK(*deg == 12);
  // A1 model: D(X) = X, D(Y) = Y
  std::vector<Poly> fix2{parse_poly("X", reg, f2), parse_poly("Y", reg, f2)};
  CHECK(*local_multiplicity_at_origin(fix2) == 1);
}

TEST_CASE("fixed degree at a non-fixed point is zero") {
  const ExampleCase& ex = builtin_case("D12");
  // D2 has D2(y0) = t^2 x0^2 + 1, a unit at the x0 origin
  SurfacePoint p;
  p.chart = ex.atlas.chart_index("x0");
  p.field = ex.atlas.field;
  p.coords = {0, 0, 0};
  CHECK(fixed_degree_at(ex.atlas, ex.d2, p) == 0);
  // D1 fixes the D12 point
  CHECK(fixed_degree_at(ex.atlas, ex.d1, p) > 0);
}

TEST_CASE("fixed-point-freeness of sample coefficient pairs") {
  auto gf4 = Field::canonical(2);
  // 12A1: (1, w) is generic, (1, 1) is not
  ExampleCase a = coerce_case(builtin_case("12A1"), gf4);
  Derivation good = linear_combination(a.atlas, FieldElt(1, gf4), a.d1, FieldElt(2, gf4), a.d2);
  CHECK(is_fixed_point_free(a.atlas, good));
  Derivation badd = linear_combination(a.atlas, FieldElt(1, gf4), a.d1, FieldElt(1, gf4), a.d2);
  CHECK(!is_fixed_point_free(a.atlas, badd));
  // E12: (1, 0) is generic
  ExampleCase e = coerce_case(builtin_case("E12"), gf4);
  Derivation d10 = linear_combination(e.atlas, FieldElt(1, gf4), e.d1, FieldElt(0, gf4), e.d2);
  CHECK(is_fixed_point_free(e.atlas, d10));
  Derivation d01 = linear_combination(e.atlas, FieldElt(0, gf4), e.d1, FieldElt(1, gf4), e.d2);
  CHECK(!is_fixed_point_free(e.atlas, d01));
}

TEST_CASE("canonical lines") {
  const ExampleCase& ex = builtin_case("12A1");
  auto pts = singular_points(ex.atlas);
  REQUIRE(pts.size() == 6);
  // the A7 point at the x1 origin has line [1:0]
  for (const auto& p : pts) {
    if (ex.atlas.charts[p.chart].name != "x1") continue;
    CanonicalLine cl = canonical_line(ex.atlas, p, ex.d1, ex.d2);
    REQUIRE(cl.status == CanonicalLine::Line);
    CHECK(cl.e1.bits == 1);
    CHECK(cl.e2.bits == 0);
  }
  // D12: line [1:0] at the D12 point
  const ExampleCase& d = builtin_case("D12");
  auto dpts = singular_points(d.atlas);
  REQUIRE(dpts.size() == 1);
  CanonicalLine cl = canonical_line(d.atlas, dpts[0], d.d1, d.d2);
  REQUIRE(cl.status == CanonicalLine::Line);
  CHECK(cl.e1.bits == 1);
  CHECK(cl.e2.bits == 0);
  // a smooth point has no line
  SurfacePoint smooth;
  smooth.chart = d.atlas.chart_index("main");
  smooth.field = d.atlas.field;
  smooth.coords = {1, 0, 1};
  CHECK(canonical_line(d.atlas, smooth, d.d1, d.d2).status == CanonicalLine::NoLine);
}

TEST_CASE("p-closedness") {
  auto gf4 = Field::canonical(2);
  ExampleCase a = coerce_case(builtin_case("12A1"), gf4);
  // D = e1 D1 + e2 D2 has D^2 = e1 D
  for (std::uint64_t e1 : {0ull, 1ull, 2ull}) {
    for (std::uint64_t e2 : {1ull, 3ull}) {
      Derivation d = linear_combination(a.atlas, FieldElt(e1, gf4), a.d1, FieldElt(e2, gf4), a.d2);
      PClosedResult pc = p_closed(a.atlas, d, a.d1, a.d2);
      CHECK(pc.p_closed);
      CHECK(pc.lambda.bits == e1);
    }
  }
  // 3D4: lambda = 0 always
  ExampleCase e = coerce_case(builtin_case("3D4"), gf4);
  Derivation d = linear_combination(e.atlas, FieldElt(2, gf4), e.d1, FieldElt(3, gf4), e.d2);
  PClosedResult pc = p_closed(e.atlas, d, e.d1, e.d2);
  CHECK(pc.p_closed);
  CHECK(pc.lambda.is_zero());
}

TEST_CASE("tangent fibers") {
  auto gf4 = Field::canonical(2);
  // 12A1 with (e1,e2) = (1,1): roots of t^2+t+1 at w, w^2
  ExampleCase a = coerce_case(builtin_case("12A1"), gf4);
  Derivation d = linear_combination(a.atlas, FieldElt(1, gf4), a.d1, FieldElt(1, gf4), a.d2);
  TangentFibers tf = tangent_fibers(a.atlas, d);
  CHECK(!tf.vertical);
  CHECK(!tf.infinity);
  REQUIRE(tf.finite.size() == 2);
  // 12A1 with e1 = 0: only the infinity fiber
  Derivation d2 = linear_combination(a.atlas, FieldElt(0, gf4), a.d1, FieldElt(1, gf4), a.d2);
  TangentFibers tf2 = tangent_fibers(a.atlas, d2);
  CHECK(tf2.finite.empty());
  CHECK(tf2.infinity);
  // D12 with (1,1): double root at t = 1
  ExampleCase h = coerce_case(builtin_case("D12"), gf4);
  Derivation dh = linear_combination(h.atlas, FieldElt(1, gf4), h.d1, FieldElt(1, gf4), h.d2);
  TangentFibers tfh = tangent_fibers(h.atlas, dh);
  REQUIRE(tfh.finite.size() == 1);
  CHECK(tfh.finite[0].bits == 1);
  // D4D8-same-fiber: t = 0 regardless of the coefficients
  ExampleCase i = coerce_case(builtin_case("D4D8-same-fiber"), gf4);
  Derivation di = linear_combination(i.atlas, FieldElt(1, gf4), i.d1, FieldElt(3, gf4), i.d2);
  TangentFibers tfi = tangent_fibers(i.atlas, di);
  REQUIRE(tfi.finite.size() == 1);
  CHECK(tfi.finite[0].bits == 0);
}
