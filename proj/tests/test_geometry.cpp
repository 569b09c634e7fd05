#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <enriq/assets.hpp>
#include <enriq/extension.hpp>
#include <enriq/parse.hpp>
#include <enriq/verify.hpp>

using namespace enriq;

TEST_CASE("chart validation accepts the builtin charts") {
  const ExampleCase& d12 = builtin_case("D12");
  for (const auto& c : d12.atlas.charts) CHECK(validate_chart(c).ok);
  const ExampleCase& e12 = builtin_case("E12");
  // the quadric-bundle chart over k[s]: 2 relations in 4 variables
  const Chart& es = e12.atlas.charts[e12.atlas.chart_index("es")];
  CHECK(es.relations.size() == 2);
  CHECK(es.reg->size() == 4);
  CHECK(validate_chart(es).ok);
}

TEST_CASE("dimension failures are caught") {
  auto reg = Registry::make({"x", "y", "z"});
  auto f2 = Field::gf2();
  Chart c;
  c.name = "bad";
  c.reg = reg;
  c.field = f2;
  c.relations = {parse_poly("x*y", reg, f2), parse_poly("z", reg, f2)};
  CHECK(!validate_chart(c).ok); // 2 relations in 3 variables: dimension 1
}

TEST_CASE("transition validation: D12 pair and a corrupted map") {
  const ExampleCase& ex = builtin_case("D12");
  for (const auto& t : ex.atlas.transitions) CHECK(validate_transition(ex.atlas, t).ok);
  // corrupt the main->x0 map: x0 = t^3/x instead of t^2/x
  Atlas bad = ex.atlas;
  const Chart& main = bad.charts[bad.chart_index("main")];
  for (auto& t : bad.transitions) {
    if (t.src == bad.chart_index("main") && t.dst == bad.chart_index("x0")) {
      t.images[0] = parse_ratexpr("t^3/x", main.reg, bad.field);
      auto rep = validate_transition(bad, t);
      CHECK(!rep.ok);
    }
  }
}

TEST_CASE("12A1 transitions validate (the t(t-1) overlap)") {
  const ExampleCase& ex = builtin_case("12A1");
  for (const auto& t : ex.atlas.transitions) {
    auto rep = validate_transition(ex.atlas, t);
    if (!rep.ok) {
      for (auto& f : rep.failures) MESSAGE(f);
    }
    CHECK(rep.ok);
  }
}

TEST_CASE("singular locus of a smooth localized chart is trivial") {
  auto reg = Registry::make({"x", "y", "t"}, {"x", "y"});
  auto f2 = Field::gf2();
  Chart c;
  c.name = "torus";
  c.reg = reg;
  c.field = f2;
  c.relations = {parse_poly("x*y+1", reg, f2)};
  auto locus = singular_locus(c);
  CHECK(contains_one(groebner_compute(locus)));
}

TEST_CASE("D12: exactly one singular point at the x0 origin") {
  const ExampleCase& ex = builtin_case("D12");
  auto pts = singular_points(ex.atlas);
  REQUIRE(pts.size() == 1);
  CHECK(ex.atlas.charts[pts[0].chart].name == "x0");
  CHECK(pts[0].coords == std::vector<std::uint64_t>{0, 0, 0});
}

TEST_CASE("D4D8-same-fiber: two points") {
  const ExampleCase& ex = builtin_case("D4D8-same-fiber");
  auto pts = singular_points(ex.atlas);
  REQUIRE(pts.size() == 2);
  CHECK(ex.atlas.charts[pts[0].chart].name == "x0");
  CHECK(ex.atlas.charts[pts[1].chart].name == "x3");
}

TEST_CASE("12A1: six singular points, deduplicated across charts") {
  const ExampleCase& ex = builtin_case("12A1");
  auto pts = singular_points(ex.atlas);
  REQUIRE(pts.size() == 6);
  int on_main = 0, on_x1 = 0, on_x2 = 0;
  for (const auto& p : pts) {
    std::string n = ex.atlas.charts[p.chart].name;
    if (n == "main") ++on_main;
    if (n == "x1") ++on_x1;
    if (n == "x2") ++on_x2;
  }
  CHECK(on_main == 2); // t = w, w^2
  CHECK(on_x1 == 2);
  CHECK(on_x2 == 2);
}

TEST_CASE("local model at the D12 point is the translated chart jet") {
  const ExampleCase& ex = builtin_case("D12");
  auto pts = singular_points(ex.atlas);
  REQUIRE(pts.size() == 1);
  LocalModel lm = local_model(ex.atlas, pts[0], 24);
  auto reg = lm.reg;
  Poly expected =
      parse_poly("y0^2 + t^4*x0^2*y0 + x0^3 + t^2*x0 + t^4*x0^3 + t^3*x0^4", reg, lm.field);
  CHECK(lm.jet == expected.truncated(24));
  CHECK(lm.jet.order_at_origin() == 2);
}

TEST_CASE("local model rejects smooth points") {
  const ExampleCase& ex = builtin_case("D12");
  SurfacePoint p;
  p.chart = ex.atlas.chart_index("sinf");
  p.field = ex.atlas.field;
  p.coords = {0, 0, 0};
  REQUIRE(point_on_chart(ex.atlas, p));
  CHECK_THROWS_AS(local_model(ex.atlas, p, 16), MathError);
}

TEST_CASE("E12: the five-variable chart reduces by Newton elimination") {
  const ExampleCase& ex = builtin_case("E12");
  auto pts = singular_points(ex.atlas);
  REQUIRE(pts.size() == 1);
  CHECK(ex.atlas.charts[pts[0].chart].name == "px1");
  LocalModel lm = local_model(ex.atlas, pts[0], 24);
  CHECK(lm.reg->size() == 3);
  CHECK(lm.jet.order_at_origin() == 2);
}

TEST_CASE("Hasse coefficient: Weierstrass charts") {
  const ExampleCase& a = builtin_case("12A1");
  auto gf16 = Field::canonical(4);
  FieldElt v(7, gf16); // any base value away from 0,1
  ExampleCase cx = coerce_case(a, gf16);
  FieldElt h = hasse_coefficient_at_fiber(cx.atlas, cx.atlas.chart_index("main"), v);
  CHECK(!h.is_zero()); // a1 = 1 identically: ordinary fibers
  const ExampleCase& d = builtin_case("D12");
  ExampleCase dx = coerce_case(d, gf16);
  FieldElt h2 = hasse_coefficient_at_fiber(dx.atlas, dx.atlas.chart_index("main"), v);
  CHECK(h2.is_zero());
  const ExampleCase& e = builtin_case("3D4");
  ExampleCase ex4 = coerce_case(e, gf16);
  FieldElt h3 = hasse_coefficient_at_fiber(ex4.atlas, ex4.atlas.chart_index("main"), v);
  CHECK(h3.is_zero());
}

TEST_CASE("Hasse coefficient: the quadric-pair chart of E12") {
  const ExampleCase& e = builtin_case("E12");
  auto gf4 = Field::canonical(2);
  ExampleCase cx = coerce_case(e, gf4);
  FieldElt h = hasse_coefficient_at_fiber(cx.atlas, cx.atlas.chart_index("et"), FieldElt(2, gf4));
  CHECK(h.is_zero());
}

TEST_CASE("transition round trips map points consistently") {
  const ExampleCase& ex = builtin_case("D12");
  SurfacePoint p;
  p.chart = ex.atlas.chart_index("main");
  p.field = ex.atlas.field;
  p.coords = {1, 0, 1}; // on the surface: y^2+y+x^3+1 at t=1 vanishes at (1,0)
  REQUIRE(point_on_chart(ex.atlas, p));
  for (const auto& t : ex.atlas.transitions) {
    if (t.src != p.chart) continue;
    auto q = map_point(ex.atlas, t, p);
    if (!q) continue;
    for (const auto& r : ex.atlas.transitions) {
      if (r.src != q->chart || r.dst != p.chart) continue;
      auto back = map_point(ex.atlas, r, *q);
      REQUIRE(back.has_value());
      CHECK(back->coords == p.coords);
    }
  }
}
