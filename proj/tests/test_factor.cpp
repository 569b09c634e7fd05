#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <enriq/extension.hpp>
#include <enriq/factor.hpp>

using namespace enriq;

namespace {

UPoly U(std::initializer_list<std::uint64_t> cs, const FieldPtr& f) {
  return UPoly(std::vector<std::uint64_t>(cs), f);
}

} // namespace

TEST_CASE("t^2+t+1 over GF(2) is irreducible") {
  auto f2 = Field::gf2();
  auto fs = factor_univariate(U({1, 1, 1}, f2));
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].multiplicity == 1);
  CHECK(fs[0].factor.deg() == 2);
}

TEST_CASE("t^2+t+1 over GF(4) splits at w and w+1") {
  auto gf4 = Field::canonical(2);
  auto fs = factor_univariate(U({1, 1, 1}, gf4));
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].factor.deg() == 1);
  CHECK(fs[1].factor.deg() == 1);
  auto roots = roots_in_field(U({1, 1, 1}, gf4));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == 2);       // w
  CHECK(roots[1] == 3);       // w+1
}

TEST_CASE("t^4+t^2 = (t (t+1))^2 over GF(2)") {
  auto f2 = Field::gf2();
  auto fs = factor_univariate(U({0, 0, 1, 0, 1}, f2));
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].factor.deg() == 1);
  CHECK(fs[0].multiplicity == 2);
  CHECK(fs[1].factor.deg() == 1);
  CHECK(fs[1].multiplicity == 2);
}

TEST_CASE("t^5+t+1 = (t^2+t+1)(t^3+t^2+1)") {
  auto f2 = Field::gf2();
  auto fs = factor_univariate(U({1, 1, 0, 0, 0, 1}, f2));
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].factor.deg() == 2);
  CHECK(fs[1].factor.deg() == 3);
  CHECK(fs[0].factor == U({1, 1, 1}, f2));
  CHECK(fs[1].factor == U({1, 0, 1, 1}, f2));
}

TEST_CASE("recombination and irreducibility, random") {
  std::mt19937_64 rng(5);
  for (unsigned k : {1u, 2u, 3u, 4u}) {
    auto F = Field::canonical(k);
    for (int trial = 0; trial < 25; ++trial) {
      int d = 1 + (int)(rng() % 7);
      UPoly f(F);
      f.c.resize(d + 1);
      for (auto& c : f.c) c = rng() & ((1ULL << k) - 1);
      f.c[d] = 1;
      auto fs = factor_univariate(f, rng());
      UPoly prod = UPoly::constant(F, 1);
      for (const auto& fac : fs) {
        CHECK(is_irreducible(fac.factor));
        for (int m = 0; m < fac.multiplicity; ++m) prod = prod * fac.factor;
      }
      CHECK(prod == f.monic());
    }
  }
}

TEST_CASE("factorization is deterministic for a fixed seed") {
  auto F = Field::canonical(3);
  UPoly f(F);
  f.c = {1, 3, 0, 5, 1, 0, 0, 1};
  auto a = factor_univariate(f, 42);
  auto b = factor_univariate(f, 42);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].factor == b[i].factor);
    CHECK(a[i].multiplicity == b[i].multiplicity);
  }
}
