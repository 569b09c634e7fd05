#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <enriq/extension.hpp>
#include <enriq/parse.hpp>

using namespace enriq;

TEST_CASE("gf2x irreducibility") {
  CHECK(gf2x::irreducible(0b111));      // w^2+w+1
  CHECK(!gf2x::irreducible(0b101));     // w^2+1 = (w+1)^2
  CHECK(gf2x::irreducible(0b10));       // w
  CHECK(gf2x::irreducible(0b1011));     // w^3+w+1
  CHECK(!gf2x::irreducible(0b110));     // w^2+w = w(w+1)
  CHECK(gf2x::canonical_modulus(2) == 0b111);
}

TEST_CASE("field creation") {
  auto gf4 = Field::make(parse_gf2_modulus("w^2+w+1"));
  CHECK(gf4->degree() == 2);
  // w^2 = w + 1 forced by the modulus
  CHECK(gf4->mul(2, 2) == 3);
  CHECK(Field::gf2()->degree() == 1);
  CHECK_THROWS_AS(Field::make(parse_gf2_modulus("w^2+1")), MathError);
}

TEST_CASE("GF(4) arithmetic") {
  auto gf4 = Field::canonical(2);
  std::uint64_t w = 2;
  CHECK(gf4->mul(w, w) == (w ^ 1));       // w*w = w+1
  CHECK(gf4->inv(w) == (w ^ 1));          // w(w+1) = 1
  CHECK(gf4->mul(w, w ^ 1) == 1);
  CHECK(gf4->sqrt(w) == (w ^ 1));         // (w+1)^2 = w
  CHECK(gf4->mul(w ^ 1, w ^ 1) == w);
}

TEST_CASE("Frobenius bijectivity by exhaustion, k <= 4") {
  for (unsigned k = 1; k <= 4; ++k) {
    auto F = Field::canonical(k);
    for (auto a : F->enumerate()) {
      CHECK(F->mul(F->sqrt(a), F->sqrt(a)) == a);
      CHECK(F->pow(a, 1ULL << k) == a); // a^(2^k) = a
    }
  }
}

TEST_CASE("Frobenius sampling for larger fields") {
  for (unsigned k : {8u, 12u, 16u}) {
    auto F = Field::canonical(k);
    std::uint64_t a = 0b1011010 % (1ULL << k);
    for (int i = 0; i < 50; ++i) {
      a = (a * 0x9E3779B97F4A7C15ULL + 13) & ((1ULL << k) - 1);
      CHECK(F->mul(F->sqrt(a), F->sqrt(a)) == a);
      if (a) CHECK(F->mul(a, F->inv(a)) == 1);
    }
  }
}

TEST_CASE("embeddings preserve arithmetic") {
  auto gf4 = Field::canonical(2);
  auto gf16 = Field::canonical(4);
  const Embedding& em = get_embedding(gf4, gf16);
  for (auto a : gf4->enumerate())
    for (auto b : gf4->enumerate()) {
      CHECK(em(gf4->mul(a, b)) == gf16->mul(em(a), em(b)));
      CHECK(em(gf4->add(a, b)) == gf16->add(em(a), em(b)));
    }
  // injective
  CHECK(em(0) == 0);
  CHECK(em(1) == 1);
  CHECK(em(2) != em(3));
}
