#ifndef ENRIQ_FIELD_HPP
#define ENRIQ_FIELD_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <enriq/error.hpp>

namespace enriq {

// Polynomials over the 2-element prime field, packed into bits (bit i = coefficient of w^i).
namespace gf2x {

inline int degree(std::uint64_t f) { return f == 0 ? -1 : 63 - __builtin_clzll(f); }

std::uint64_t mul(std::uint64_t a, std::uint64_t b);
std::uint64_t mod(std::uint64_t a, std::uint64_t m);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

// Rabin test. Degree must be >= 1.
bool irreducible(std::uint64_t f);

// Smallest irreducible polynomial of degree k, ordered by the packed bit value.
std::uint64_t canonical_modulus(unsigned k);

std::string to_string(std::uint64_t f, const std::string& var = "w");

} // namespace gf2x

// The finite field GF(2^k) presented as GF(2)[w]/(modulus).  Elements are raw
// bit masks of degree < k; arithmetic lives on the Field object so coefficient
// storage in polynomials stays a flat integer.
class Field {
public:
  static std::shared_ptr<const Field> make(std::uint64_t modulus);
  static std::shared_ptr<const Field> gf2();
  // GF(2^k) with the canonical modulus.
  static std::shared_ptr<const Field> canonical(unsigned k);

  unsigned degree() const { return k_; }
  std::uint64_t modulus() const { return mod_; }
  std::uint64_t size_log2() const { return k_; }
  bool is_gf2() const { return k_ == 1; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return a ^ b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return gf2x::mulmod(a, b, mod_); }
  std::uint64_t sqr(std::uint64_t a) const { return mul(a, a); }
  std::uint64_t pow(std::uint64_t a, unsigned long long e) const;
  std::uint64_t inv(std::uint64_t a) const;
  // Unique square root (Frobenius is bijective): a^(2^(k-1)).
  std::uint64_t sqrt(std::uint64_t a) const;
  std::uint64_t generator() const { return k_ == 1 ? 1 : 2; }

  // All field elements in deterministic order (0,1,w,w+1,...); degree <= 20 only.
  std::vector<std::uint64_t> enumerate() const;

  std::string to_string(std::uint64_t a) const;

  bool same(const Field& o) const { return mod_ == o.mod_; }

private:
  explicit Field(std::uint64_t modulus);
  std::uint64_t mod_;
  unsigned k_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Value-semantic element used at API boundaries.
struct FieldElt {
  std::uint64_t bits = 0;
  FieldPtr field;

  FieldElt() = default;
  FieldElt(std::uint64_t b, FieldPtr f) : bits(b), field(std::move(f)) {}

  bool is_zero() const { return bits == 0; }
  bool is_one() const { return bits == 1; }
  std::string str() const { return field ? field->to_string(bits) : "0"; }

  friend bool operator==(const FieldElt& a, const FieldElt& b) {
    return a.bits == b.bits && (a.bits == 0 || a.field->same(*b.field));
  }
  friend FieldElt operator+(const FieldElt& a, const FieldElt& b) {
    return {a.bits ^ b.bits, a.field ? a.field : b.field};
  }
  friend FieldElt operator*(const FieldElt& a, const FieldElt& b) {
    return {a.field->mul(a.bits, b.bits), a.field};
  }
};

} // namespace enriq

#endif
