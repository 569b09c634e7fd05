#ifndef ENRIQ_LIEALG_HPP
#define ENRIQ_LIEALG_HPP

#include <enriq/derivation.hpp>

namespace enriq {

// Structure constants of a 2-dimensional restricted Lie algebra in a basis
// (D1, D2): [D1,D2] = b1 D1 + b2 D2, D1^[2] = (s11, s12), D2^[2] = (s21, s22).
struct LieStructure {
  FieldPtr field;
  std::uint64_t b1 = 0, b2 = 0;
  std::uint64_t s11 = 0, s12 = 0, s21 = 0, s22 = 0;

  bool bracket_zero() const { return b1 == 0 && b2 == 0; }
  bool squares_zero() const { return s11 == 0 && s12 == 0 && s21 == 0 && s22 == 0; }

  // coordinates of (e1 D1 + e2 D2)^[2] by the characteristic-2 polarization
  std::pair<std::uint64_t, std::uint64_t> square_of(std::uint64_t e1, std::uint64_t e2) const;
};

LieStructure build_structure(const Atlas& atlas, const Derivation& d1, const Derivation& d2);

// Binary cubic c30 e1^3 + c21 e1^2 e2 + c12 e1 e2^2 + c03 e2^3 whose projective
// roots are the p-closed lines.
struct PClosedCubic {
  FieldPtr field;
  std::uint64_t c30 = 0, c21 = 0, c12 = 0, c03 = 0;
  bool is_zero() const { return c30 == 0 && c21 == 0 && c12 == 0 && c03 == 0; }
};

PClosedCubic p_closed_cubic(const LieStructure& s);

struct LieLine {
  FieldElt e1, e2; // normalized projective pair
  bool multiplicative = false;

  std::string str() const { return "[" + e1.str() + ":" + e2.str() + "]"; }
};

struct LieLines {
  bool all_p_closed = false;  // the cubic vanishes identically
  bool all_additive = false;  // ... and the squares vanish identically
  // enumerated p-closed lines (over a splitting extension); when all_p_closed,
  // this holds the additive locus instead.
  std::vector<LieLine> lines;
  FieldPtr field;
};

LieLines p_closed_lines(const LieStructure& s);

// The five isomorphism classes of 2-dimensional restricted Lie algebras;
// classification is validated against the line census and mismatches throw.
int classify_type(const LieStructure& s);

} // namespace enriq

#endif
