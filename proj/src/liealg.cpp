#include <enriq/liealg.hpp>

#include <enriq/extension.hpp>
#include <enriq/factor.hpp>

namespace enriq {

std::pair<std::uint64_t, std::uint64_t> LieStructure::square_of(std::uint64_t e1,
                                                                std::uint64_t e2) const {
  const Field& F = *field;
  std::uint64_t a2 = F.mul(e1, e1), b2q = F.mul(e2, e2), ab = F.mul(e1, e2);
  std::uint64_t c1 = F.add(F.add(F.mul(a2, s11), F.mul(b2q, s21)), F.mul(ab, b1));
  std::uint64_t c2 = F.add(F.add(F.mul(a2, s12), F.mul(b2q, s22)), F.mul(ab, b2));
  return {c1, c2};
}

LieStructure build_structure(const Atlas& atlas, const Derivation& d1, const Derivation& d2) {
  LieStructure s;
  s.field = atlas.field;
  auto get = [&](const Derivation& e) {
    BasisCoords bc = express_in_basis(atlas, e, d1, d2);
    if (bc.status == BasisCoords::NotInSpan)
      throw MathError("structure extraction: derivation not in basis span (" + bc.witness + ")");
    if (bc.status == BasisCoords::Degenerate) throw MathError("structure extraction: basis degenerate");
    return std::make_pair(bc.a.bits, bc.b.bits);
  };
  Derivation br = bracket(atlas, d1, d2);
  if (derivation_is_zero(atlas, br)) {
    s.b1 = s.b2 = 0;
  } else {
    std::tie(s.b1, s.b2) = get(br);
  }
  Derivation q1 = square_derivation(atlas, d1);
  if (derivation_is_zero(atlas, q1)) {
    s.s11 = s.s12 = 0;
  } else {
    std::tie(s.s11, s.s12) = get(q1);
  }
  Derivation q2 = square_derivation(atlas, d2);
  if (derivation_is_zero(atlas, q2)) {
    s.s21 = s.s22 = 0;
  } else {
    std::tie(s.s21, s.s22) = get(q2);
  }
  // polarization identity spot-check: (aD1+bD2)^[2] = a^2 s1 + b^2 s2 + ab [D1,D2]
  const Field& F = *atlas.field;
  std::uint64_t probes[3][2] = {{1, 1}, {1, F.degree() > 1 ? 2u : 1u}, {F.degree() > 1 ? 3u : 1u, 1}};
  for (auto& pr : probes) {
    FieldElt a(pr[0], atlas.field), b(pr[1], atlas.field);
    Derivation comb = linear_combination(atlas, a, d1, b, d2);
    Derivation sq = square_derivation(atlas, comb);
    auto expect = s.square_of(a.bits, b.bits);
    Derivation rhs = linear_combination(atlas, FieldElt(expect.first, atlas.field), d1,
                                        FieldElt(expect.second, atlas.field), d2);
    if (!derivations_equal(atlas, sq, rhs))
      throw MathError("polarization identity fails for the extracted structure");
  }
  return s;
}

PClosedCubic p_closed_cubic(const LieStructure& s) {
  // det of rows ((e1 D1 + e2 D2)^[2], (e1,e2)) expanded symbolically
  PClosedCubic c;
  c.field = s.field;
  const Field& F = *s.field;
  c.c30 = s.s12;
  c.c21 = F.add(s.s11, s.b2);
  c.c12 = F.add(s.b1, s.s22);
  c.c03 = s.s21;
  return c;
}

namespace {

LieLine make_line(std::uint64_t e1, std::uint64_t e2, const LieStructure& s, const FieldPtr& F) {
  LieLine l;
  // normalize: first nonzero coordinate is 1
  if (e1 != 0) {
    std::uint64_t inv = F->inv(e1);
    e1 = 1;
    e2 = F->mul(e2, inv);
  } else {
    e2 = 1;
  }
  l.e1 = FieldElt(e1, F);
  l.e2 = FieldElt(e2, F);
  // structure constants live in a subfield of F
  LieStructure se = s;
  if (!s.field->same(*F)) {
    const Embedding& em = get_embedding(s.field, F);
    se.field = F;
    se.b1 = em(s.b1);
    se.b2 = em(s.b2);
    se.s11 = em(s.s11);
    se.s12 = em(s.s12);
    se.s21 = em(s.s21);
    se.s22 = em(s.s22);
  }
  auto sq = se.square_of(l.e1.bits, l.e2.bits);
  l.multiplicative = !(sq.first == 0 && sq.second == 0);
  return l;
}

} // namespace

LieLines p_closed_lines(const LieStructure& s) {
  LieLines out;
  const FieldPtr& F0 = s.field;
  PClosedCubic c = p_closed_cubic(s);
  if (c.is_zero()) {
    out.all_p_closed = true;
    // additive locus: common zeros of the two square coordinate quadrics
    if (s.squares_zero()) {
      out.all_additive = true;
      out.field = F0;
      return out;
    }
    // quadrics q1 = s11 e1^2 + b1 e1 e2 + s21 e2^2, q2 likewise; solve on P^1
    UPoly q1({s.s11, s.b1, s.s21}, F0); // in t = e2/e1 after e1 = 1
    UPoly q2({s.s12, s.b2, s.s22}, F0);
    UPoly g = UPoly::gcd(q1.is_zero() ? q2 : q1, q2.is_zero() ? q1 : q2);
    FieldPtr F = F0;
    if (g.deg() >= 1) {
      unsigned need = 1;
      for (const auto& f : factor_univariate(g, 0)) need = std::max(need, (unsigned)f.factor.deg());
      F = extension_field(F0, need);
      UPoly ge(F);
      for (auto cc : g.c) ge.c.push_back(get_embedding(F0, F)(cc));
      for (auto r : roots_in_field(ge)) out.lines.push_back(make_line(1, r, s, F));
    }
    // the line [0:1] belongs to the locus iff s2 = 0
    if (s.s21 == 0 && s.s22 == 0) out.lines.push_back(make_line(0, 1, s, F));
    out.field = F;
    return out;
  }
  // dehomogenize at e1 = 1: cubic in t = e2/e1
  UPoly cu({c.c30, c.c21, c.c12, c.c03}, F0);
  unsigned need = 1;
  if (cu.deg() >= 1)
    for (const auto& f : factor_univariate(cu, 0)) need = std::max(need, (unsigned)f.factor.deg());
  FieldPtr F = extension_field(F0, need);
  out.field = F;
  if (cu.deg() >= 1) {
    UPoly ce(F);
    for (auto cc : cu.c) ce.c.push_back(get_embedding(F0, F)(cc));
    for (auto r : roots_in_field(ce)) out.lines.push_back(make_line(1, r, s, F));
  } else if (!cu.is_zero()) {
    // constant nonzero in t: no affine roots
  }
  if (c.c03 == 0) out.lines.push_back(make_line(0, 1, s, F));
  return out;
}

int classify_type(const LieStructure& s) {
  LieLines lines = p_closed_lines(s);
  auto additive_count = [&]() {
    int n = 0;
    for (const auto& l : lines.lines)
      if (!l.multiplicative) ++n;
    return n;
  };
  auto mult_count = [&]() {
    int n = 0;
    for (const auto& l : lines.lines)
      if (l.multiplicative) ++n;
    return n;
  };
  if (!s.bracket_zero()) {
    // non-abelian: validated by cubic == 0 with exactly one additive line
    if (!lines.all_p_closed || lines.all_additive || additive_count() != 1 || mult_count() != 0)
      throw MathError("restricted Lie axioms violated: non-abelian structure with bad line census");
    return 1;
  }
  if (s.squares_zero()) return 2;
  if (lines.all_p_closed)
    throw MathError("restricted Lie axioms violated: abelian, nonzero squares, zero cubic");
  int add = additive_count(), mul = mult_count();
  if (mul == 1 && add == 1) return 3;
  if (mul == 0 && add == 1) return 4;
  if (mul == 3 && add == 0) return 5;
  throw MathError("restricted Lie axioms violated: line census " + std::to_string(mul) + " mult + " +
                  std::to_string(add) + " add");
}

} // namespace enriq
