#ifndef ENRIQ_DERIVATION_HPP
#define ENRIQ_DERIVATION_HPP

#include <enriq/geometry.hpp>

namespace enriq {

// A derivation of the atlas, given per chart by the images of the chart
// variables.  Image denominators are units of the chart.
struct Derivation {
  std::string name;
  std::vector<std::vector<RatExpr>> images; // [chart][var]

  const RatExpr& image(std::size_t chart, std::size_t var) const { return images[chart][var]; }
};

struct WellDefinedResult {
  bool ok = true;
  std::string witness; // offending relation / variable when not ok
};

// D(f) on a chart by the chain rule through all partials.
RatExpr apply_derivation(const Atlas& atlas, const Derivation& d, std::size_t chart, const Poly& f);
RatExpr apply_derivation(const Atlas& atlas, const Derivation& d, std::size_t chart,
                         const RatExpr& r);

// D(relation) lies in the saturated relation ideal, for every relation.
WellDefinedResult well_defined(const Atlas& atlas, const Derivation& d, std::size_t chart);

// D(phi(v)) - phi(D(v)) in the source ideal on the overlap, for every
// destination variable.
WellDefinedResult transition_compatible(const Atlas& atlas, const Derivation& d,
                                        const Transition& t);

Derivation linear_combination(const Atlas& atlas, const FieldElt& a, const Derivation& d1,
                              const FieldElt& b, const Derivation& d2);
Derivation square_derivation(const Atlas& atlas, const Derivation& d);
Derivation bracket(const Atlas& atlas, const Derivation& d1, const Derivation& d2);

// Equality of images modulo the chart ideals (not syntactic).
bool derivations_equal(const Atlas& atlas, const Derivation& a, const Derivation& b);
bool derivation_is_zero(const Atlas& atlas, const Derivation& d);

// relation ideal + images, saturated at the chart units.
std::vector<Poly> fix_ideal(const Atlas& atlas, const Derivation& d, std::size_t chart);

bool is_fixed_point_free(const Atlas& atlas, const Derivation& d);

// Local multiplicity of the fixed ideal at a point of the atlas.
long long fixed_degree_at(const Atlas& atlas, const Derivation& d, const SurfacePoint& p);

struct BasisCoords {
  enum Status { Ok, NotInSpan, Degenerate } status = Ok;
  FieldElt a, b;
  std::string witness;
};

// E = a*D1 + b*D2 with constant field coefficients, solved by coefficient
// comparison of normal forms.
BasisCoords express_in_basis(const Atlas& atlas, const Derivation& e, const Derivation& d1,
                             const Derivation& d2);

struct PClosedResult {
  bool p_closed = false;
  bool degenerate = false; // zero derivation
  FieldElt lambda;
};

// D^2 = lambda * D over constants, in the given basis.
PClosedResult p_closed(const Atlas& atlas, const Derivation& d, const Derivation& d1,
                       const Derivation& d2);

struct CanonicalLine {
  enum Status { Line, NoLine, Degenerate } status = NoLine;
  // projective pair [e1 : e2], normalized: first nonzero coordinate = 1
  FieldElt e1, e2;
};

// Kernel line of (e1,e2) -> (e1 D1 + e2 D2)(point).
CanonicalLine canonical_line(const Atlas& atlas, const SurfacePoint& p, const Derivation& d1,
                             const Derivation& d2);

struct TangentFibers {
  bool vertical = false;               // D(base) vanishes identically
  std::vector<FieldElt> finite;        // base values of tangent fibers
  bool infinity = false;               // the reciprocal-chart fiber at 0
  FieldPtr field;                      // field of the finite values
};

// Roots of D(base coordinate); the reciprocal chart's root at 0 is the fiber
// at infinity and is reported separately.
TangentFibers tangent_fibers(const Atlas& atlas, const Derivation& d, int max_ext_degree = 6,
                             std::uint64_t seed = 0);

} // namespace enriq

#endif
