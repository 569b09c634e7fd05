#ifndef ENRIQ_GEOMETRY_HPP
#define ENRIQ_GEOMETRY_HPP

#include <enriq/groebner.hpp>
#include <enriq/ratexpr.hpp>

namespace enriq {

// An affine chart: variables (some inverted), relation polynomials, and extra
// unit polynomials the chart ring is localized at (units that are not plain
// variables, e.g. t+1).
struct Chart {
  std::string name;
  RegistryPtr reg;
  FieldPtr field;
  std::vector<Poly> relations;
  std::vector<Poly> units;
  std::optional<std::size_t> base_var;
  bool base_reciprocal = false; // base coordinate vanishes at the infinity fiber

  // multiplicative set the ideal theory saturates at
  std::vector<Poly> saturation_set() const;
  std::vector<Poly> saturated_relations() const; // cached by Atlas
};

// Images of the destination chart's variables as rational expressions in the
// source chart's variables; denominators must be units on the declared
// overlap.
struct Transition {
  std::size_t src = 0, dst = 0;
  std::vector<RatExpr> images;        // one per dst variable
  std::vector<Poly> overlap_units;    // source-side polynomials inverted on the overlap
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> failures;
  void fail(const std::string& msg) {
    ok = false;
    failures.push_back(msg);
  }
};

struct Atlas {
  std::string name;
  FieldPtr field;
  std::vector<Chart> charts;
  std::vector<Transition> transitions;

  // caches (built by prepare())
  std::vector<Groebner> chart_ideal;     // saturated relation ideal, grevlex
  std::vector<std::vector<Poly>> sing_ideal; // saturated singular locus generators

  std::size_t chart_index(const std::string& n) const;
  void prepare();
  bool prepared() const { return chart_ideal.size() == charts.size(); }

  // Atlas with every polynomial coefficient embedded into `ext`.
  Atlas coerced(const FieldPtr& ext) const;
};

struct SurfacePoint {
  std::size_t chart = 0;
  std::vector<std::uint64_t> coords;
  FieldPtr field;

  std::string str(const Atlas& atlas) const;
};

ValidationReport validate_chart(const Chart& chart);
ValidationReport validate_transition(const Atlas& atlas, const Transition& t);
ValidationReport validate_atlas(const Atlas& atlas);

// Jacobian-criterion singular locus: relations + c x c minors, saturated.
std::vector<Poly> singular_locus(const Chart& chart);

// Solve every chart's singular locus and deduplicate across overlaps; points
// come back sorted by (chart, coordinates).
std::vector<SurfacePoint> singular_points(const Atlas& atlas, int max_ext_degree = 4,
                                          std::uint64_t seed = 0);

// Map a point through a transition when defined (all denominators and overlap
// units nonzero, inverted destination variables nonzero).
std::optional<SurfacePoint> map_point(const Atlas& atlas, const Transition& t,
                                      const SurfacePoint& p);

// Canonical representative of a point's dedup orbit (smallest chart index,
// then coordinates).
SurfacePoint canonical_point(const Atlas& atlas, const SurfacePoint& p);

bool point_on_chart(const Atlas& atlas, const SurfacePoint& p); // satisfies relations, units nonzero

struct LocalModel {
  RegistryPtr reg; // three local variables
  FieldPtr field;
  Poly jet;
  long long order = 0;      // truncation order
  std::size_t chart = 0;    // provenance
  std::vector<std::uint64_t> point;
  std::string trace;        // elimination trace (which relations/vars were solved)
};

// Three-variable jet model of the surface germ at a singular point.  For
// hypersurface charts this translates and truncates; for complete
// intersections with Jacobian corank 1 it solves c-1 relations by jet Newton
// iteration and substitutes into the remaining one.
LocalModel local_model(const Atlas& atlas, const SurfacePoint& p, long long jet_order = 24);

// Hasse coefficient of the fiber over `value` on the base-coordinate chart
// `chart_idx`.  Weierstrass charts read off a1; charts cut by two fiber
// quadrics use the coefficient of the product of all projective fiber
// variables in Q1*Q2 (equal to a1 in the Weierstrass case).
FieldElt hasse_coefficient_at_fiber(const Atlas& atlas, std::size_t chart_idx, const FieldElt& value);

// True when the fiber over `value` on this chart contains no singular curve
// points (affine check on every chart sharing the base variable).
bool fiber_is_smooth(const Atlas& atlas, std::size_t chart_idx, const FieldElt& value,
                     int max_ext_degree = 8);

} // namespace enriq

#endif
