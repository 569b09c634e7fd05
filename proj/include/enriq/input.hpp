#ifndef ENRIQ_INPUT_HPP
#define ENRIQ_INPUT_HPP

#include <enriq/derivation.hpp>
#include <enriq/singclass.hpp>

namespace enriq {

// Conjunction of nonzero conditions on (e1, e2); the literal source formula may
// be undefined on a locus (then direct computation is authoritative).
struct GenericPredicate {
  RegistryPtr reg; // {e1, e2}
  std::vector<Poly> nonzero;
  std::vector<Poly> undefined_when; // formula undefined where all of these vanish

  enum Value { True, False, Undefined };
  Value eval(const FieldElt& e1, const FieldElt& e2) const;
};

struct ExpectedPointGroup {
  int count = 1;
  SingClass cls;
  std::string chart;
  std::vector<Poly> constraints; // vanish exactly at the expected points
};

struct Expectations {
  std::vector<ExpectedPointGroup> sing_cover;
  bool has_cover = false;
  std::vector<SingClass> sing_image;
  bool has_image = false;
  std::vector<SingClass> sing_lifted;
  bool has_lifted = false;
  std::optional<int> lie_type;
  std::optional<std::string> verdict; // classical | supersingular | mixed
  std::optional<GenericPredicate> generic;
  std::optional<Poly> tangent_poly;  // over {e1, e2, t}
  std::optional<Poly> infinity_when; // over {e1, e2}: infinity fiber is tangent iff it vanishes
  std::optional<std::string> ordinary; // "true" | "false" | "na"
  std::optional<bool> ordinary_infinity_fiber;
};

struct ExampleCase {
  std::string name;
  Atlas atlas;
  Derivation d1, d2;
  std::string d1_name = "D1", d2_name = "D2";
  Expectations expect;
};

// Parse the line-oriented surface description format.
ExampleCase parse_input(const std::string& text, const std::string& fallback_name = "input");

} // namespace enriq

#endif
