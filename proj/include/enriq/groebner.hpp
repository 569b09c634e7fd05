#ifndef ENRIQ_GROEBNER_HPP
#define ENRIQ_GROEBNER_HPP

#include <optional>

#include <enriq/poly.hpp>

namespace enriq {

// Reduced Groebner basis: generators monic, interreduced, sorted by leading
// term ascending in the basis order.
struct Groebner {
  std::vector<Poly> basis;
  TermOrder order;
  RegistryPtr reg;
  FieldPtr field;

  bool trivial() const { return basis.size() == 1 && basis[0].is_one(); }
};

// Debug hook: when enabled, every computed basis is re-checked against the
// Buchberger criterion (all S-polynomials reduce to zero).
void set_groebner_paranoia(bool on);
bool groebner_paranoia();

Groebner groebner_compute(std::vector<Poly> gens, TermOrder order = TermOrder::grevlex());

Poly normal_form(const Poly& f, const Groebner& gb);

bool contains_one(const Groebner& gb);

// Checks the Buchberger criterion on an alleged basis (used by tests and the
// paranoia hook).
bool buchberger_criterion_holds(const Groebner& gb);

// I : f^infinity via the auxiliary-variable construction.
std::vector<Poly> saturate(const std::vector<Poly>& gens, const Poly& f);

// Repeated saturation at several polynomials.
std::vector<Poly> saturate_all(std::vector<Poly> gens, const std::vector<Poly>& fs);

// Intersection with the subring excluding `vars` (block order with `vars`
// first).  Result lives in the same registry with those variables unused.
std::vector<Poly> eliminate(const std::vector<Poly>& gens, const std::vector<std::size_t>& vars);

// Radical-membership shortcut: V(I) \ V(f) empty, i.e. 1 in (I, 1 - u f).
bool vanishing_locus_inside(const std::vector<Poly>& gens, const Poly& f);

// Krull dimension of the ideal (from the leading-term staircase of a grevlex
// basis): max size of a variable subset meeting no leading term support.
int ideal_dimension(const Groebner& gb);

// Number of standard monomials; nullopt when not zero-dimensional.
std::optional<long long> zero_dim_degree(const Groebner& gb);

struct SolvedPoint {
  std::vector<std::uint64_t> coords; // one per registry variable
  FieldPtr field;
};

struct SolveOutcome {
  std::vector<SolvedPoint> points;
  FieldPtr field; // common coordinate field
  bool too_small = false;
  int needed_degree = 0; // when too_small
};

// All solutions of a zero-dimensional ideal with coordinates in an extension
// of total relative degree <= max_ext_degree.  Deterministic ordering.
SolveOutcome solve_zero_dim(const std::vector<Poly>& gens, const RegistryPtr& reg,
                            const FieldPtr& field, int max_ext_degree, std::uint64_t seed = 0);

// Multiplicity of the ideal at the origin: dim of (I + m^N) as N stabilizes
// (the dimensions are monotone, so two equal values at distinct N are
// conclusive).  Computed by linear algebra on degree-truncated monomial
// multiples.  Returns nullopt when no stabilization happens up to the cap
// (origin not isolated or cap too low).
std::optional<long long> local_multiplicity_at_origin(const std::vector<Poly>& gens, int cap = 34);

// Independent route for the same quantity: Groebner degree of I + m^N.  Kept
// as a cross-check oracle for the primary route.
std::optional<long long> local_multiplicity_groebner(const std::vector<Poly>& gens, int cap = 34);

} // namespace enriq

#endif
