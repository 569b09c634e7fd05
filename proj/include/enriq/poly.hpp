#ifndef ENRIQ_POLY_HPP
#define ENRIQ_POLY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <enriq/field.hpp>

namespace enriq {

// Ordered variable names with a subset flagged as inverted (unit) variables.
// Negative exponents are legal exactly at inverted positions.
class Registry {
public:
  Registry(std::vector<std::string> names, std::vector<bool> inverted);
  static std::shared_ptr<const Registry> make(std::vector<std::string> names,
                                              std::vector<std::string> inverted = {});

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  bool inverted(std::size_t i) const { return inverted_[i]; }
  std::optional<std::size_t> find(const std::string& n) const;
  std::size_t index_of(const std::string& n) const;

  // New registry with extra variables appended.
  std::shared_ptr<const Registry> extended(const std::vector<std::string>& extra,
                                           bool extra_inverted = false) const;
  bool same(const Registry& o) const;

private:
  std::vector<std::string> names_;
  std::vector<bool> inverted_;
};

using RegistryPtr = std::shared_ptr<const Registry>;

using Expo = std::vector<std::int32_t>;

inline long long total_degree(const Expo& e) {
  long long d = 0;
  for (auto x : e) d += x;
  return d;
}

// Monomial orders: graded reverse lexicographic, lexicographic, and a two-block
// order (first `split` coordinates eliminated first, grevlex inside blocks).
struct TermOrder {
  enum Kind { Grevlex, Lex, Block } kind = Grevlex;
  std::size_t split = 0;

  static TermOrder grevlex() { return {Grevlex, 0}; }
  static TermOrder lex() { return {Lex, 0}; }
  static TermOrder block(std::size_t split) { return {Block, split}; }

  // true if a > b
  bool greater(const Expo& a, const Expo& b) const;
  bool equal_kind(const TermOrder& o) const { return kind == o.kind && split == o.split; }
};

struct Term {
  Expo exp;
  std::uint64_t coeff;
};

// Sparse multivariate Laurent polynomial over GF(2^k).  Terms are kept sorted
// in descending grevlex order; no zero coefficients are stored.
class Poly {
public:
  Poly() = default;
  Poly(RegistryPtr reg, FieldPtr field) : reg_(std::move(reg)), field_(std::move(field)) {}

  static Poly zero(RegistryPtr reg, FieldPtr field) { return Poly(reg, field); }
  static Poly constant(RegistryPtr reg, FieldPtr field, std::uint64_t c);
  static Poly variable(RegistryPtr reg, FieldPtr field, std::size_t idx, int power = 1);
  static Poly monomial(RegistryPtr reg, FieldPtr field, Expo e, std::uint64_t c);

  const RegistryPtr& reg() const { return reg_; }
  const FieldPtr& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].exp) == 0 && !has_any_exponent()); }
  bool is_one() const;
  std::size_t nterms() const { return terms_.size(); }

  // Leading term with respect to an order (terms are stored grevlex-sorted, so
  // non-grevlex orders scan).
  const Term& leading(const TermOrder& ord) const;
  long long degree() const; // max total degree, 0 for the zero polynomial
  long long order_at_origin() const; // min total degree; LLONG_MAX for zero
  int degree_in(std::size_t var) const;
  int min_exponent(std::size_t var) const;
  bool has_negative_exponents() const;
  bool uses_var(std::size_t var) const;

  std::uint64_t coeff_of(const Expo& e) const;

  Poly operator+(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
  Poly scaled(std::uint64_t c) const;
  Poly times_monomial(const Expo& e, std::uint64_t c) const;
  Poly pow(unsigned e) const;

  Poly derivative(std::size_t var) const;
  // Substitute variables by polynomials over a target registry/field.  Every
  // variable must be mapped.
  Poly substitute(const RegistryPtr& target, const FieldPtr& tfield,
                  const std::vector<Poly>& images) const;
  // As above, truncating at total degree N after every product (for jets).
  Poly substitute_truncated(const RegistryPtr& target, const FieldPtr& tfield,
                            const std::vector<Poly>& images, long long N) const;
  FieldElt evaluate(const std::vector<FieldElt>& point) const;
  // Partial evaluation: fix the listed variables, keep the others.
  Poly evaluate_partial(const std::vector<std::optional<std::uint64_t>>& values) const;

  Poly truncated(long long max_degree, const std::vector<long long>* weights = nullptr) const;
  Poly drop_below(long long min_degree) const;

  // Coefficient polynomial of var^k (a polynomial in the remaining variables,
  // same registry with exponent 0 at var).
  Poly coeff_in(std::size_t var, int k) const;

  Poly map_coefficients(const std::function<std::uint64_t(std::uint64_t)>& fn,
                        FieldPtr new_field) const;
  // Same variable names, new registry (must have identical size/order).
  Poly with_registry(RegistryPtr reg) const;
  // Reindex exponents into a target registry by variable name; unused target
  // variables get exponent 0.  Throws if a used variable is missing.
  Poly transported(const RegistryPtr& target) const;

  std::string str() const;

  friend bool operator==(const Poly& a, const Poly& b);

  // Kernel selection for the multiply inner loop (see kernels.cpp).
  static void set_parallel(bool on);
  static bool parallel_enabled();

  // Internal: build from unsorted term list (accumulates duplicates).
  static Poly from_terms(RegistryPtr reg, FieldPtr field, std::vector<Term> ts);

private:
  bool has_any_exponent() const;
  RegistryPtr reg_;
  FieldPtr field_;
  std::vector<Term> terms_; // descending grevlex
};

// Multiply kernels: serial reference and the OpenMP-parallel version.  Both
// produce identical canonical results.
Poly poly_mul_serial(const Poly& a, const Poly& b);
Poly poly_mul_parallel(const Poly& a, const Poly& b);

// Laurent polynomial -> polynomial times a monomial unit (clears negative
// exponents).
Poly clear_laurent(const Poly& p);

// Shift a point to the origin: v -> v + c_v.
Poly translate_to_origin(const Poly& p, const std::vector<std::uint64_t>& point);

} // namespace enriq

#endif
