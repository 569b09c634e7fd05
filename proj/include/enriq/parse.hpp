#ifndef ENRIQ_PARSE_HPP
#define ENRIQ_PARSE_HPP

#include <string>

#include <enriq/ratexpr.hpp>

namespace enriq {

struct ParsePos {
  int line = 1;
  int col = 1;
};

struct ParseError : InputError {
  ParsePos pos;
  ParseError(const std::string& msg, ParsePos p)
      : InputError("line " + std::to_string(p.line) + ", col " + std::to_string(p.col) + ": " + msg),
        pos(p) {}
};

// Shared polynomial grammar.  Tokens: names [a-zA-Z][a-zA-Z0-9_]*, integer
// literals (reduced mod 2), + - * ^ ( ) /.  '-' is a synonym of '+'.  The
// reserved name `w` denotes the field generator.  `line0`/`col0` offset error
// positions when the text is a slice of a larger file.
RatExpr parse_ratexpr(const std::string& text, const RegistryPtr& reg, const FieldPtr& field,
                      int line0 = 1, int col0 = 1);

// As above but the result must be a Laurent polynomial: '/' only before unit
// monomials in inverted variables.
Poly parse_poly(const std::string& text, const RegistryPtr& reg, const FieldPtr& field,
                int line0 = 1, int col0 = 1);

// Parse a univariate modulus over GF(2) in the generator name `w`; returns the
// packed bit representation.
std::uint64_t parse_gf2_modulus(const std::string& text);

} // namespace enriq

#endif
