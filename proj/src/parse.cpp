#include <enriq/parse.hpp>

#include <cctype>

#include <enriq/extension.hpp>

namespace enriq {

RatExpr substitute_rational(const Poly& f, const RegistryPtr& treg, const FieldPtr& tfield,
                            const std::vector<RatExpr>& images) {
  ENRIQ_CHECK(images.size() == f.reg()->size(), "substitute_rational: image count mismatch");
  const std::size_t n = f.reg()->size();
  Poly fc = clear_laurent(f);
  Expo shift(n, 0); // f = fc / prod v^shift
  for (std::size_t v = 0; v < n; ++v) {
    int m = f.min_exponent(v);
    if (m < 0) shift[v] = -m;
  }
  std::vector<int> maxe(n, 0);
  for (const auto& t : fc.terms())
    for (std::size_t v = 0; v < n; ++v) maxe[v] = std::max(maxe[v], (int)t.exp[v]);

  Poly acc = Poly::zero(treg, tfield);
  for (const auto& t : fc.terms()) {
    Poly p = Poly::constant(treg, tfield, t.coeff);
    for (std::size_t v = 0; v < n; ++v) {
      int e = t.exp[v];
      if (e > 0) p = p * images[v].num.pow((unsigned)e);
      if (maxe[v] - e > 0) p = p * images[v].den.pow((unsigned)(maxe[v] - e));
    }
    acc += p;
  }
  Poly den = Poly::constant(treg, tfield, 1);
  for (std::size_t v = 0; v < n; ++v)
    if (maxe[v] > 0) den = den * images[v].den.pow((unsigned)maxe[v]);
  RatExpr result(acc, den);
  // divide by the image of the cleared Laurent monomial
  for (std::size_t v = 0; v < n; ++v) {
    if (shift[v] > 0) {
      if (images[v].num.is_zero()) throw MathError("substitution maps inverted variable to zero");
      result = result / images[v].pow((unsigned)shift[v]);
    }
  }
  return result;
}

RatExpr embed_rat(const RatExpr& r, const FieldPtr& dst) {
  return RatExpr(embed_poly(r.num, dst), embed_poly(r.den, dst));
}

Poly RatExpr::to_laurent() const {
  if (den.is_one()) return num;
  if (den.nterms() != 1)
    throw MathError("denominator is not a monomial in inverted variables: " + den.str());
  const Term& t = den.terms()[0];
  const Registry& reg = *den.reg();
  Expo inv_e = t.exp;
  for (std::size_t i = 0; i < inv_e.size(); ++i) {
    if (inv_e[i] != 0 && !reg.inverted(i))
      throw MathError("denominator uses non-inverted variable " + reg.name(i));
    inv_e[i] = -inv_e[i];
  }
  return num.times_monomial(inv_e, den.field()->inv(t.coeff));
}

Poly RatExpr::to_poly() const {
  Poly p = to_laurent();
  if (p.has_negative_exponents()) throw MathError("expression is not polynomial: " + str());
  return p;
}

namespace {

struct Lexer {
  const std::string& s;
  std::size_t i = 0;
  ParsePos pos;

  explicit Lexer(const std::string& text, int line0, int col0) : s(text) {
    pos.line = line0;
    pos.col = col0;
  }

  void bump(char c) {
    if (c == '\n') {
      pos.line++;
      pos.col = 1;
    } else {
      pos.col++;
    }
    ++i;
  }

  void skip_ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) bump(s[i]);
  }

  bool eof() {
    skip_ws();
    return i >= s.size();
  }

  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
};

class ExprParser {
public:
  ExprParser(Lexer& lx, const RegistryPtr& reg, const FieldPtr& field)
      : lx_(lx), reg_(reg), field_(field) {}

  RatExpr parse() {
    RatExpr e = expr();
    if (!lx_.eof()) throw ParseError(std::string("unexpected character '") + lx_.peek() + "'", lx_.pos);
    return e;
  }

private:
  RatExpr expr() {
    RatExpr acc = term();
    while (true) {
      char c = lx_.peek();
      if (c == '+' || c == '-') {
        lx_.bump(c);
        acc = acc + term();
      } else {
        return acc;
      }
    }
  }

  RatExpr term() {
    RatExpr acc = factor();
    while (true) {
      char c = lx_.peek();
      if (c == '*') {
        lx_.bump(c);
        acc = acc * factor();
      } else if (c == '/') {
        ParsePos at = lx_.pos;
        lx_.bump(c);
        RatExpr d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  RatExpr factor() {
    RatExpr b = atom();
    if (lx_.peek() == '^') {
      lx_.bump('^');
      ParsePos at = lx_.pos;
      long e = integer();
      if (e < 0) throw ParseError("negative exponent (use '/')", at);
      return b.pow(static_cast<unsigned>(e));
    }
    return b;
  }

  RatExpr atom() {
    char c = lx_.peek();
    ParsePos at = lx_.pos;
    if (c == '(') {
      lx_.bump(c);
      RatExpr e = expr();
      if (lx_.peek() != ')') throw ParseError("expected ')'", lx_.pos);
      lx_.bump(')');
      return e;
    }
    if (std::isdigit((unsigned char)c)) {
      long v = integer();
      return RatExpr::of(Poly::constant(reg_, field_, static_cast<std::uint64_t>(v & 1)));
    }
    if (std::isalpha((unsigned char)c)) {
      std::string name = identifier();
      auto idx = reg_->find(name);
      if (idx) return RatExpr::of(Poly::variable(reg_, field_, *idx));
      if (name == "w") {
        if (field_->degree() < 2)
          throw ParseError("generator 'w' used over the prime field", at);
        return RatExpr::of(Poly::constant(reg_, field_, field_->generator()));
      }
      throw ParseError("unknown variable '" + name + "'", at);
    }
    if (c == '\0') throw ParseError("unexpected end of expression", at);
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }

  long integer() {
    lx_.skip_ws();
    ParsePos at = lx_.pos;
    if (lx_.i >= lx_.s.size() || !std::isdigit((unsigned char)lx_.s[lx_.i]))
      throw ParseError("expected integer", at);
    long v = 0;
    while (lx_.i < lx_.s.size() && std::isdigit((unsigned char)lx_.s[lx_.i])) {
      v = v * 10 + (lx_.s[lx_.i] - '0');
      if (v > 1000000) throw ParseError("integer too large", at);
      lx_.bump(lx_.s[lx_.i]);
    }
    return v;
  }

  std::string identifier() {
    std::string out;
    while (lx_.i < lx_.s.size() &&
           (std::isalnum((unsigned char)lx_.s[lx_.i]) || lx_.s[lx_.i] == '_')) {
      out += lx_.s[lx_.i];
      lx_.bump(lx_.s[lx_.i]);
    }
    return out;
  }

  Lexer& lx_;
  const RegistryPtr& reg_;
  const FieldPtr& field_;
};

} // namespace

RatExpr parse_ratexpr(const std::string& text, const RegistryPtr& reg, const FieldPtr& field,
                      int line0, int col0) {
  Lexer lx(text, line0, col0);
  return ExprParser(lx, reg, field).parse();
}

Poly parse_poly(const std::string& text, const RegistryPtr& reg, const FieldPtr& field,
                int line0, int col0) {
  Lexer lx(text, line0, col0);
  RatExpr e = ExprParser(lx, reg, field).parse();
  try {
    return e.to_laurent();
  } catch (const MathError& err) {
    throw ParseError(err.what(), lx.pos);
  }
}

std::uint64_t parse_gf2_modulus(const std::string& text) {
  auto reg = Registry::make({"w"});
  Poly p = parse_poly(text, reg, Field::gf2());
  std::uint64_t bits = 0;
  for (const auto& t : p.terms()) {
    int e = t.exp[0];
    if (e < 0 || e > 62) throw InputError("modulus degree out of range");
    bits |= 1ULL << e;
  }
  return bits;
}

} // namespace enriq
