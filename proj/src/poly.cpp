#include <enriq/poly.hpp>

#include <algorithm>
#include <atomic>
#include <climits>
#include <set>
#include <sstream>

namespace enriq {

Registry::Registry(std::vector<std::string> names, std::vector<bool> inverted)
    : names_(std::move(names)), inverted_(std::move(inverted)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw InputError("duplicate variable name: " + n);
  }
  inverted_.resize(names_.size(), false);
}

std::shared_ptr<const Registry> Registry::make(std::vector<std::string> names,
                                               std::vector<std::string> inverted) {
  std::vector<bool> inv(names.size(), false);
  for (const auto& v : inverted) {
    auto it = std::find(names.begin(), names.end(), v);
    if (it == names.end()) throw InputError("inverted variable not declared: " + v);
    inv[static_cast<std::size_t>(it - names.begin())] = true;
  }
  return std::make_shared<Registry>(std::move(names), std::move(inv));
}

std::optional<std::size_t> Registry::find(const std::string& n) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == n) return i;
  return std::nullopt;
}

std::size_t Registry::index_of(const std::string& n) const {
  auto i = find(n);
  if (!i) throw InputError("unknown variable: " + n);
  return *i;
}

std::shared_ptr<const Registry> Registry::extended(const std::vector<std::string>& extra,
                                                   bool extra_inverted) const {
  auto names = names_;
  auto inv = inverted_;
  for (const auto& n : extra) {
    names.push_back(n);
    inv.push_back(extra_inverted);
  }
  return std::make_shared<Registry>(std::move(names), std::move(inv));
}

bool Registry::same(const Registry& o) const {
  return names_ == o.names_ && inverted_ == o.inverted_;
}

bool TermOrder::greater(const Expo& a, const Expo& b) const {
  auto grevlex_range = [&](std::size_t lo, std::size_t hi) -> int {
    long long da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) { da += a[i]; db += b[i]; }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = hi; i-- > lo;) {
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  };
  const std::size_t n = a.size();
  switch (kind) {
    case Lex:
      for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] > b[i];
      return false;
    case Block: {
      int c = grevlex_range(0, std::min(split, n));
      if (c != 0) return c > 0;
      return grevlex_range(std::min(split, n), n) > 0;
    }
    case Grevlex:
    default:
      return grevlex_range(0, n) > 0;
  }
}

namespace {

const TermOrder kCanonical = TermOrder::grevlex();

struct TermGreater {
  bool operator()(const Term& x, const Term& y) const {
    return kCanonical.greater(x.exp, y.exp);
  }
};

void sort_accumulate(std::vector<Term>& ts, const Field& field) {
  std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) {
    return kCanonical.greater(x.exp, y.exp);
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < ts.size();) {
    Expo e = ts[i].exp;
    std::uint64_t c = 0;
    while (i < ts.size() && ts[i].exp == e) {
      c = field.add(c, ts[i].coeff);
      ++i;
    }
    if (c != 0) ts[out++] = Term{std::move(e), c};
  }
  ts.resize(out);
}

std::atomic<bool> g_parallel{true};

} // namespace

void Poly::set_parallel(bool on) { g_parallel.store(on); }
bool Poly::parallel_enabled() { return g_parallel.load(); }

Poly Poly::from_terms(RegistryPtr reg, FieldPtr field, std::vector<Term> ts) {
  Poly p(reg, field);
  sort_accumulate(ts, *field);
  p.terms_ = std::move(ts);
  return p;
}

Poly Poly::constant(RegistryPtr reg, FieldPtr field, std::uint64_t c) {
  Poly p(reg, field);
  if (c != 0) p.terms_.push_back(Term{Expo(reg->size(), 0), c});
  return p;
}

Poly Poly::variable(RegistryPtr reg, FieldPtr field, std::size_t idx, int power) {
  Expo e(reg->size(), 0);
  e[idx] = power;
  return monomial(reg, field, std::move(e), 1);
}

Poly Poly::monomial(RegistryPtr reg, FieldPtr field, Expo e, std::uint64_t c) {
  Poly p(reg, field);
  if (c != 0) {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] < 0 && !reg->inverted(i))
        throw MathError("negative exponent on non-inverted variable " + reg->name(i));
    p.terms_.push_back(Term{std::move(e), c});
  }
  return p;
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].coeff == 1 && total_degree(terms_[0].exp) == 0 &&
         std::all_of(terms_[0].exp.begin(), terms_[0].exp.end(), [](int x) { return x == 0; });
}

bool Poly::has_any_exponent() const {
  for (const auto& t : terms_)
    for (auto e : t.exp)
      if (e != 0) return true;
  return false;
}

const Term& Poly::leading(const TermOrder& ord) const {
  ENRIQ_CHECK(!terms_.empty(), "leading term of zero polynomial");
  if (ord.equal_kind(kCanonical)) return terms_.front();
  const Term* best = &terms_[0];
  for (const auto& t : terms_)
    if (ord.greater(t.exp, best->exp)) best = &t;
  return *best;
}

long long Poly::degree() const {
  long long d = 0;
  for (const auto& t : terms_) d = std::max(d, total_degree(t.exp));
  return d;
}

long long Poly::order_at_origin() const {
  if (terms_.empty()) return LLONG_MAX;
  long long d = LLONG_MAX;
  for (const auto& t : terms_) d = std::min(d, total_degree(t.exp));
  return d;
}

int Poly::degree_in(std::size_t var) const {
  int d = INT_MIN;
  for (const auto& t : terms_) d = std::max(d, (int)t.exp[var]);
  return terms_.empty() ? 0 : d;
}

int Poly::min_exponent(std::size_t var) const {
  int d = INT_MAX;
  for (const auto& t : terms_) d = std::min(d, (int)t.exp[var]);
  return terms_.empty() ? 0 : d;
}

bool Poly::has_negative_exponents() const {
  for (const auto& t : terms_)
    for (auto e : t.exp)
      if (e < 0) return true;
  return false;
}

bool Poly::uses_var(std::size_t var) const {
  for (const auto& t : terms_)
    if (t.exp[var] != 0) return true;
  return false;
}

std::uint64_t Poly::coeff_of(const Expo& e) const {
  for (const auto& t : terms_)
    if (t.exp == e) return t.coeff;
  return 0;
}

Poly Poly::operator+(const Poly& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  ENRIQ_CHECK(reg_->same(*o.reg_) && field_->same(*o.field_), "polynomial registry/field mismatch");
  Poly r(reg_, field_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    if (terms_[i].exp == o.terms_[j].exp) {
      std::uint64_t c = field_->add(terms_[i].coeff, o.terms_[j].coeff);
      if (c != 0) r.terms_.push_back(Term{terms_[i].exp, c});
      ++i;
      ++j;
    } else if (kCanonical.greater(terms_[i].exp, o.terms_[j].exp)) {
      r.terms_.push_back(terms_[i++]);
    } else {
      r.terms_.push_back(o.terms_[j++]);
    }
  }
  while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
  while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
  return r;
}

Poly poly_mul_serial(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.reg() ? a.reg() : b.reg(), a.field() ? a.field() : b.field());
  const Field& F = *a.field();
  std::vector<Term> acc;
  acc.reserve(a.nterms() * b.nterms());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      Expo e = ta.exp;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += tb.exp[k];
      acc.push_back(Term{std::move(e), F.mul(ta.coeff, tb.coeff)});
    }
  }
  return Poly::from_terms(a.reg(), a.field(), std::move(acc));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(reg_ ? reg_ : o.reg_, field_ ? field_ : o.field_);
  ENRIQ_CHECK(reg_->same(*o.reg_) && field_->same(*o.field_), "polynomial registry/field mismatch");
  if (parallel_enabled() && nterms() * o.nterms() >= 4096) return poly_mul_parallel(*this, o);
  return poly_mul_serial(*this, o);
}

Poly Poly::scaled(std::uint64_t c) const {
  if (c == 0) return Poly(reg_, field_);
  Poly r(reg_, field_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{t.exp, field_->mul(t.coeff, c)});
  return r;
}

Poly Poly::times_monomial(const Expo& e, std::uint64_t c) const {
  if (c == 0) return Poly(reg_, field_);
  Poly r(reg_, field_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Expo x = t.exp;
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += e[k];
    r.terms_.push_back(Term{std::move(x), field_->mul(t.coeff, c)});
  }
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly r = Poly::constant(reg_, field_, 1);
  Poly base = *this;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Poly Poly::derivative(std::size_t var) const {
  Poly r(reg_, field_);
  std::vector<Term> acc;
  for (const auto& t : terms_) {
    long long e = t.exp[var];
    if (e == 0) continue;
    // e * t / var; over characteristic 2 only odd exponents survive
    if ((e & 1LL) == 0) continue;
    Expo x = t.exp;
    x[var] -= 1;
    acc.push_back(Term{std::move(x), t.coeff});
  }
  return from_terms(reg_, field_, std::move(acc));
}

Poly Poly::substitute(const RegistryPtr& target, const FieldPtr& tfield,
                      const std::vector<Poly>& images) const {
  ENRIQ_CHECK(images.size() == reg_->size(), "substitute: image count mismatch");
  Poly out = Poly::zero(target, tfield);
  for (const auto& t : terms_) {
    Poly m = Poly::constant(target, tfield, t.coeff);
    for (std::size_t v = 0; v < reg_->size(); ++v) {
      int e = t.exp[v];
      if (e == 0) continue;
      if (e < 0) throw MathError("substitute: negative exponent requires Laurent handling");
      m = m * images[v].pow(static_cast<unsigned>(e));
    }
    out += m;
  }
  return out;
}

Poly Poly::substitute_truncated(const RegistryPtr& target, const FieldPtr& tfield,
                                const std::vector<Poly>& images, long long N) const {
  ENRIQ_CHECK(images.size() == reg_->size(), "substitute: image count mismatch");
  // memoized truncated power ladders per variable
  std::vector<std::vector<Poly>> powers(reg_->size());
  auto power = [&](std::size_t v, int e) -> const Poly& {
    auto& lad = powers[v];
    if (lad.empty()) {
      lad.push_back(Poly::constant(target, tfield, 1));
      lad.push_back(images[v].truncated(N));
    }
    while ((int)lad.size() <= e) lad.push_back((lad.back() * lad[1]).truncated(N));
    return lad[(std::size_t)e];
  };
  Poly out = Poly::zero(target, tfield);
  for (const auto& t : terms_) {
    Poly m = Poly::constant(target, tfield, t.coeff);
    for (std::size_t v = 0; v < reg_->size(); ++v) {
      int e = t.exp[v];
      if (e == 0) continue;
      if (e < 0) throw MathError("substitute: negative exponent requires Laurent handling");
      m = (m * power(v, e)).truncated(N);
      if (m.is_zero()) break;
    }
    out += m;
  }
  return out;
}

FieldElt Poly::evaluate(const std::vector<FieldElt>& point) const {
  ENRIQ_CHECK(point.size() == reg_->size(), "evaluate: wrong point size");
  const Field& F = *field_;
  std::uint64_t acc = 0;
  for (std::size_t v = 0; v < reg_->size(); ++v) {
    if (point[v].is_zero() && reg_->inverted(v) && uses_var(v))
      throw MathError("evaluate: zero assigned to inverted variable " + reg_->name(v));
  }
  for (const auto& t : terms_) {
    std::uint64_t c = t.coeff;
    for (std::size_t v = 0; v < reg_->size(); ++v) {
      int e = t.exp[v];
      if (e == 0) continue;
      std::uint64_t b = point[v].bits;
      if (e < 0) {
        if (b == 0) throw MathError("evaluate: zero assigned to inverted variable " + reg_->name(v));
        b = F.inv(b);
        e = -e;
      }
      c = F.mul(c, F.pow(b, static_cast<unsigned long long>(e)));
    }
    acc = F.add(acc, c);
  }
  return FieldElt(acc, field_);
}

Poly Poly::evaluate_partial(const std::vector<std::optional<std::uint64_t>>& values) const {
  const Field& F = *field_;
  std::vector<Term> acc;
  for (const auto& t : terms_) {
    std::uint64_t c = t.coeff;
    Expo e = t.exp;
    for (std::size_t v = 0; v < reg_->size(); ++v) {
      if (!values[v] || e[v] == 0) continue;
      int k = e[v];
      std::uint64_t b = *values[v];
      if (k < 0) {
        if (b == 0) throw MathError("evaluate: zero assigned to inverted variable");
        b = F.inv(b);
        k = -k;
      }
      c = F.mul(c, F.pow(b, static_cast<unsigned long long>(k)));
      e[v] = 0;
      if (c == 0) break;
    }
    if (c != 0) acc.push_back(Term{std::move(e), c});
  }
  return from_terms(reg_, field_, std::move(acc));
}

Poly Poly::truncated(long long max_degree, const std::vector<long long>* weights) const {
  std::vector<Term> acc;
  for (const auto& t : terms_) {
    long long d = 0;
    if (weights) {
      for (std::size_t i = 0; i < t.exp.size(); ++i) d += (*weights)[i] * t.exp[i];
    } else {
      d = total_degree(t.exp);
    }
    if (d <= max_degree) acc.push_back(t);
  }
  Poly r(reg_, field_);
  r.terms_ = std::move(acc); // already sorted (subsequence)
  return r;
}

Poly Poly::drop_below(long long min_degree) const {
  std::vector<Term> acc;
  for (const auto& t : terms_)
    if (total_degree(t.exp) >= min_degree) acc.push_back(t);
  Poly r(reg_, field_);
  r.terms_ = std::move(acc);
  return r;
}

Poly Poly::coeff_in(std::size_t var, int k) const {
  std::vector<Term> acc;
  for (const auto& t : terms_) {
    if (t.exp[var] != k) continue;
    Expo e = t.exp;
    e[var] = 0;
    acc.push_back(Term{std::move(e), t.coeff});
  }
  return from_terms(reg_, field_, std::move(acc));
}

Poly Poly::map_coefficients(const std::function<std::uint64_t(std::uint64_t)>& fn,
                            FieldPtr new_field) const {
  std::vector<Term> acc;
  acc.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::uint64_t c = fn(t.coeff);
    if (c != 0) acc.push_back(Term{t.exp, c});
  }
  return from_terms(reg_, new_field, std::move(acc));
}

Poly Poly::with_registry(RegistryPtr reg) const {
  ENRIQ_CHECK(reg->size() == reg_->size(), "with_registry: size mismatch");
  Poly r(std::move(reg), field_);
  r.terms_ = terms_;
  return r;
}

Poly Poly::transported(const RegistryPtr& target) const {
  std::vector<std::size_t> map(reg_->size());
  for (std::size_t i = 0; i < reg_->size(); ++i) {
    auto j = target->find(reg_->name(i));
    if (!j) {
      if (uses_var(i)) throw MathError("transport: target registry lacks variable " + reg_->name(i));
      map[i] = SIZE_MAX;
    } else {
      map[i] = *j;
    }
  }
  std::vector<Term> acc;
  acc.reserve(terms_.size());
  for (const auto& t : terms_) {
    Expo e(target->size(), 0);
    for (std::size_t i = 0; i < reg_->size(); ++i)
      if (t.exp[i] != 0) e[map[i]] = t.exp[i];
    acc.push_back(Term{std::move(e), t.coeff});
  }
  return from_terms(target, field_, std::move(acc));
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    bool printed = false;
    bool trivial_coeff = (t.coeff == 1);
    if (!trivial_coeff) {
      if (field_->degree() > 1 && (t.coeff >> 1) != 0)
        os << "(" << field_->to_string(t.coeff) << ")";
      else
        os << field_->to_string(t.coeff);
      printed = true;
    }
    for (std::size_t v = 0; v < reg_->size(); ++v) {
      int e = t.exp[v];
      if (e == 0) continue;
      if (printed) os << "*";
      os << reg_->name(v);
      if (e != 1) os << "^" << e;
      printed = true;
    }
    if (!printed) os << "1";
  }
  return os.str();
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

Poly clear_laurent(const Poly& p) {
  if (!p.has_negative_exponents()) return p;
  Expo shift(p.reg()->size(), 0);
  for (std::size_t v = 0; v < p.reg()->size(); ++v) {
    int m = p.min_exponent(v);
    if (m < 0) shift[v] = -m;
  }
  return p.times_monomial(shift, 1);
}

Poly translate_to_origin(const Poly& p, const std::vector<std::uint64_t>& point) {
  if (p.has_negative_exponents()) throw MathError("translate of Laurent polynomial");
  const RegistryPtr& reg = p.reg();
  const FieldPtr& field = p.field();
  std::vector<Poly> images;
  for (std::size_t i = 0; i < reg->size(); ++i)
    images.push_back(Poly::variable(reg, field, i) + Poly::constant(reg, field, point[i]));
  return p.substitute(reg, field, images);
}

} // namespace enriq
