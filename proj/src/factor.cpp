#include <enriq/factor.hpp>

#include <algorithm>
#include <random>
#include <sstream>

namespace enriq {

UPoly UPoly::operator+(const UPoly& o) const {
  UPoly r(field);
  r.c.resize(std::max(c.size(), o.c.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
  for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] ^= o.c[i];
  r.trim();
  return r;
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return UPoly(field);
  UPoly r(field);
  r.c.assign(c.size() + o.c.size() - 1, 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j < o.c.size(); ++j)
      r.c[i + j] ^= field->mul(c[i], o.c[j]);
  }
  r.trim();
  return r;
}

UPoly UPoly::scaled(std::uint64_t s) const {
  UPoly r(field);
  r.c.reserve(c.size());
  for (auto v : c) r.c.push_back(field->mul(v, s));
  r.trim();
  return r;
}

UPoly UPoly::monic() const {
  if (is_zero() || lead() == 1) return *this;
  return scaled(field->inv(lead()));
}

UPoly UPoly::derivative() const {
  UPoly r(field);
  for (std::size_t i = 1; i < c.size(); ++i)
    if (i & 1) {
      r.c.resize(i, 0);
      r.c[i - 1] = c[i];
    }
  r.trim();
  return r;
}

std::uint64_t UPoly::eval(std::uint64_t a) const {
  std::uint64_t acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = field->add(field->mul(acc, a), c[i]);
  return acc;
}

void UPoly::divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  ENRIQ_CHECK(!b.is_zero(), "univariate division by zero");
  const Field& F = *a.field;
  q = UPoly(a.field);
  r = a;
  std::uint64_t linv = F.inv(b.lead());
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int shift = r.deg() - b.deg();
    std::uint64_t s = F.mul(r.lead(), linv);
    if ((int)q.c.size() <= shift) q.c.resize(shift + 1, 0);
    q.c[shift] ^= s;
    for (std::size_t i = 0; i < b.c.size(); ++i)
      r.c[i + shift] ^= F.mul(b.c[i], s);
    r.trim();
  }
  q.trim();
}

UPoly UPoly::operator%(const UPoly& o) const {
  UPoly q(field), r(field);
  divmod(*this, o, q, r);
  return r;
}

UPoly UPoly::operator/(const UPoly& o) const {
  UPoly q(field), r(field);
  divmod(*this, o, q, r);
  return q;
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UPoly UPoly::mulmod(const UPoly& o, const UPoly& m) const { return (*this * o) % m; }

UPoly UPoly::powmod(unsigned long long e, const UPoly& m) const {
  UPoly r = UPoly::constant(field, 1) % m;
  UPoly b = *this % m;
  while (e) {
    if (e & 1) r = r.mulmod(b, m);
    b = b.mulmod(b, m);
    e >>= 1;
  }
  return r;
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    bool need_coeff = (c[i] != 1) || i == 0;
    if (need_coeff) {
      std::string cs = field->to_string(c[i]);
      if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
      os << cs;
      if (i > 0) os << "*";
    }
    if (i == 1)
      os << var;
    else if (i > 1)
      os << var << "^" << i;
  }
  return os.str();
}

namespace {

// sqrt of a perfect square f = h(t)^2: h_i = sqrt(f_{2i})
UPoly poly_sqrt(const UPoly& f) {
  UPoly h(f.field);
  h.c.resize(f.c.size() / 2 + 1, 0);
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i] == 0) continue;
    ENRIQ_CHECK(i % 2 == 0, "poly_sqrt of a non-square");
    h.c[i / 2] = f.field->sqrt(f.c[i]);
  }
  h.trim();
  return h;
}

// distinct-degree decomposition of a monic squarefree f: list of (product, d)
std::vector<std::pair<UPoly, int>> ddf(UPoly f) {
  std::vector<std::pair<UPoly, int>> out;
  const FieldPtr& F = f.field;
  unsigned k = F->degree();
  UPoly x = UPoly::x(F);
  UPoly h = x % f; // x^(q^d) mod f, progressively
  int d = 0;
  while (f.deg() >= 2 * (d + 1)) {
    ++d;
    for (unsigned i = 0; i < k; ++i) h = h.mulmod(h, f); // h := h^q
    UPoly g = UPoly::gcd(f, h + x);
    if (g.deg() > 0) {
      out.push_back({g.monic(), d});
      f = f / g;
      if (f.deg() == 0) break;
      h = h % f;
    }
  }
  if (f.deg() > 0) out.push_back({f.monic(), f.deg()});
  return out;
}

// equal-degree splitting (char 2): Cantor--Zassenhaus with the GF(2)-trace map.
void edf(const UPoly& f, int d, std::mt19937_64& rng, std::vector<UPoly>& out) {
  if (f.deg() == d) {
    out.push_back(f.monic());
    return;
  }
  const FieldPtr& F = f.field;
  unsigned k = F->degree();
  unsigned long long m = (unsigned long long)k * (unsigned long long)d;
  while (true) {
    // random element of GF(q)[x]/(f)
    UPoly u(F);
    u.c.resize(f.deg(), 0);
    for (auto& v : u.c) v = rng() & ((k >= 63) ? ~0ULL : ((1ULL << k) - 1));
    u.trim();
    if (u.is_zero()) continue;
    // trace to GF(2): T = u + u^2 + u^4 + ... (m squarings)
    UPoly t = u % f;
    UPoly acc = t;
    for (unsigned long long i = 1; i < m; ++i) {
      t = t.mulmod(t, f);
      acc = acc + t;
    }
    UPoly g = UPoly::gcd(f, acc);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      edf(g, d, rng, out);
      edf(f / g, d, rng, out);
      return;
    }
  }
}

} // namespace

std::vector<UFactor> factor_univariate(const UPoly& input, std::uint64_t seed) {
  if (input.is_zero()) throw MathError("factor of zero polynomial");
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0xA5A5A5A5ULL);
  std::vector<UFactor> out;
  UPoly f = input.monic();
  while (f.deg() > 0) {
    // squarefree radical of f
    UPoly p = f;
    while (true) {
      UPoly dp = p.derivative();
      if (dp.is_zero()) {
        p = poly_sqrt(p);
        continue;
      }
      UPoly g = UPoly::gcd(p, dp);
      if (g.deg() == 0) break;
      p = p / g;
      // p may have lost factors dividing g with high multiplicity; the outer
      // loop recovers them via trial division, so a partial radical is fine.
      if (p.deg() == 0) { p = g; }
    }
    std::vector<UPoly> irred;
    for (auto& [prod, d] : ddf(p)) {
      std::vector<UPoly> part;
      edf(prod, d, rng, part);
      for (auto& q : part) irred.push_back(std::move(q));
    }
    // deterministic order: by degree then coefficient tuple
    std::sort(irred.begin(), irred.end(), [](const UPoly& a, const UPoly& b) {
      if (a.deg() != b.deg()) return a.deg() < b.deg();
      for (std::size_t i = a.c.size(); i-- > 0;)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
      return false;
    });
    for (const auto& q : irred) {
      int mult = 0;
      while (true) {
        UPoly quo(f.field), rem(f.field);
        UPoly::divmod(f, q, quo, rem);
        if (!rem.is_zero()) break;
        f = quo;
        ++mult;
      }
      if (mult > 0) out.push_back(UFactor{q, mult});
    }
    ENRIQ_CHECK(!irred.empty(), "factorization made no progress");
  }
  std::sort(out.begin(), out.end(), [](const UFactor& a, const UFactor& b) {
    if (a.factor.deg() != b.factor.deg()) return a.factor.deg() < b.factor.deg();
    for (std::size_t i = a.factor.c.size(); i-- > 0;)
      if (a.factor.c[i] != b.factor.c[i]) return a.factor.c[i] < b.factor.c[i];
    return false;
  });
  return out;
}

bool is_irreducible(const UPoly& f) {
  if (f.deg() < 1) return false;
  auto fs = factor_univariate(f, 0);
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

std::vector<std::uint64_t> roots_in_field(const UPoly& f, std::uint64_t seed) {
  std::vector<std::uint64_t> out;
  for (const auto& fac : factor_univariate(f, seed)) {
    if (fac.factor.deg() == 1) {
      // monic t + a -> root a
      out.push_back(fac.factor.c[0]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

UPoly to_univariate(const Poly& p, std::size_t var) {
  UPoly u(p.field());
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < t.exp.size(); ++i)
      if (i != var && t.exp[i] != 0)
        throw MathError("polynomial is not univariate in " + p.reg()->name(var));
    int e = t.exp[var];
    if (e < 0) throw MathError("univariate conversion with negative exponent");
    if ((int)u.c.size() <= e) u.c.resize(e + 1, 0);
    u.c[e] ^= t.coeff;
  }
  u.trim();
  return u;
}

Poly from_univariate(const UPoly& u, const RegistryPtr& reg, std::size_t var) {
  std::vector<Term> ts;
  for (std::size_t i = 0; i < u.c.size(); ++i) {
    if (u.c[i] == 0) continue;
    Expo e(reg->size(), 0);
    e[var] = (int)i;
    ts.push_back(Term{std::move(e), u.c[i]});
  }
  return Poly::from_terms(reg, u.field, std::move(ts));
}

} // namespace enriq
