#include <enriq/groebner.hpp>

#include <algorithm>
#include <atomic>
#include <deque>
#include <list>

#include <enriq/extension.hpp>
#include <enriq/factor.hpp>

namespace enriq {

namespace {

std::atomic<bool> g_paranoia{false};

// Working representation: terms sorted descending in the basis order.
struct WPoly {
  std::vector<Term> t;
  bool zero() const { return t.empty(); }
  const Term& lt() const { return t.front(); }
};

struct Ctx {
  TermOrder ord;
  FieldPtr field;
  RegistryPtr reg;

  WPoly to_work(const Poly& p) const {
    WPoly w;
    w.t = p.terms();
    if (!(ord.kind == TermOrder::Grevlex && ord.split == 0)) {
      std::sort(w.t.begin(), w.t.end(),
                [&](const Term& a, const Term& b) { return ord.greater(a.exp, b.exp); });
    }
    return w;
  }

  Poly to_poly(const WPoly& w) const { return Poly::from_terms(reg, field, w.t); }

  // r = a + mono*b (char 2), both sorted; merge
  WPoly add_scaled(const WPoly& a, const Expo& shift, std::uint64_t c, const WPoly& b) const {
    WPoly r;
    r.t.reserve(a.t.size() + b.t.size());
    std::size_t i = 0, j = 0;
    Expo be;
    auto bterm = [&](std::size_t jj) {
      Expo e = b.t[jj].exp;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += shift[k];
      return Term{std::move(e), field->mul(b.t[jj].coeff, c)};
    };
    Term tb;
    bool tb_valid = false;
    while (i < a.t.size() || j < b.t.size()) {
      if (!tb_valid && j < b.t.size()) {
        tb = bterm(j);
        tb_valid = true;
      }
      if (i < a.t.size() && (!tb_valid || ord.greater(a.t[i].exp, tb.exp))) {
        r.t.push_back(a.t[i++]);
      } else if (tb_valid && (i >= a.t.size() || ord.greater(tb.exp, a.t[i].exp))) {
        r.t.push_back(tb);
        tb_valid = false;
        ++j;
      } else {
        // equal exponents
        std::uint64_t cc = field->add(a.t[i].coeff, tb.coeff);
        if (cc != 0) r.t.push_back(Term{a.t[i].exp, cc});
        ++i;
        ++j;
        tb_valid = false;
      }
    }
    return r;
  }
};

bool divides(const Expo& a, const Expo& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Expo quotient(const Expo& a, const Expo& b) {
  Expo q(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) q[i] = a[i] - b[i];
  return q;
}

Expo lcm_expo(const Expo& a, const Expo& b) {
  Expo l(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
  return l;
}

bool coprime(const Expo& a, const Expo& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

// Full reduction of f by the set; deterministic (first divisor in index order).
WPoly reduce_full(WPoly f, const std::vector<WPoly>& gs, const Ctx& cx) {
  WPoly out;
  while (!f.zero()) {
    const Term& lt = f.lt();
    bool reduced = false;
    for (const auto& g : gs) {
      if (g.zero()) continue;
      if (divides(g.lt().exp, lt.exp)) {
        // g monic: f += (lt/ltg)*g cancels lt
        f = cx.add_scaled(f, quotient(lt.exp, g.lt().exp), lt.coeff, g);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      out.t.push_back(f.t.front());
      f.t.erase(f.t.begin());
    }
  }
  return out;
}

WPoly make_monic(WPoly f, const Field& F) {
  if (f.zero() || f.lt().coeff == 1) return f;
  std::uint64_t s = F.inv(f.lt().coeff);
  for (auto& t : f.t) t.coeff = F.mul(t.coeff, s);
  return f;
}

WPoly s_poly(const WPoly& f, const WPoly& g, const Ctx& cx) {
  Expo l = lcm_expo(f.lt().exp, g.lt().exp);
  // both monic
  WPoly mf;
  mf.t.reserve(f.t.size());
  Expo qf = quotient(l, f.lt().exp);
  for (const auto& t : f.t) {
    Expo e = t.exp;
    for (std::size_t k = 0; k < e.size(); ++k) e[k] += qf[k];
    mf.t.push_back(Term{std::move(e), t.coeff});
  }
  return cx.add_scaled(mf, quotient(l, g.lt().exp), 1, g);
}

struct Pair {
  std::size_t i, j;
  Expo lcm;
  long long deg;
  std::size_t seq;
};

} // namespace

void set_groebner_paranoia(bool on) { g_paranoia.store(on); }
bool groebner_paranoia() { return g_paranoia.load(); }

Groebner groebner_compute(std::vector<Poly> gens, TermOrder order) {
  Groebner out;
  out.order = order;
  RegistryPtr reg;
  FieldPtr field;
  for (const auto& g : gens) {
    if (!g.is_zero()) {
      reg = g.reg();
      field = g.field();
      break;
    }
  }
  if (!reg) {
    // all zero: empty basis
    if (!gens.empty()) {
      out.reg = gens[0].reg();
      out.field = gens[0].field();
    }
    return out;
  }
  out.reg = reg;
  out.field = field;

  Ctx cx{order, field, reg};
  std::vector<WPoly> G;
  std::vector<Pair> pairs;
  std::size_t seq = 0;

  auto push_gen = [&](WPoly h) {
    h = make_monic(std::move(h), *field);
    std::size_t t = G.size();
    // chain criterion on old pairs
    std::vector<Pair> kept;
    kept.reserve(pairs.size());
    for (auto& p : pairs) {
      bool drop = divides(h.lt().exp, p.lcm) &&
                  lcm_expo(G[p.i].lt().exp, h.lt().exp) != p.lcm &&
                  lcm_expo(G[p.j].lt().exp, h.lt().exp) != p.lcm;
      if (!drop) kept.push_back(std::move(p));
    }
    pairs = std::move(kept);
    for (std::size_t i = 0; i < t; ++i) {
      if (G[i].zero()) continue;
      Expo l = lcm_expo(G[i].lt().exp, h.lt().exp);
      pairs.push_back(Pair{i, t, l, total_degree(l), seq++});
    }
    G.push_back(std::move(h));
  };

  for (auto& g : gens) {
    if (g.has_negative_exponents()) throw MathError("Groebner input must be polynomial");
    if (g.is_zero()) continue;
    WPoly w = cx.to_work(g);
    w = reduce_full(std::move(w), G, cx);
    if (!w.zero()) push_gen(std::move(w));
  }

  while (!pairs.empty()) {
    // normal strategy: minimal lcm degree, then insertion order
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      if (pairs[k].deg < pairs[best].deg ||
          (pairs[k].deg == pairs[best].deg && pairs[k].seq < pairs[best].seq))
        best = k;
    }
    Pair p = pairs[best];
    pairs.erase(pairs.begin() + best);
    if (coprime(G[p.i].lt().exp, G[p.j].lt().exp)) continue; // product criterion
    WPoly s = s_poly(G[p.i], G[p.j], cx);
    s = reduce_full(std::move(s), G, cx);
    if (!s.zero()) push_gen(std::move(s));
  }

  // minimalize: drop elements whose LT is divisible by another LT
  std::vector<bool> keep(G.size(), true);
  for (std::size_t i = 0; i < G.size(); ++i) {
    for (std::size_t j = 0; j < G.size(); ++j) {
      if (i == j || !keep[i] || !keep[j]) continue;
      if (divides(G[j].lt().exp, G[i].lt().exp) &&
          (G[j].lt().exp != G[i].lt().exp || j < i)) {
        keep[i] = false;
        break;
      }
    }
  }
  std::vector<WPoly> minimal;
  for (std::size_t i = 0; i < G.size(); ++i)
    if (keep[i]) minimal.push_back(std::move(G[i]));
  // interreduce tails
  std::vector<WPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<WPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    WPoly r = reduce_full(minimal[i], others, cx);
    if (!r.zero()) reduced.push_back(make_monic(std::move(r), *field));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const WPoly& a, const WPoly& b) {
    return order.greater(b.lt().exp, a.lt().exp);
  });
  for (auto& w : reduced) out.basis.push_back(cx.to_poly(w));

  if (groebner_paranoia()) {
    ENRIQ_CHECK(buchberger_criterion_holds(out), "emitted basis fails Buchberger criterion");
  }
  return out;
}

Poly normal_form(const Poly& f, const Groebner& gb) {
  if (gb.basis.empty()) return f;
  Ctx cx{gb.order, gb.field, gb.reg};
  // Laurent inputs reduce via their cleared numerator; for ideals saturated at
  // the inverted variables this preserves membership.
  Poly g = f.has_negative_exponents() ? clear_laurent(f) : f;
  std::vector<WPoly> G;
  for (const auto& b : gb.basis) G.push_back(cx.to_work(b));
  WPoly r = reduce_full(cx.to_work(g), G, cx);
  return cx.to_poly(r);
}

bool contains_one(const Groebner& gb) { return gb.trivial(); }

bool buchberger_criterion_holds(const Groebner& gb) {
  Ctx cx{gb.order, gb.field, gb.reg};
  std::vector<WPoly> G;
  for (const auto& b : gb.basis) G.push_back(cx.to_work(b));
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      WPoly s = s_poly(G[i], G[j], cx);
      if (!reduce_full(std::move(s), G, cx).zero()) return false;
    }
  return true;
}

std::vector<Poly> saturate(const std::vector<Poly>& gens, const Poly& f) {
  if (gens.empty()) return gens;
  RegistryPtr reg = gens[0].reg();
  FieldPtr field = gens[0].field();
  if (f.is_zero()) throw MathError("saturation at zero");
  Poly fp = clear_laurent(f);
  if (fp.is_constant()) return gens;
  auto ereg = reg->extended({"_u"});
  std::vector<Poly> egens;
  for (const auto& g : gens) egens.push_back(clear_laurent(g).transported(ereg));
  Poly u = Poly::variable(ereg, field, ereg->size() - 1);
  egens.push_back(Poly::constant(ereg, field, 1) + u * fp.transported(ereg));
  auto elim = eliminate(egens, {ereg->size() - 1});
  std::vector<Poly> out;
  for (const auto& g : elim) out.push_back(g.transported(reg));
  return out;
}

std::vector<Poly> saturate_all(std::vector<Poly> gens, const std::vector<Poly>& fs) {
  for (const auto& f : fs) gens = saturate(gens, f);
  return gens;
}

std::vector<Poly> eliminate(const std::vector<Poly>& gens, const std::vector<std::size_t>& vars) {
  if (gens.empty() || vars.empty()) {
    if (vars.empty()) return gens;
    return gens;
  }
  RegistryPtr reg = gens[0].reg();
  FieldPtr field = gens[0].field();
  // permuted registry: eliminated variables first
  std::vector<std::string> names;
  std::vector<bool> inv;
  std::vector<bool> is_elim(reg->size(), false);
  for (auto v : vars) is_elim[v] = true;
  for (std::size_t i = 0; i < reg->size(); ++i)
    if (is_elim[i]) {
      names.push_back(reg->name(i));
      inv.push_back(reg->inverted(i));
    }
  for (std::size_t i = 0; i < reg->size(); ++i)
    if (!is_elim[i]) {
      names.push_back(reg->name(i));
      inv.push_back(reg->inverted(i));
    }
  auto preg = std::make_shared<Registry>(names, inv);
  std::vector<Poly> pgens;
  for (const auto& g : gens) pgens.push_back(clear_laurent(g).transported(preg));
  Groebner gb = groebner_compute(pgens, TermOrder::block(vars.size()));
  std::vector<Poly> out;
  for (const auto& b : gb.basis) {
    bool pure = true;
    for (std::size_t i = 0; i < vars.size() && pure; ++i)
      if (b.uses_var(i)) pure = false;
    if (pure) out.push_back(b.transported(reg));
  }
  return out;
}

bool vanishing_locus_inside(const std::vector<Poly>& gens, const Poly& f) {
  if (gens.empty()) return false;
  RegistryPtr reg = gens[0].reg();
  FieldPtr field = gens[0].field();
  Poly fp = clear_laurent(f);
  auto ereg = reg->extended({"_u"});
  std::vector<Poly> egens;
  for (const auto& g : gens) egens.push_back(clear_laurent(g).transported(ereg));
  Poly u = Poly::variable(ereg, field, ereg->size() - 1);
  egens.push_back(Poly::constant(ereg, field, 1) + u * fp.transported(ereg));
  Groebner gb = groebner_compute(egens, TermOrder::grevlex());
  return contains_one(gb);
}

int ideal_dimension(const Groebner& gb) {
  const std::size_t n = gb.reg->size();
  if (gb.trivial()) return -1;
  std::vector<Expo> lts;
  for (const auto& b : gb.basis) lts.push_back(b.leading(gb.order).exp);
  int best = -1;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    // subset S of variables; check no leading term supported inside S
    bool ok = true;
    for (const auto& e : lts) {
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i)
        if (e[i] > 0 && !((mask >> i) & 1)) inside = false;
      if (inside) {
        ok = false;
        break;
      }
    }
    if (ok) best = std::max(best, __builtin_popcountll(mask));
  }
  return best;
}

std::optional<long long> zero_dim_degree(const Groebner& gb) {
  const std::size_t n = gb.reg->size();
  if (gb.trivial()) return 0;
  if (gb.basis.empty()) return std::nullopt;
  std::vector<Expo> lts;
  for (const auto& b : gb.basis) lts.push_back(b.leading(gb.order).exp);
  std::vector<int> cap(n, -1);
  for (const auto& e : lts) {
    int nz = -1;
    bool pure = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] > 0) {
        if (nz >= 0) {
          pure = false;
          break;
        }
        nz = (int)i;
      }
    }
    if (pure && nz >= 0) cap[nz] = cap[nz] < 0 ? e[nz] : std::min(cap[nz], (int)e[nz]);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (cap[i] < 0) return std::nullopt;
  // count standard monomials below the staircase
  long long count = 0;
  Expo cur(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == n) {
      for (const auto& e : lts)
        if (divides(e, cur)) return;
      ++count;
      return;
    }
    for (int k = 0; k < cap[v]; ++k) {
      cur[v] = k;
      rec(v + 1);
    }
    cur[v] = 0;
  };
  rec(0);
  return count;
}

namespace {

void solve_rec(std::vector<Poly> gens, const RegistryPtr& reg, FieldPtr field,
               std::vector<std::optional<std::uint64_t>> assigned, int budget,
               const FieldPtr& top_field_hint, std::uint64_t seed, SolveOutcome& out,
               std::vector<std::size_t> remaining) {
  // evaluate assigned variables
  std::vector<Poly> cur;
  for (const auto& g : gens) {
    Poly e = g.evaluate_partial(assigned);
    if (!e.is_zero()) cur.push_back(clear_laurent(e));
  }
  if (remaining.empty()) {
    bool all_zero = cur.empty();
    if (all_zero) {
      SolvedPoint p;
      p.field = field;
      for (auto& a : assigned) p.coords.push_back(a ? *a : 0);
      out.points.push_back(std::move(p));
    }
    return;
  }
  if (cur.empty()) throw MathError("solve_zero_dim: ideal not zero-dimensional");
  Groebner lexgb = groebner_compute(cur, TermOrder::lex());
  if (contains_one(lexgb)) return;
  // univariate generator in the last remaining variable
  std::size_t v = remaining.back();
  Poly uni;
  for (const auto& b : lexgb.basis) {
    bool only_v = true;
    for (std::size_t i = 0; i < reg->size() && only_v; ++i)
      if (i != v && b.uses_var(i)) only_v = false;
    if (only_v) {
      uni = b;
      break;
    }
  }
  if (uni.is_zero()) throw MathError("solve_zero_dim: ideal not zero-dimensional in " + reg->name(v));
  UPoly u = to_univariate(uni, v);
  auto factors = factor_univariate(u, seed);
  std::vector<std::size_t> rest(remaining.begin(), remaining.end() - 1);
  for (const auto& fac : factors) {
    int d = fac.factor.deg();
    if (d > budget) {
      out.too_small = true;
      out.needed_degree = std::max(out.needed_degree, d * (int)field->degree());
      continue;
    }
    FieldPtr ext = extension_field(field, (unsigned)d);
    // roots of the factor inside ext
    UPoly fext(ext);
    for (auto c : fac.factor.c) fext.c.push_back(get_embedding(field, ext)(c));
    auto rs = roots_in_field(fext, seed);
    for (auto r : rs) {
      std::vector<Poly> egens;
      for (const auto& g : gens) egens.push_back(embed_poly(g, ext));
      std::vector<std::optional<std::uint64_t>> eassigned(assigned.size());
      const Embedding& em = get_embedding(field, ext);
      for (std::size_t i = 0; i < assigned.size(); ++i)
        if (assigned[i]) eassigned[i] = em(*assigned[i]);
      eassigned[v] = r;
      solve_rec(std::move(egens), reg, ext, std::move(eassigned), budget / d, top_field_hint,
                seed, out, rest);
    }
  }
}

} // namespace

SolveOutcome solve_zero_dim(const std::vector<Poly>& gens, const RegistryPtr& reg,
                            const FieldPtr& field, int max_ext_degree, std::uint64_t seed) {
  SolveOutcome out;
  out.field = field;
  std::vector<Poly> cleared;
  for (const auto& g : gens)
    if (!g.is_zero()) cleared.push_back(clear_laurent(g));
  std::vector<std::size_t> remaining;
  for (std::size_t i = 0; i < reg->size(); ++i) remaining.push_back(i);
  std::vector<std::optional<std::uint64_t>> assigned(reg->size());
  solve_rec(cleared, reg, field, assigned, max_ext_degree, field, seed, out, remaining);
  // unify coordinate fields
  FieldPtr big = field;
  for (const auto& p : out.points)
    if (p.field->degree() > big->degree()) big = p.field;
  for (auto& p : out.points) {
    if (!p.field->same(*big)) {
      const Embedding& em = get_embedding(p.field, big);
      for (auto& c : p.coords) c = em(c);
      p.field = big;
    }
  }
  out.field = big;
  std::sort(out.points.begin(), out.points.end(),
            [](const SolvedPoint& a, const SolvedPoint& b) { return a.coords < b.coords; });
  out.points.erase(std::unique(out.points.begin(), out.points.end(),
                               [](const SolvedPoint& a, const SolvedPoint& b) {
                                 return a.coords == b.coords;
                               }),
                   out.points.end());
  return out;
}

namespace {

std::vector<Poly> monomial_generators_of_power(const RegistryPtr& reg, const FieldPtr& field,
                                               int N) {
  const std::size_t n = reg->size();
  std::vector<Poly> out;
  Expo cur(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t v, int left) {
    if (v + 1 == n) {
      cur[v] = left;
      out.push_back(Poly::monomial(reg, field, cur, 1));
      cur[v] = 0;
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[v] = k;
      rec(v + 1, left - k);
    }
    cur[v] = 0;
  };
  rec(0, N);
  return out;
}

} // namespace

std::optional<long long> local_multiplicity_groebner(const std::vector<Poly>& gens, int cap) {
  if (gens.empty()) return std::nullopt;
  RegistryPtr reg = gens[0].reg();
  FieldPtr field = gens[0].field();
  std::vector<Poly> gs;
  for (const auto& g : gens)
    if (!g.is_zero()) gs.push_back(clear_laurent(g));
  if (gs.empty()) return std::nullopt;
  for (const auto& g : gs)
    if (g.order_at_origin() == 0) return 0; // some generator is a unit at the origin

  auto degree_at = [&](int N) -> long long {
    std::vector<Poly> j = gs;
    for (auto& m : monomial_generators_of_power(reg, field, N)) j.push_back(std::move(m));
    Groebner gb = groebner_compute(std::move(j), TermOrder::grevlex());
    auto d = zero_dim_degree(gb);
    ENRIQ_CHECK(d.has_value(), "truncated ideal must be zero-dimensional");
    return *d;
  };

  // deg(N) is monotone non-decreasing, so equality at any two distinct N
  // values certifies stabilization in between.
  long long prev = -1;
  for (int N = 3; N <= cap; N = N + 2 + N / 3) {
    long long a = degree_at(N);
    if (a == prev) return a;
    long long b = degree_at(N + 1);
    if (a == b) return a;
    prev = b;
  }
  return std::nullopt;
}

std::optional<long long> local_multiplicity_at_origin(const std::vector<Poly>& gens, int cap) {
  if (gens.empty()) return std::nullopt;
  RegistryPtr reg = gens[0].reg();
  FieldPtr field = gens[0].field();
  const std::size_t n = reg->size();
  const Field& F = *field;

  std::vector<Poly> gs;
  for (const auto& g : gens)
    if (!g.is_zero()) gs.push_back(clear_laurent(g));
  if (gs.empty()) return std::nullopt;
  for (const auto& g : gs)
    if (g.order_at_origin() == 0) return 0; // unit at the origin

  long long prev = -1;
  for (int N = 2; N <= cap; ++N) {
    // enumerate monomials of degree < N
    std::vector<Expo> mons;
    Expo cur(n, 0);
    std::function<void(std::size_t, int)> enum_rec = [&](std::size_t v, int left) {
      if (v == n) {
        mons.push_back(cur);
        return;
      }
      for (int k = 0; k <= left; ++k) {
        cur[v] = k;
        enum_rec(v + 1, left - k);
      }
      cur[v] = 0;
    };
    enum_rec(0, N - 1);
    std::sort(mons.begin(), mons.end(), [](const Expo& a, const Expo& b) {
      long long da = total_degree(a), db = total_degree(b);
      if (da != db) return da < db;
      return a < b;
    });
    std::map<Expo, std::size_t> index;
    for (std::size_t i = 0; i < mons.size(); ++i) index[mons[i]] = i;

    // row echelon of all monomial multiples of generators, truncated
    std::vector<std::vector<std::uint64_t>> pivots(mons.size());
    std::vector<bool> has_pivot(mons.size(), false);
    long long rank = 0;
    auto insert_row = [&](std::vector<std::uint64_t> row) {
      while (true) {
        std::size_t lead = row.size();
        for (std::size_t i = 0; i < row.size(); ++i)
          if (row[i] != 0) {
            lead = i;
            break;
          }
        if (lead == row.size()) return;
        if (!has_pivot[lead]) {
          std::uint64_t inv = F.inv(row[lead]);
          for (auto& x : row) x = F.mul(x, inv);
          pivots[lead] = std::move(row);
          has_pivot[lead] = true;
          ++rank;
          return;
        }
        std::uint64_t c = row[lead];
        const auto& pr = pivots[lead];
        for (std::size_t i = lead; i < row.size(); ++i)
          row[i] = F.add(row[i], F.mul(pr[i], c));
      }
    };

    for (const auto& g : gs) {
      long long og = g.order_at_origin();
      for (const auto& m : mons) {
        if (total_degree(m) + og >= N) continue;
        std::vector<std::uint64_t> row(mons.size(), 0);
        bool any = false;
        for (const auto& t : g.terms()) {
          Expo e = t.exp;
          for (std::size_t k = 0; k < n; ++k) e[k] += m[k];
          if (total_degree(e) >= N) continue;
          auto it = index.find(e);
          ENRIQ_CHECK(it != index.end(), "local multiplicity: missing monomial");
          row[it->second] = F.add(row[it->second], t.coeff);
          any = true;
        }
        if (any) insert_row(std::move(row));
      }
    }
    long long dim = (long long)mons.size() - rank;
    if (prev >= 0 && dim == prev) return dim;
    prev = dim;
  }
  return std::nullopt;
}

} // namespace enriq
