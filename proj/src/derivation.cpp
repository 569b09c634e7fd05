#include <enriq/derivation.hpp>

#include <algorithm>

#include <enriq/extension.hpp>
#include <enriq/factor.hpp>

namespace enriq {

RatExpr apply_derivation(const Atlas& atlas, const Derivation& d, std::size_t chart,
                         const Poly& f) {
  const Chart& ch = atlas.charts[chart];
  RatExpr acc = RatExpr::of(Poly::zero(ch.reg, ch.field));
  for (std::size_t v = 0; v < ch.reg->size(); ++v) {
    Poly pf = f.derivative(v);
    if (pf.is_zero()) continue;
    const RatExpr& img = d.image(chart, v);
    if (img.is_zero()) continue;
    // partials of Laurent terms stay Laurent; clear through the denominator
    Poly pfc = clear_laurent(pf);
    Expo shift(ch.reg->size(), 0);
    for (std::size_t i = 0; i < ch.reg->size(); ++i) {
      int m = pf.min_exponent(i);
      if (m < 0) shift[i] = (int)-m;
    }
    Poly mono = Poly::monomial(ch.reg, ch.field, shift, 1);
    acc = acc + RatExpr(pfc * img.num, mono * img.den);
  }
  return acc;
}

RatExpr apply_derivation(const Atlas& atlas, const Derivation& d, std::size_t chart,
                         const RatExpr& r) {
  // D(n/d) = (d D(n) + n D(d)) / d^2 in characteristic 2
  RatExpr dn = apply_derivation(atlas, d, chart, r.num);
  RatExpr dd = apply_derivation(atlas, d, chart, r.den);
  RatExpr num = RatExpr::of(r.den) * dn + RatExpr::of(r.num) * dd;
  return num / RatExpr::of(r.den * r.den);
}

namespace {

bool reduces_to_zero(const Atlas& atlas, std::size_t chart, const Poly& num) {
  const Groebner& gb = atlas.chart_ideal[chart];
  return normal_form(num, gb).is_zero();
}

} // namespace

WellDefinedResult well_defined(const Atlas& atlas, const Derivation& d, std::size_t chart) {
  const Chart& ch = atlas.charts[chart];
  for (const auto& rel : ch.relations) {
    RatExpr df = apply_derivation(atlas, d, chart, rel);
    if (!reduces_to_zero(atlas, chart, df.num)) {
      WellDefinedResult r;
      r.ok = false;
      r.witness = ch.name + ": D(" + rel.str() + ") not in the relation ideal";
      return r;
    }
  }
  return {};
}

WellDefinedResult transition_compatible(const Atlas& atlas, const Derivation& d,
                                        const Transition& t) {
  const Chart& src = atlas.charts[t.src];
  const Chart& dst = atlas.charts[t.dst];
  // saturated source ideal extended by the overlap units
  auto sats = src.saturation_set();
  for (const auto& u : t.overlap_units) sats.push_back(u);
  for (const auto& im : t.images) sats.push_back(im.den);
  auto gens = saturate_all(src.relations, sats);
  Groebner gb = groebner_compute(gens, TermOrder::grevlex());

  for (std::size_t v = 0; v < dst.reg->size(); ++v) {
    // lhs: D acting on the pullback expression
    RatExpr lhs = apply_derivation(atlas, d, t.src, t.images[v]);
    // rhs: pullback of D(v) on the destination chart
    const RatExpr& dv = d.image(t.dst, v);
    RatExpr rn = substitute_rational(dv.num, src.reg, src.field, t.images);
    RatExpr rd = substitute_rational(dv.den, src.reg, src.field, t.images);
    if (rd.num.is_zero()) {
      WellDefinedResult r;
      r.ok = false;
      r.witness = src.name + "->" + dst.name + ": denominator of D(" + dst.reg->name(v) +
                  ") pulls back to zero";
      return r;
    }
    RatExpr rhs = rn / rd;
    // lhs ~ rhs  <=>  lhs.num*rhs.den - rhs.num*lhs.den in the saturated ideal
    Poly diff = lhs.num * rhs.den + rhs.num * lhs.den;
    Poly nf = normal_form(diff, gb);
    if (!nf.is_zero()) {
      // denominators involved are units on the overlap; saturate at them too
      auto gens2 = gens;
      Groebner gb2 = groebner_compute(saturate_all(gens2, {lhs.den, rhs.den}), TermOrder::grevlex());
      if (!normal_form(diff, gb2).is_zero()) {
        WellDefinedResult r;
        r.ok = false;
        r.witness = src.name + "->" + dst.name + ": incompatible at variable " + dst.reg->name(v);
        return r;
      }
    }
  }
  return {};
}

Derivation linear_combination(const Atlas& atlas, const FieldElt& a, const Derivation& d1,
                              const FieldElt& b, const Derivation& d2) {
  Derivation out;
  out.name = "combination";
  out.images.resize(atlas.charts.size());
  for (std::size_t c = 0; c < atlas.charts.size(); ++c) {
    const Chart& ch = atlas.charts[c];
    for (std::size_t v = 0; v < ch.reg->size(); ++v) {
      const RatExpr& r1 = d1.image(c, v);
      const RatExpr& r2 = d2.image(c, v);
      RatExpr s1(r1.num.scaled(a.bits), r1.den);
      RatExpr s2(r2.num.scaled(b.bits), r2.den);
      out.images[c].push_back(s1 + s2);
    }
  }
  return out;
}

Derivation square_derivation(const Atlas& atlas, const Derivation& d) {
  Derivation out;
  out.name = d.name + "^2";
  out.images.resize(atlas.charts.size());
  for (std::size_t c = 0; c < atlas.charts.size(); ++c) {
    const Chart& ch = atlas.charts[c];
    for (std::size_t v = 0; v < ch.reg->size(); ++v)
      out.images[c].push_back(apply_derivation(atlas, d, c, d.image(c, v)));
  }
  return out;
}

Derivation bracket(const Atlas& atlas, const Derivation& d1, const Derivation& d2) {
  Derivation out;
  out.name = "[" + d1.name + "," + d2.name + "]";
  out.images.resize(atlas.charts.size());
  for (std::size_t c = 0; c < atlas.charts.size(); ++c) {
    const Chart& ch = atlas.charts[c];
    for (std::size_t v = 0; v < ch.reg->size(); ++v) {
      RatExpr a = apply_derivation(atlas, d1, c, d2.image(c, v));
      RatExpr b = apply_derivation(atlas, d2, c, d1.image(c, v));
      out.images[c].push_back(a + b);
    }
  }
  return out;
}

bool derivations_equal(const Atlas& atlas, const Derivation& a, const Derivation& b) {
  for (std::size_t c = 0; c < atlas.charts.size(); ++c) {
    for (std::size_t v = 0; v < atlas.charts[c].reg->size(); ++v) {
      const RatExpr& x = a.image(c, v);
      const RatExpr& y = b.image(c, v);
      Poly diff = x.num * y.den + y.num * x.den;
      if (!reduces_to_zero(atlas, c, diff)) return false;
    }
  }
  return true;
}

bool derivation_is_zero(const Atlas& atlas, const Derivation& d) {
  for (std::size_t c = 0; c < atlas.charts.size(); ++c)
    for (std::size_t v = 0; v < atlas.charts[c].reg->size(); ++v)
      if (!reduces_to_zero(atlas, c, d.image(c, v).num)) return false;
  return true;
}

std::vector<Poly> fix_ideal(const Atlas& atlas, const Derivation& d, std::size_t chart) {
  const Chart& ch = atlas.charts[chart];
  std::vector<Poly> gens = ch.relations;
  for (std::size_t v = 0; v < ch.reg->size(); ++v) gens.push_back(d.image(chart, v).num);
  return saturate_all(gens, ch.saturation_set());
}

bool is_fixed_point_free(const Atlas& atlas, const Derivation& d) {
  for (std::size_t c = 0; c < atlas.charts.size(); ++c) {
    const Chart& ch = atlas.charts[c];
    std::vector<Poly> gens = ch.relations;
    for (std::size_t v = 0; v < ch.reg->size(); ++v) gens.push_back(d.image(c, v).num);
    Poly prod = Poly::constant(ch.reg, ch.field, 1);
    for (const auto& u : ch.saturation_set()) prod = prod * u;
    if (!vanishing_locus_inside(gens, prod)) return false;
  }
  return true;
}

long long fixed_degree_at(const Atlas& atlas, const Derivation& d, const SurfacePoint& p) {
  auto gens = fix_ideal(atlas, d, p.chart);
  std::vector<Poly> local;
  for (const auto& g : gens) local.push_back(translate_to_origin(embed_poly(g, p.field), p.coords));
  auto mult = local_multiplicity_at_origin(local);
  if (!mult) throw MathError("fixed ideal is not zero-dimensional near the point");
  return *mult;
}

BasisCoords express_in_basis(const Atlas& atlas, const Derivation& e, const Derivation& d1,
                             const Derivation& d2) {
  const FieldPtr F = atlas.field;
  // rows (A1, A2 | A0): A0 + a*A1 + b*A2 = 0
  std::vector<std::array<std::uint64_t, 3>> rows;
  std::vector<std::string> row_witness;
  for (std::size_t c = 0; c < atlas.charts.size(); ++c) {
    const Chart& ch = atlas.charts[c];
    for (std::size_t v = 0; v < ch.reg->size(); ++v) {
      const RatExpr& rE = e.image(c, v);
      const RatExpr& r1 = d1.image(c, v);
      const RatExpr& r2 = d2.image(c, v);
      Poly A0 = normal_form(rE.num * r1.den * r2.den, atlas.chart_ideal[c]);
      Poly A1 = normal_form(r1.num * rE.den * r2.den, atlas.chart_ideal[c]);
      Poly A2 = normal_form(r2.num * rE.den * r1.den, atlas.chart_ideal[c]);
      // per-monomial equations
      std::vector<Expo> mons;
      for (const auto& t : A0.terms()) mons.push_back(t.exp);
      for (const auto& t : A1.terms()) mons.push_back(t.exp);
      for (const auto& t : A2.terms()) mons.push_back(t.exp);
      std::sort(mons.begin(), mons.end());
      mons.erase(std::unique(mons.begin(), mons.end()), mons.end());
      for (const auto& m : mons) {
        rows.push_back({A1.coeff_of(m), A2.coeff_of(m), A0.coeff_of(m)});
        row_witness.push_back(ch.name + "/" + ch.reg->name(v));
      }
    }
  }
  // solve [A1 A2 | A0] for (a,b) with A0 + a A1 + b A2 = 0 (char 2: a A1 + b A2 = A0)
  std::array<std::uint64_t, 3> r0{0, 0, 0}, r1v{0, 0, 0};
  std::string w0, w1;
  bool have0 = false, have1 = false;
  BasisCoords out;
  auto reduce_row = [&](std::array<std::uint64_t, 3> r, const std::string& w) -> bool {
    if (have0 && r[0] != 0) {
      std::uint64_t s = F->mul(r[0], F->inv(r0[0]));
      for (int i = 0; i < 3; ++i) r[i] = F->add(r[i], F->mul(r0[i], s));
    }
    if (have1 && r[1] != 0) {
      std::uint64_t s = F->mul(r[1], F->inv(r1v[1]));
      for (int i = 0; i < 3; ++i) r[i] = F->add(r[i], F->mul(r1v[i], s));
    }
    if (r[0] != 0) {
      r0 = r;
      w0 = w;
      have0 = true;
      return true;
    }
    if (r[1] != 0) {
      r1v = r;
      w1 = w;
      have1 = true;
      return true;
    }
    if (r[2] != 0) {
      out.status = BasisCoords::NotInSpan;
      out.witness = w;
      return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!reduce_row(rows[i], row_witness[i])) return out;
  }
  if (!have0 || !have1) {
    out.status = BasisCoords::Degenerate;
    out.witness = "basis degenerate";
    return out;
  }
  // back substitute: r0: a*r0[0] + b*r0[1] = r0[2]; r1v: b*r1v[1] = r1v[2]
  std::uint64_t b = F->mul(r1v[2], F->inv(r1v[1]));
  std::uint64_t a = F->mul(F->add(r0[2], F->mul(r0[1], b)), F->inv(r0[0]));
  out.a = FieldElt(a, F);
  out.b = FieldElt(b, F);
  // final consistency pass
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::uint64_t lhs = F->add(F->mul(rows[i][0], a), F->mul(rows[i][1], b));
    if (lhs != rows[i][2]) {
      out.status = BasisCoords::NotInSpan;
      out.witness = row_witness[i];
      return out;
    }
  }
  return out;
}

PClosedResult p_closed(const Atlas& atlas, const Derivation& d, const Derivation& d1,
                       const Derivation& d2) {
  const FieldPtr F = atlas.field;
  PClosedResult out;
  if (derivation_is_zero(atlas, d)) {
    out.p_closed = true;
    out.degenerate = true;
    out.lambda = FieldElt(0, F);
    return out;
  }
  Derivation sq = square_derivation(atlas, d);
  BasisCoords de = express_in_basis(atlas, d, d1, d2);
  BasisCoords se = express_in_basis(atlas, sq, d1, d2);
  if (de.status != BasisCoords::Ok || se.status != BasisCoords::Ok)
    throw MathError("p_closed: derivation not expressible in the basis");
  // (se.a, se.b) = lambda (de.a, de.b)?
  std::uint64_t lambda;
  if (de.a.bits != 0)
    lambda = F->mul(se.a.bits, F->inv(de.a.bits));
  else if (de.b.bits != 0)
    lambda = F->mul(se.b.bits, F->inv(de.b.bits));
  else {
    out.p_closed = true;
    out.degenerate = true;
    out.lambda = FieldElt(0, F);
    return out;
  }
  bool prop = se.a.bits == F->mul(lambda, de.a.bits) && se.b.bits == F->mul(lambda, de.b.bits);
  out.p_closed = prop;
  out.lambda = FieldElt(prop ? lambda : 0, F);
  return out;
}

CanonicalLine canonical_line(const Atlas& atlas, const SurfacePoint& p, const Derivation& d1,
                             const Derivation& d2) {
  const Chart& ch = atlas.charts[p.chart];
  const FieldPtr F = p.field;
  std::vector<FieldElt> pt;
  for (auto c : p.coords) pt.emplace_back(c, F);
  // rows (D1(v)(p), D2(v)(p)); kernel of (e1,e2) -> e1 row0 + e2 row1
  std::uint64_t best_a = 0, best_b = 0;
  bool any = false;
  for (std::size_t v = 0; v < ch.reg->size(); ++v) {
    FieldElt a = embed_rat(d1.image(p.chart, v), F).evaluate(pt);
    FieldElt b = embed_rat(d2.image(p.chart, v), F).evaluate(pt);
    if (a.is_zero() && b.is_zero()) continue;
    if (!any) {
      best_a = a.bits;
      best_b = b.bits;
      any = true;
    } else {
      // rank 2 iff determinant of two independent rows nonzero
      std::uint64_t det = F->add(F->mul(best_a, b.bits), F->mul(best_b, a.bits));
      if (det != 0) {
        CanonicalLine cl;
        cl.status = CanonicalLine::NoLine;
        return cl;
      }
    }
  }
  CanonicalLine cl;
  if (!any) {
    cl.status = CanonicalLine::Degenerate;
    return cl;
  }
  // kernel of a e1 + b e2 = 0 is [b : a]
  cl.status = CanonicalLine::Line;
  std::uint64_t e1 = best_b, e2 = best_a;
  if (e1 != 0) {
    std::uint64_t inv = F->inv(e1);
    e1 = 1;
    e2 = F->mul(e2, inv);
  } else {
    e2 = 1;
  }
  cl.e1 = FieldElt(e1, F);
  cl.e2 = FieldElt(e2, F);
  return cl;
}

TangentFibers tangent_fibers(const Atlas& atlas, const Derivation& d, int max_ext_degree,
                             std::uint64_t seed) {
  TangentFibers out;
  out.field = atlas.field;
  bool have_finite = false;
  for (std::size_t c = 0; c < atlas.charts.size(); ++c) {
    const Chart& ch = atlas.charts[c];
    if (!ch.base_var) continue;
    std::size_t b = *ch.base_var;
    const RatExpr& img = d.image(c, b);
    Poly num = normal_form(img.num, atlas.chart_ideal[c]);
    if (!ch.base_reciprocal) {
      if (have_finite) continue;
      have_finite = true;
      if (num.is_zero()) {
        out.vertical = true;
        continue;
      }
      UPoly u = to_univariate(num, b); // throws if not univariate in the base
      // factor and collect roots over bounded extensions
      auto facs = factor_univariate(u, seed);
      FieldPtr big = atlas.field;
      std::vector<std::pair<UPoly, FieldPtr>> linear;
      for (const auto& f : facs) {
        if (f.factor.deg() < 1) continue;
        if (f.factor.deg() > max_ext_degree) throw ExtensionTooSmall(f.factor.deg());
        FieldPtr ext = extension_field(atlas.field, (unsigned)f.factor.deg());
        if (ext->degree() > big->degree()) big = ext;
      }
      out.field = big;
      for (const auto& f : facs) {
        if (f.factor.deg() < 1) continue;
        UPoly fe(big);
        for (auto cc : f.factor.c) fe.c.push_back(get_embedding(atlas.field, big)(cc));
        for (auto r : roots_in_field(fe, seed)) out.finite.emplace_back(r, big);
      }
      std::sort(out.finite.begin(), out.finite.end(),
                [](const FieldElt& a, const FieldElt& b2) { return a.bits < b2.bits; });
      out.finite.erase(std::unique(out.finite.begin(), out.finite.end()), out.finite.end());
    } else {
      // the reciprocal chart: root at 0 is the fiber at infinity
      if (num.is_zero()) continue; // vertical on this side; finite side decides
      std::vector<std::optional<std::uint64_t>> vals(ch.reg->size());
      vals[b] = 0;
      Poly at0 = num.evaluate_partial(vals);
      ENRIQ_CHECK(at0.is_constant(), "tangent fiber probe: D(base) not univariate");
      if (at0.is_zero()) out.infinity = true;
    }
  }
  return out;
}

} // namespace enriq
