#include <enriq/geometry.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <enriq/extension.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace enriq {

std::vector<Poly> Chart::saturation_set() const {
  std::vector<Poly> out;
  for (std::size_t i = 0; i < reg->size(); ++i)
    if (reg->inverted(i)) out.push_back(Poly::variable(reg, field, i));
  for (const auto& u : units) out.push_back(u);
  return out;
}

std::vector<Poly> Chart::saturated_relations() const {
  return saturate_all(relations, saturation_set());
}

std::size_t Atlas::chart_index(const std::string& n) const {
  for (std::size_t i = 0; i < charts.size(); ++i)
    if (charts[i].name == n) return i;
  throw InputError("unknown chart: " + n);
}

void Atlas::prepare() {
  chart_ideal.assign(charts.size(), Groebner{});
  sing_ideal.assign(charts.size(), {});
  int n = (int)charts.size();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < n; ++i) {
    auto sat = charts[i].saturated_relations();
    chart_ideal[i] = groebner_compute(sat, TermOrder::grevlex());
    sing_ideal[i] = singular_locus(charts[i]);
  }
}

Atlas Atlas::coerced(const FieldPtr& ext) const {
  Atlas out;
  out.name = name;
  out.field = ext;
  for (const auto& c : charts) {
    Chart cc;
    cc.name = c.name;
    cc.reg = c.reg;
    cc.field = ext;
    for (const auto& r : c.relations) cc.relations.push_back(embed_poly(r, ext));
    for (const auto& u : c.units) cc.units.push_back(embed_poly(u, ext));
    cc.base_var = c.base_var;
    cc.base_reciprocal = c.base_reciprocal;
    out.charts.push_back(std::move(cc));
  }
  for (const auto& t : transitions) {
    Transition tt;
    tt.src = t.src;
    tt.dst = t.dst;
    for (const auto& im : t.images) tt.images.push_back(embed_rat(im, ext));
    for (const auto& u : t.overlap_units) tt.overlap_units.push_back(embed_poly(u, ext));
    out.transitions.push_back(std::move(tt));
  }
  out.prepare();
  return out;
}

std::string SurfacePoint::str(const Atlas& atlas) const {
  const Chart& c = atlas.charts[chart];
  std::ostringstream os;
  os << c.name << ":(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ",";
    os << field->to_string(coords[i]);
  }
  os << ")";
  return os.str();
}

ValidationReport validate_chart(const Chart& chart) {
  ValidationReport rep;
  if (chart.relations.empty()) {
    rep.fail(chart.name + ": no relations");
    return rep;
  }
  for (const auto& r : chart.relations)
    if (r.has_negative_exponents()) rep.fail(chart.name + ": relation has negative exponents");
  const std::size_t n = chart.reg->size();
  const std::size_t c = chart.relations.size();
  if (n != c + 2) {
    rep.fail(chart.name + ": expected " + std::to_string(n - 2) + " relations for dimension 2, got " +
             std::to_string(c));
    return rep;
  }
  auto sat = chart.saturated_relations();
  Groebner gb = groebner_compute(sat, TermOrder::grevlex());
  if (gb.trivial()) {
    rep.fail(chart.name + ": saturated relation ideal is trivial (empty chart)");
    return rep;
  }
  int dim = ideal_dimension(gb);
  if (dim != 2) rep.fail(chart.name + ": ideal has dimension " + std::to_string(dim) + ", expected 2");
  return rep;
}

namespace {

// membership of a rational identity num/den == 0 on the source chart modulo
// the declared overlap: num reduces to 0 in the ideal saturated at the chart
// units plus the overlap units.
bool member_on_overlap(const Poly& num, const Chart& src, const std::vector<Poly>& overlap_units) {
  auto sats = src.saturation_set();
  for (const auto& u : overlap_units) sats.push_back(u);
  auto gens = saturate_all(src.relations, sats);
  Groebner gb = groebner_compute(gens, TermOrder::grevlex());
  return normal_form(num, gb).is_zero();
}

} // namespace

ValidationReport validate_transition(const Atlas& atlas, const Transition& t) {
  ValidationReport rep;
  const Chart& src = atlas.charts[t.src];
  const Chart& dst = atlas.charts[t.dst];
  std::string tag = src.name + "->" + dst.name;
  if (t.images.size() != dst.reg->size()) {
    rep.fail(tag + ": image count mismatch");
    return rep;
  }
  // each destination relation pulls back into the source ideal on the overlap
  for (const auto& rel : dst.relations) {
    RatExpr pulled = substitute_rational(rel, src.reg, src.field, t.images);
    auto units = t.overlap_units;
    units.push_back(pulled.den);
    if (!member_on_overlap(pulled.num, src, units)) {
      rep.fail(tag + ": pullback of relation " + rel.str() + " is not in the source ideal");
    }
  }
  // declared inverse pair: composition is the identity up to units
  for (const auto& r : atlas.transitions) {
    if (r.src != t.dst || r.dst != t.src) continue;
    for (std::size_t v = 0; v < src.reg->size(); ++v) {
      // r.images[v] is an expression in dst variables; compose with t
      RatExpr rnum = substitute_rational(r.images[v].num, src.reg, src.field, t.images);
      RatExpr rden = substitute_rational(r.images[v].den, src.reg, src.field, t.images);
      if (rden.num.is_zero()) {
        rep.fail(tag + ": inverse composition denominator vanishes for " + src.reg->name(v));
        continue;
      }
      RatExpr lhs = rnum / rden;
      Poly v_poly = Poly::variable(src.reg, src.field, v);
      Poly diff = lhs.num + v_poly * lhs.den;
      auto units = t.overlap_units;
      units.push_back(lhs.den);
      if (!member_on_overlap(diff, src, units)) {
        rep.fail(tag + ": inverse composition does not recover " + src.reg->name(v));
      }
    }
  }
  return rep;
}

ValidationReport validate_atlas(const Atlas& atlas) {
  ValidationReport rep;
  for (const auto& c : atlas.charts) {
    auto r = validate_chart(c);
    for (auto& f : r.failures) rep.fail(f);
  }
  for (const auto& t : atlas.transitions) {
    auto r = validate_transition(atlas, t);
    for (auto& f : r.failures) rep.fail(f);
  }
  // connectivity of the transition graph
  if (!atlas.charts.empty()) {
    std::vector<bool> seen(atlas.charts.size(), false);
    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
      if (seen[i]) return;
      seen[i] = true;
      for (const auto& t : atlas.transitions) {
        if (t.src == i) dfs(t.dst);
        if (t.dst == i) dfs(t.src);
      }
    };
    dfs(0);
    for (std::size_t i = 0; i < atlas.charts.size(); ++i)
      if (!seen[i]) rep.fail("chart " + atlas.charts[i].name + " is disconnected from the atlas");
  }
  return rep;
}

std::vector<Poly> singular_locus(const Chart& chart) {
  const std::size_t n = chart.reg->size();
  const std::size_t c = chart.relations.size();
  // Jacobian matrix
  std::vector<std::vector<Poly>> jac(c);
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < n; ++j) jac[i].push_back(chart.relations[i].derivative(j));
  // all c x c minors over column subsets
  std::vector<Poly> gens = chart.relations;
  std::vector<std::size_t> cols(c);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t k) {
    if (k == c) {
      // determinant of jac[:, cols] by Laplace (c <= 3)
      std::function<Poly(std::vector<std::size_t>, std::vector<std::size_t>)> det =
          [&](std::vector<std::size_t> rows, std::vector<std::size_t> cs) -> Poly {
        if (rows.size() == 1) return jac[rows[0]][cs[0]];
        Poly acc = Poly::zero(chart.reg, chart.field);
        for (std::size_t k2 = 0; k2 < cs.size(); ++k2) {
          std::vector<std::size_t> subrows(rows.begin() + 1, rows.end());
          std::vector<std::size_t> subcols;
          for (std::size_t m = 0; m < cs.size(); ++m)
            if (m != k2) subcols.push_back(cs[m]);
          acc += jac[rows[0]][cs[k2]] * det(subrows, subcols); // char 2: no signs
        }
        return acc;
      };
      std::vector<std::size_t> rows(c);
      for (std::size_t i = 0; i < c; ++i) rows[i] = i;
      Poly m = det(rows, cols);
      if (!m.is_zero()) gens.push_back(m);
      return;
    }
    for (std::size_t j = start; j + (c - k) <= n; ++j) {
      cols[k] = j;
      choose(j + 1, k + 1);
    }
  };
  choose(0, 0);
  return saturate_all(gens, chart.saturation_set());
}

std::optional<SurfacePoint> map_point(const Atlas& atlas, const Transition& t,
                                      const SurfacePoint& p) {
  if (p.chart != t.src) return std::nullopt;
  const Chart& dst = atlas.charts[t.dst];
  std::vector<FieldElt> pt;
  for (auto c : p.coords) pt.emplace_back(c, p.field);
  // overlap units must not vanish
  for (const auto& u : t.overlap_units) {
    try {
      if (embed_poly(u, p.field).evaluate(pt).is_zero()) return std::nullopt;
    } catch (const MathError&) {
      return std::nullopt;
    }
  }
  SurfacePoint q;
  q.chart = t.dst;
  q.field = p.field;
  for (std::size_t v = 0; v < dst.reg->size(); ++v) {
    FieldElt val;
    try {
      val = embed_rat(t.images[v], p.field).evaluate(pt);
    } catch (const MathError&) {
      return std::nullopt;
    }
    if (val.is_zero() && dst.reg->inverted(v)) return std::nullopt;
    q.coords.push_back(val.bits);
  }
  // destination units must not vanish
  std::vector<FieldElt> qt;
  for (auto c : q.coords) qt.emplace_back(c, p.field);
  for (const auto& u : dst.units) {
    if (embed_poly(u, p.field).evaluate(qt).is_zero()) return std::nullopt;
  }
  return q;
}

bool point_on_chart(const Atlas& atlas, const SurfacePoint& p) {
  const Chart& c = atlas.charts[p.chart];
  std::vector<FieldElt> pt;
  for (auto x : p.coords) pt.emplace_back(x, p.field);
  for (std::size_t v = 0; v < c.reg->size(); ++v)
    if (c.reg->inverted(v) && p.coords[v] == 0) return false;
  for (const auto& u : c.units)
    if (embed_poly(u, p.field).evaluate(pt).is_zero()) return false;
  for (const auto& r : c.relations)
    if (!embed_poly(r, p.field).evaluate(pt).is_zero()) return false;
  return true;
}

SurfacePoint canonical_point(const Atlas& atlas, const SurfacePoint& p) {
  // orbit closure under all transitions, then the smallest (chart, coords)
  std::set<std::pair<std::size_t, std::vector<std::uint64_t>>> seen;
  std::vector<SurfacePoint> queue{p};
  seen.insert({p.chart, p.coords});
  SurfacePoint best = p;
  while (!queue.empty()) {
    SurfacePoint cur = queue.back();
    queue.pop_back();
    if (cur.chart < best.chart || (cur.chart == best.chart && cur.coords < best.coords)) best = cur;
    for (const auto& t : atlas.transitions) {
      if (t.src != cur.chart) continue;
      auto q = map_point(atlas, t, cur);
      if (!q) continue;
      auto key = std::make_pair(q->chart, q->coords);
      if (seen.insert(key).second) queue.push_back(*q);
    }
  }
  return best;
}

std::vector<SurfacePoint> singular_points(const Atlas& atlas, int max_ext_degree,
                                          std::uint64_t seed) {
  ENRIQ_CHECK(atlas.prepared(), "atlas not prepared");
  const int n = (int)atlas.charts.size();
  std::vector<SolveOutcome> per_chart(n);
  std::vector<std::string> errors(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < n; ++i) {
    try {
      per_chart[i] = solve_zero_dim(atlas.sing_ideal[i], atlas.charts[i].reg, atlas.field,
                                    max_ext_degree, seed);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (int i = 0; i < n; ++i)
    if (!errors[i].empty())
      throw MathError("singular locus of chart " + atlas.charts[i].name + ": " + errors[i]);
  for (int i = 0; i < n; ++i)
    if (per_chart[i].too_small) throw ExtensionTooSmall(per_chart[i].needed_degree);

  // common coordinate field
  FieldPtr big = atlas.field;
  for (const auto& s : per_chart)
    if (s.field && s.field->degree() > big->degree()) big = s.field;
  std::vector<SurfacePoint> all;
  for (int i = 0; i < n; ++i) {
    const Embedding& em = get_embedding(per_chart[i].field ? per_chart[i].field : atlas.field, big);
    for (const auto& sp : per_chart[i].points) {
      SurfacePoint p;
      p.chart = (std::size_t)i;
      p.field = big;
      for (auto c : sp.coords) p.coords.push_back(em(c));
      // the saturated locus can still produce points where a unit vanishes if
      // saturation was at a product; filter defensively
      if (!point_on_chart(atlas, p)) continue;
      all.push_back(std::move(p));
    }
  }
  // dedup by canonical representative
  std::map<std::pair<std::size_t, std::vector<std::uint64_t>>, SurfacePoint> dedup;
  for (const auto& p : all) {
    SurfacePoint c = canonical_point(atlas, p);
    dedup.emplace(std::make_pair(c.chart, c.coords), c);
  }
  std::vector<SurfacePoint> out;
  for (auto& [k, v] : dedup) out.push_back(std::move(v));
  return out;
}

namespace {

Poly jet_mul(const Poly& a, const Poly& b, long long N) { return (a * b).truncated(N); }

// inverse of a unit jet u (u(0) != 0) to order N: u0^-1 * sum m^i with
// m = 1 - u/u0, via product of (1 + m^(2^j)).
Poly jet_inverse(const Poly& u, long long N) {
  const auto& reg = u.reg();
  const auto& F = u.field();
  Expo zero(reg->size(), 0);
  std::uint64_t u0 = u.coeff_of(zero);
  if (u0 == 0) throw MathError("jet inverse of a non-unit");
  Poly one = Poly::constant(reg, F, 1);
  Poly m = one + u.scaled(F->inv(u0)); // 1 - u/u0, order >= 1
  Poly acc = one;
  Poly mp = m.truncated(N);
  long long ord = 1;
  while (!mp.is_zero() && ord <= N) {
    acc = jet_mul(acc, one + mp, N);
    mp = jet_mul(mp, mp, N);
    ord *= 2;
  }
  return acc.scaled(F->inv(u0)).truncated(N);
}

} // namespace

LocalModel local_model(const Atlas& atlas, const SurfacePoint& p, long long jet_order) {
  const Chart& chart = atlas.charts[p.chart];
  const std::size_t n = chart.reg->size();
  const std::size_t c = chart.relations.size();
  const FieldPtr F = p.field;

  // translate to the origin over the point's field
  std::vector<Poly> rels;
  for (const auto& r : chart.relations)
    rels.push_back(translate_to_origin(embed_poly(r, F), p.coords));
  for (const auto& r : rels)
    ENRIQ_CHECK(r.coeff_of(Expo(n, 0)) == 0, "point does not satisfy chart relation");

  LocalModel lm;
  lm.field = F;
  lm.order = jet_order;
  lm.chart = p.chart;
  lm.point = p.coords;

  if (c == 1) {
    auto lreg = Registry::make(chart.reg->names());
    Poly jet = rels[0].transported(lreg).truncated(jet_order);
    if (jet.order_at_origin() < 2) throw MathError("point not singular");
    lm.reg = lreg;
    lm.jet = jet;
    lm.trace = "hypersurface chart";
    return lm;
  }

  // Jacobian at the origin
  std::vector<std::vector<std::uint64_t>> J(c, std::vector<std::uint64_t>(n, 0));
  Expo zero(n, 0);
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < n; ++j) J[i][j] = rels[i].derivative(j).coeff_of(zero);
  // rank over the field
  auto rank_of = [&](const std::vector<std::vector<std::uint64_t>>& M) {
    auto A = M;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < A.size(); ++col) {
      std::size_t piv = r;
      while (piv < A.size() && A[piv][col] == 0) ++piv;
      if (piv == A.size()) continue;
      std::swap(A[r], A[piv]);
      std::uint64_t inv = F->inv(A[r][col]);
      for (auto& x : A[r]) x = F->mul(x, inv);
      for (std::size_t i2 = 0; i2 < A.size(); ++i2) {
        if (i2 == r || A[i2][col] == 0) continue;
        std::uint64_t s = A[i2][col];
        for (std::size_t j2 = 0; j2 < n; ++j2) A[i2][j2] = F->add(A[i2][j2], F->mul(A[r][j2], s));
      }
      ++r;
    }
    return r;
  };
  std::size_t rank = rank_of(J);
  if (rank == c) throw MathError("point not singular");
  if (rank + 1 != c)
    throw MathError("Jacobian rank " + std::to_string(rank) + " < " + std::to_string(c - 1) +
                    ": not a hypersurface-reducible point");

  // deterministic choice of c-1 relations and c-1 variables with invertible minor
  std::vector<std::size_t> sel_rel, sel_var;
  bool found = false;
  std::vector<std::size_t> rel_subset(c - 1), var_subset(c - 1);
  std::function<void(std::size_t, std::size_t)> pick_rel = [&](std::size_t start, std::size_t k) {
    if (found) return;
    if (k == c - 1) {
      std::function<void(std::size_t, std::size_t)> pick_var = [&](std::size_t vstart, std::size_t kv) {
        if (found) return;
        if (kv == c - 1) {
          std::vector<std::vector<std::uint64_t>> M(c - 1, std::vector<std::uint64_t>(c - 1));
          for (std::size_t i = 0; i < c - 1; ++i)
            for (std::size_t j = 0; j < c - 1; ++j) M[i][j] = J[rel_subset[i]][var_subset[j]];
          // determinant
          std::function<std::uint64_t(std::vector<std::vector<std::uint64_t>>)> det =
              [&](std::vector<std::vector<std::uint64_t>> A) -> std::uint64_t {
            std::uint64_t d = 1;
            for (std::size_t col = 0; col < A.size(); ++col) {
              std::size_t piv = col;
              while (piv < A.size() && A[piv][col] == 0) ++piv;
              if (piv == A.size()) return 0;
              std::swap(A[col], A[piv]);
              d = F->mul(d, A[col][col]);
              std::uint64_t inv = F->inv(A[col][col]);
              for (std::size_t i2 = col + 1; i2 < A.size(); ++i2) {
                std::uint64_t s = F->mul(A[i2][col], inv);
                for (std::size_t j2 = col; j2 < A.size(); ++j2)
                  A[i2][j2] = F->add(A[i2][j2], F->mul(A[col][j2], s));
              }
            }
            return d;
          };
          if (det(M) != 0) {
            sel_rel = rel_subset;
            sel_var = var_subset;
            found = true;
          }
          return;
        }
        for (std::size_t j = vstart; j < n; ++j) {
          var_subset[kv] = j;
          pick_var(j + 1, kv + 1);
        }
      };
      pick_var(0, 0);
      return;
    }
    for (std::size_t i = start; i < c; ++i) {
      rel_subset[k] = i;
      pick_rel(i + 1, k + 1);
    }
  };
  pick_rel(0, 0);
  ENRIQ_CHECK(found, "no invertible minor despite corank-1 Jacobian");

  // remaining three variables
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < n; ++j)
    if (std::find(sel_var.begin(), sel_var.end(), j) == sel_var.end()) kept.push_back(j);
  ENRIQ_CHECK(kept.size() == 3, "local model must end with three variables");
  std::size_t rem_rel = 0;
  for (std::size_t i = 0; i < c; ++i)
    if (std::find(sel_rel.begin(), sel_rel.end(), i) == sel_rel.end()) rem_rel = i;

  std::vector<std::string> lnames;
  for (auto j : kept) lnames.push_back(chart.reg->name(j));
  auto lreg = Registry::make(lnames);

  // Newton iteration: solve sel_rel relations for sel_var variables as jets in
  // the kept variables.
  const std::size_t m = c - 1;
  std::vector<Poly> phi(m, Poly::zero(lreg, F)); // images of sel_var
  auto compose = [&](const Poly& f) {
    std::vector<Poly> images(n, Poly::zero(lreg, F));
    for (std::size_t k2 = 0; k2 < 3; ++k2) images[kept[k2]] = Poly::variable(lreg, F, k2);
    for (std::size_t k2 = 0; k2 < m; ++k2) images[sel_var[k2]] = phi[k2];
    return f.substitute_truncated(lreg, F, images, jet_order);
  };
  long long prec = 1;
  int iters = 0;
  while (prec < jet_order + 1 && iters < 64) {
    ++iters;
    // residuals and Jacobian of selected relations wrt selected vars at phi
    std::vector<Poly> res(m);
    std::vector<std::vector<Poly>> JJ(m, std::vector<Poly>(m));
    for (std::size_t i = 0; i < m; ++i) {
      res[i] = compose(rels[sel_rel[i]]);
      for (std::size_t j = 0; j < m; ++j) JJ[i][j] = compose(rels[sel_rel[i]].derivative(sel_var[j]));
    }
    // solve JJ * delta = res by jet Gaussian elimination (entries are unit or
    // near-unit jets; pivoting on unit constant terms)
    std::vector<Poly> delta(m, Poly::zero(lreg, F));
    {
      auto A = JJ;
      auto b = res;
      std::vector<std::size_t> perm(m);
      for (std::size_t i = 0; i < m; ++i) perm[i] = i;
      Expo z3(3, 0);
      for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        while (piv < m && A[piv][col].coeff_of(z3) == 0) ++piv;
        ENRIQ_CHECK(piv < m, "Newton elimination: singular jet matrix");
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        Poly inv = jet_inverse(A[col][col], jet_order);
        for (std::size_t j2 = 0; j2 < m; ++j2) A[col][j2] = jet_mul(A[col][j2], inv, jet_order);
        b[col] = jet_mul(b[col], inv, jet_order);
        for (std::size_t i2 = 0; i2 < m; ++i2) {
          if (i2 == col || A[i2][col].is_zero()) continue;
          Poly s = A[i2][col];
          for (std::size_t j2 = 0; j2 < m; ++j2)
            A[i2][j2] = (A[i2][j2] + jet_mul(s, A[col][j2], jet_order)).truncated(jet_order);
          b[i2] = (b[i2] + jet_mul(s, b[col], jet_order)).truncated(jet_order);
        }
      }
      for (std::size_t i = 0; i < m; ++i) delta[i] = b[i];
    }
    bool progress = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (!delta[i].is_zero()) progress = true;
      phi[i] = (phi[i] + delta[i]).truncated(jet_order);
    }
    prec *= 2;
    if (!progress && prec > 2) break;
  }
  // back-substitution check
  for (std::size_t i = 0; i < m; ++i) {
    Poly resid = compose(rels[sel_rel[i]]);
    if (!resid.is_zero() && resid.order_at_origin() <= jet_order)
      throw JetInsufficient("Newton elimination residual of order " +
                            std::to_string(resid.order_at_origin()));
  }

  Poly jet = compose(rels[rem_rel]);
  if (jet.order_at_origin() < 2) throw MathError("point not singular");
  lm.reg = lreg;
  lm.jet = jet;
  std::ostringstream tr;
  tr << "solved relations {";
  for (auto i : sel_rel) tr << i << " ";
  tr << "} for {";
  for (auto j : sel_var) tr << chart.reg->name(j) << " ";
  tr << "}";
  lm.trace = tr.str();
  return lm;
}

FieldElt hasse_coefficient_at_fiber(const Atlas& atlas, std::size_t chart_idx,
                                    const FieldElt& value) {
  const Chart& chart = atlas.charts[chart_idx];
  if (!chart.base_var) throw MathError("chart has no base coordinate");
  const std::size_t b = *chart.base_var;
  const std::size_t n = chart.reg->size();
  const FieldPtr F = value.field;

  std::vector<std::size_t> fiber_vars;
  for (std::size_t i = 0; i < n; ++i)
    if (i != b) fiber_vars.push_back(i);

  auto eval_base = [&](const Poly& coeff) {
    std::vector<std::optional<std::uint64_t>> vals(n);
    vals[b] = value.bits;
    Poly e = embed_poly(coeff, F).evaluate_partial(vals);
    ENRIQ_CHECK(e.is_constant(), "hasse: coefficient not a base polynomial");
    Expo z(n, 0);
    return FieldElt(e.coeff_of(z), F);
  };

  if (chart.relations.size() == 1 && fiber_vars.size() == 2) {
    // generalized Weierstrass: y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6
    const Poly& rel = chart.relations[0];
    std::size_t xv = fiber_vars[0], yv = fiber_vars[1];
    if (rel.degree_in(xv) == 2 && rel.degree_in(yv) == 3) std::swap(xv, yv);
    if (!(rel.degree_in(xv) == 3 && rel.degree_in(yv) == 2))
      throw MathError("non-Weierstrass chart shape");
    // a1 = coefficient of x*y
    Poly a1 = Poly::zero(chart.reg, chart.field);
    for (const auto& t : rel.terms()) {
      if (t.exp[xv] == 1 && t.exp[yv] == 1) {
        Expo e = t.exp;
        e[xv] = 0;
        e[yv] = 0;
        a1 += Poly::monomial(chart.reg, chart.field, e, t.coeff);
      }
    }
    return eval_base(a1);
  }

  if (chart.relations.size() == 2 && fiber_vars.size() == 3) {
    // fiber = intersection of two quadrics in P^3; Hasse coefficient =
    // coefficient of the product of all four projective coordinates in Q1*Q2.
    // Homogenize with an extra coordinate w0.
    auto hreg = chart.reg->extended({"_w0"});
    auto homog = [&](const Poly& rel) {
      std::vector<Term> ts;
      for (const auto& t : rel.terms()) {
        long long d = 0;
        for (auto fv : fiber_vars) d += t.exp[fv];
        if (d > 2) throw MathError("non-quadric fiber relation");
        Expo e(hreg->size(), 0);
        for (std::size_t i = 0; i < n; ++i) e[i] = t.exp[i];
        e[hreg->size() - 1] = (int)(2 - d);
        ts.push_back(Term{std::move(e), t.coeff});
      }
      return Poly::from_terms(hreg, chart.field, std::move(ts));
    };
    Poly q = homog(chart.relations[0]) * homog(chart.relations[1]);
    // coefficient of fiber_vars^1 * w0^1
    Poly coeff = Poly::zero(chart.reg, chart.field);
    for (const auto& t : q.terms()) {
      bool match = t.exp[hreg->size() - 1] == 1;
      for (auto fv : fiber_vars) match = match && t.exp[fv] == 1;
      if (!match) continue;
      Expo e(n, 0);
      e[b] = t.exp[b];
      coeff += Poly::monomial(chart.reg, chart.field, e, t.coeff);
    }
    return eval_base(coeff);
  }
  throw MathError("non-Weierstrass chart shape");
}

bool fiber_is_smooth(const Atlas& atlas, std::size_t chart_idx, const FieldElt& value,
                     int max_ext_degree) {
  const Chart& c0 = atlas.charts[chart_idx];
  if (!c0.base_var) throw MathError("chart has no base coordinate");
  const std::string base_name = c0.reg->name(*c0.base_var);
  const FieldPtr F = value.field;
  for (std::size_t ci = 0; ci < atlas.charts.size(); ++ci) {
    const Chart& ch = atlas.charts[ci];
    if (!ch.base_var || ch.reg->name(*ch.base_var) != base_name) continue;
    const std::size_t n = ch.reg->size();
    const std::size_t b = *ch.base_var;
    if (ch.reg->inverted(b) && value.is_zero()) continue;
    std::vector<std::optional<std::uint64_t>> vals(n);
    vals[b] = value.bits;
    std::vector<Poly> curve;
    for (const auto& r : ch.relations) curve.push_back(embed_poly(r, F).evaluate_partial(vals));
    // Jacobian of the curve relations wrt the fiber variables
    std::vector<std::size_t> fvars;
    for (std::size_t i = 0; i < n; ++i)
      if (i != b) fvars.push_back(i);
    const std::size_t c = curve.size();
    std::vector<Poly> gens = curve;
    std::vector<std::size_t> cols(c);
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t k) {
      if (k == c) {
        std::function<Poly(std::vector<std::size_t>, std::vector<std::size_t>)> det =
            [&](std::vector<std::size_t> rows, std::vector<std::size_t> cs) -> Poly {
          if (rows.size() == 1) return curve[rows[0]].derivative(fvars[cs[0]]);
          Poly acc = Poly::zero(ch.reg, F);
          for (std::size_t k2 = 0; k2 < cs.size(); ++k2) {
            std::vector<std::size_t> subrows(rows.begin() + 1, rows.end());
            std::vector<std::size_t> subcols;
            for (std::size_t m2 = 0; m2 < cs.size(); ++m2)
              if (m2 != k2) subcols.push_back(cs[m2]);
            acc += curve[rows[0]].derivative(fvars[cs[k2]]) * det(subrows, subcols);
          }
          return acc;
        };
        std::vector<std::size_t> rows(c);
        for (std::size_t i = 0; i < c; ++i) rows[i] = i;
        Poly mm = det(rows, cols);
        if (!mm.is_zero()) gens.push_back(mm);
        return;
      }
      for (std::size_t j = start; j + (c - k) <= fvars.size(); ++j) {
        cols[k] = j;
        choose(j + 1, k + 1);
      }
    };
    choose(0, 0);
    std::vector<Poly> sats;
    for (const auto& u : ch.saturation_set()) {
      Poly ue = embed_poly(u, F).evaluate_partial(vals);
      if (!ue.is_constant()) sats.push_back(ue);
      else if (ue.is_zero()) { sats.clear(); sats.push_back(ue); break; }
    }
    if (sats.size() == 1 && sats[0].is_zero()) continue; // chart empty over this fiber
    auto sat_gens = saturate_all(gens, sats);
    Groebner gb = groebner_compute(sat_gens, TermOrder::grevlex());
    if (!contains_one(gb)) return false;
  }
  return true;
}

} // namespace enriq
