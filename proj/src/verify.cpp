#include <enriq/verify.hpp>

#include <algorithm>
#include <chrono>
#include <sstream>

#include <enriq/extension.hpp>
#include <enriq/factor.hpp>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace enriq {

void CaseReport::add(const std::string& id, const std::string& nm, bool ok,
                     const std::string& detail) {
  checks.push_back({id, nm, ok ? "pass" : "fail", detail});
  if (!ok) pass = false;
}
void CaseReport::skip(const std::string& id, const std::string& nm, const std::string& detail) {
  checks.push_back({id, nm, "skip", detail});
}
void CaseReport::info(const std::string& id, const std::string& nm, const std::string& detail) {
  checks.push_back({id, nm, "info", detail});
}

namespace {

std::string multiset_str(std::vector<SingClass> v) {
  std::sort(v.begin(), v.end());
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << "+";
    os << v[i].str();
  }
  return v.empty() ? "none" : os.str();
}

bool same_multiset(std::vector<SingClass> a, std::vector<SingClass> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

struct LineInfo {
  std::uint64_t e1, e2; // normalized projective representative over GF(4)
  bool fpf = false;
  bool p_closed = false;
  std::uint64_t lambda = 0;
};

// the E12 model derivation D(X) = Y^6, D(Y) = X^2 on the plane: fixed ideal
// (X^2, Y^6), local degree at the origin
long long e12_model_degree() {
  auto reg = Registry::make({"X", "Y"});
  FieldPtr F = Field::gf2();
  std::vector<Poly> gens{Poly::variable(reg, F, 1).pow(6), Poly::variable(reg, F, 0).pow(2)};
  auto d = local_multiplicity_at_origin(gens);
  ENRIQ_CHECK(d.has_value(), "E12 model fixed ideal must be zero-dimensional");
  return *d;
}

} // namespace

CaseReport run_example(const ExampleCase& ex, const VerifyOptions& opt) {
  CaseReport rep;
  rep.name = ex.name;
  auto t0 = std::chrono::steady_clock::now();

  // ---- C1: atlas validation
  {
    auto v = validate_atlas(ex.atlas);
    std::string detail;
    for (const auto& f : v.failures) detail += f + "; ";
    rep.add("C1", "atlas validation", v.ok, detail);
    if (!v.ok) return rep;
  }

  // ---- C2: derivations well defined and transition compatible
  {
    bool ok = true;
    std::string detail;
    for (const Derivation* d : {&ex.d1, &ex.d2}) {
      for (std::size_t c = 0; c < ex.atlas.charts.size() && ok; ++c) {
        auto w = well_defined(ex.atlas, *d, c);
        if (!w.ok) {
          ok = false;
          detail = d->name + " not well defined: " + w.witness;
        }
      }
      for (const auto& t : ex.atlas.transitions) {
        if (!ok) break;
        auto w = transition_compatible(ex.atlas, *d, t);
        if (!w.ok) {
          ok = false;
          detail = d->name + " incompatible: " + w.witness;
        }
      }
    }
    rep.add("C2", "derivation well-definedness and compatibility", ok, detail);
    if (!ok) return rep;
  }

  // ---- C3: Lie structure and type
  LieStructure lie;
  {
    bool ok = true;
    std::string detail;
    int type = 0;
    try {
      lie = build_structure(ex.atlas, ex.d1, ex.d2);
      type = classify_type(lie);
      std::ostringstream os;
      os << "bracket=(" << ex.atlas.field->to_string(lie.b1) << "," << ex.atlas.field->to_string(lie.b2)
         << ") sq1=(" << ex.atlas.field->to_string(lie.s11) << "," << ex.atlas.field->to_string(lie.s12)
         << ") sq2=(" << ex.atlas.field->to_string(lie.s21) << "," << ex.atlas.field->to_string(lie.s22)
         << ") type=" << type;
      detail = os.str();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    if (ok && ex.expect.lie_type && *ex.expect.lie_type != type) {
      ok = false;
      detail += " expected type " + std::to_string(*ex.expect.lie_type);
    }
    rep.add("C3", "restricted Lie structure and type", ok, detail);
    if (!ok) return rep;
  }

  // ---- C4: singular points and classes
  std::vector<SurfacePoint> points;
  std::vector<SingClass> classes;
  {
    bool ok = true;
    std::string detail;
    try {
      points = singular_points(ex.atlas, opt.max_ext_degree, opt.seed);
      for (const auto& p : points) {
        SingClass c = classify_point(ex.atlas, p);
        if (c.kind == SingClass::Unclassified) {
          ok = false;
          detail += p.str(ex.atlas) + " unclassified: " + c.reason + "; ";
        }
        classes.push_back(c);
      }
      std::ostringstream os;
      for (std::size_t i = 0; i < points.size(); ++i)
        os << points[i].str(ex.atlas) << "=" << classes[i].str() << " ";
      if (ok && ex.expect.has_cover) {
        std::vector<int> matched(ex.expect.sing_cover.size(), 0);
        for (std::size_t i = 0; i < points.size() && ok; ++i) {
          const auto& p = points[i];
          int found = -1;
          for (std::size_t g = 0; g < ex.expect.sing_cover.size(); ++g) {
            const auto& grp = ex.expect.sing_cover[g];
            if (ex.atlas.charts[p.chart].name != grp.chart) continue;
            bool sat = true;
            std::vector<FieldElt> pt;
            for (auto cc : p.coords) pt.emplace_back(cc, p.field);
            for (const auto& q : grp.constraints)
              if (!embed_poly(q, p.field).evaluate(pt).is_zero()) sat = false;
            if (!sat) continue;
            found = (int)g;
            break;
          }
          if (found < 0) {
            ok = false;
            detail += "unexpected point " + p.str(ex.atlas) + "; ";
          } else {
            matched[found]++;
            if (!(ex.expect.sing_cover[found].cls == classes[i])) {
              ok = false;
              detail += p.str(ex.atlas) + " classified " + classes[i].str() + ", expected " +
                        ex.expect.sing_cover[found].cls.str() + "; ";
            }
          }
        }
        for (std::size_t g = 0; g < matched.size() && ok; ++g) {
          if (matched[g] != ex.expect.sing_cover[g].count) {
            ok = false;
            detail += "group " + ex.expect.sing_cover[g].cls.str() + "@" +
                      ex.expect.sing_cover[g].chart + " matched " + std::to_string(matched[g]) +
                      "/" + std::to_string(ex.expect.sing_cover[g].count) + "; ";
          }
        }
      }
      detail = os.str() + detail;
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    rep.add("C4", "singular points and classes", ok, detail);
    if (!ok) return rep;
  }

  // ---- C5: image multiset
  std::vector<SingClass> images;
  {
    bool ok = true;
    std::string detail;
    try {
      for (const auto& c : classes) {
        SingClass im = image_type(c);
        if (!(im.kind == SingClass::Smooth)) images.push_back(im);
      }
      detail = multiset_str(images);
      if (ex.expect.has_image && !same_multiset(images, ex.expect.sing_image)) {
        ok = false;
        detail += " expected " + multiset_str(ex.expect.sing_image);
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    rep.add("C5", "quotient image types", ok, detail);
  }

  // ---- C6: lifted configuration
  std::vector<SingClass> lifted;
  {
    bool ok = true;
    std::string detail;
    try {
      for (const auto& c : classes)
        for (const auto& l : lift_to_cover(c)) lifted.push_back(l);
      detail = multiset_str(lifted);
      if (ex.expect.has_lifted && !same_multiset(lifted, ex.expect.sing_lifted)) {
        ok = false;
        detail += " expected " + multiset_str(ex.expect.sing_lifted);
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    rep.add("C6", "lifted configuration", ok, detail);
  }

  // ---- C7: index identity (or the E12 degree law)
  {
    bool has_e12 = false;
    for (const auto& c : classes) has_e12 = has_e12 || c.kind == SingClass::E12;
    if (has_e12) {
      long long deg = e12_model_degree();
      rep.add("C7", "degree law (E12 substitute for the index identity)", deg == 12,
              "model fixed degree = " + std::to_string(deg));
    } else {
      long long lhs = 0, rhs = 12;
      for (const auto& c : classes) lhs += c.index();
      for (const auto& im : images) rhs += im.index();
      rep.add("C7", "index identity sum n = 12 + sum m", lhs == rhs,
              std::to_string(lhs) + " vs " + std::to_string(rhs));
    }
  }

  // ---- the GF(4) coercion used by C8-C10
  FieldPtr gf4 = ex.atlas.field->degree() == 1 ? extension_field(ex.atlas.field, 2) : ex.atlas.field;
  ExampleCase cx = coerce_case(ex, gf4);
  std::vector<SurfacePoint> cpoints = singular_points(cx.atlas, opt.max_ext_degree, opt.seed);
  std::vector<CanonicalLine> clines;
  for (const auto& p : cpoints) clines.push_back(canonical_line(cx.atlas, p, cx.d1, cx.d2));

  // ---- C8: exhaustive fixed-point-freeness census over GF(4)^2
  std::vector<LineInfo> lines; // the five projective lines over GF(4)
  {
    bool ok = true;
    std::string detail;
    int undefined_count = 0;
    for (std::uint64_t e1 : gf4->enumerate()) {
      for (std::uint64_t e2 : gf4->enumerate()) {
        if (e1 == 0 && e2 == 0) continue;
        Derivation d = linear_combination(cx.atlas, FieldElt(e1, gf4), cx.d1, FieldElt(e2, gf4), cx.d2);
        bool fpf = is_fixed_point_free(cx.atlas, d);
        if (ex.expect.generic) {
          auto pv = ex.expect.generic->eval(FieldElt(e1, gf4), FieldElt(e2, gf4));
          if (pv == GenericPredicate::Undefined) {
            ++undefined_count;
          } else if ((pv == GenericPredicate::True) != fpf) {
            ok = false;
            detail += "(" + gf4->to_string(e1) + "," + gf4->to_string(e2) + ") computed " +
                      (fpf ? "free" : "fixing") + " against the stated condition; ";
          }
        }
        // canonical-line containment for fixing lines
        if (!fpf) {
          std::uint64_t n1 = e1, n2 = e2;
          if (n1 != 0) {
            std::uint64_t inv = gf4->inv(n1);
            n1 = 1;
            n2 = gf4->mul(n2, inv);
          } else {
            n2 = 1;
          }
          bool is_canonical = false;
          for (const auto& cl : clines)
            if (cl.status == CanonicalLine::Line && cl.e1.bits == n1 && cl.e2.bits == n2)
              is_canonical = true;
          if (!is_canonical) {
            ok = false;
            detail += "fixing line [" + gf4->to_string(n1) + ":" + gf4->to_string(n2) +
                      "] is not a canonical line; ";
          }
        }
        // record per-line data (normalized representative seen first)
        std::uint64_t n1 = e1, n2 = e2;
        if (n1 != 0) {
          std::uint64_t inv = gf4->inv(n1);
          n1 = 1;
          n2 = gf4->mul(n2, inv);
        } else {
          n2 = 1;
        }
        bool seen = false;
        for (auto& l : lines) seen = seen || (l.e1 == n1 && l.e2 == n2);
        if (!seen) lines.push_back({n1, n2, fpf, false, 0});
      }
    }
    if (undefined_count)
      rep.info("C8i", "predicate undefined points",
               std::to_string(undefined_count) +
                   " pairs outside the stated condition's domain; direct computation used");
    rep.add("C8", "fixed-point-freeness census over GF(4)^2", ok, detail);
  }

  // ---- C9: canonical line type law
  {
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < cpoints.size(); ++i) {
      if (clines[i].status != CanonicalLine::Line) {
        ok = false;
        detail += cpoints[i].str(cx.atlas) + ": no canonical line; ";
        continue;
      }
      Derivation gen = linear_combination(cx.atlas, clines[i].e1, cx.d1, clines[i].e2, cx.d2);
      PClosedResult pc = p_closed(cx.atlas, gen, cx.d1, cx.d2);
      if (!pc.p_closed) {
        ok = false;
        detail += cpoints[i].str(cx.atlas) + ": canonical line not p-closed; ";
        continue;
      }
      // match classes computed on the base atlas through the same constraints:
      // classify directly over the coercion for robustness
      SingClass c = classify_point(cx.atlas, cpoints[i]);
      bool is_a_odd = c.kind == SingClass::A && c.n % 2 == 1;
      bool multiplicative = !pc.lambda.is_zero();
      if (is_a_odd != multiplicative) {
        ok = false;
        detail += cpoints[i].str(cx.atlas) + ": " + c.str() + " line type " +
                  (multiplicative ? "multiplicative" : "additive") + "; ";
      }
    }
    rep.add("C9", "canonical line type law", ok, detail);
  }

  // ---- C10: verdicts per fixed-point-free line
  {
    bool ok = true;
    std::string detail;
    bool any_classical = false, any_supersingular = false;
    int fpf_count = 0;
    for (auto& l : lines) {
      Derivation d = linear_combination(cx.atlas, FieldElt(l.e1, gf4), cx.d1, FieldElt(l.e2, gf4), cx.d2);
      PClosedResult pc = p_closed(cx.atlas, d, cx.d1, cx.d2);
      l.p_closed = pc.p_closed;
      l.lambda = pc.lambda.bits;
      if (!pc.p_closed) {
        ok = false;
        detail += "line [" + gf4->to_string(l.e1) + ":" + gf4->to_string(l.e2) + "] not p-closed; ";
        continue;
      }
      if (l.fpf) {
        ++fpf_count;
        if (pc.lambda.is_zero())
          any_supersingular = true;
        else
          any_classical = true;
        detail += "[" + gf4->to_string(l.e1) + ":" + gf4->to_string(l.e2) + "]->" +
                  (pc.lambda.is_zero() ? "supersingular" : "classical") + " ";
      }
    }
    std::string verdict = any_classical && any_supersingular
                              ? "mixed"
                              : (any_classical ? "classical" : (any_supersingular ? "supersingular" : "none"));
    if (fpf_count == 0) {
      ok = false;
      detail += "no fixed-point-free line found over GF(4); ";
    }
    if (ex.expect.verdict && verdict != *ex.expect.verdict) {
      ok = false;
      detail += "verdict " + verdict + ", expected " + *ex.expect.verdict + "; ";
    }
    if (ex.expect.verdict && *ex.expect.verdict == "mixed") {
      // exactly one supersingular line, and it must be fixed-point-free
      int ss = 0;
      for (const auto& l : lines)
        if (l.fpf && l.lambda == 0) ++ss;
      if (ss != 1) {
        ok = false;
        detail += "expected exactly one supersingular quotient line, found " + std::to_string(ss) + "; ";
      }
    }
    rep.add("C10", "classical/supersingular verdict", ok, detail);
  }

  // ---- T1: tangent fibers (symbolic identity plus a sampled run)
  if (ex.expect.tangent_poly) {
    bool ok = true;
    std::string detail;
    try {
      auto etreg = Registry::make({"e1", "e2", "t"});
      // symbolic numerator of D(base) on the first finite-base chart
      Poly symbolic = Poly::zero(etreg, ex.atlas.field);
      bool found_chart = false;
      for (std::size_t c = 0; c < ex.atlas.charts.size() && !found_chart; ++c) {
        const Chart& ch = ex.atlas.charts[c];
        if (!ch.base_var || ch.base_reciprocal) continue;
        found_chart = true;
        auto lift_to_et = [&](const RatExpr& r) {
          Poly lau = r.to_laurent(); // our tables keep D(base) Laurent-free in base
          Poly p = clear_laurent(lau);
          // rename base variable to t
          std::vector<Poly> im;
          for (std::size_t v = 0; v < ch.reg->size(); ++v) {
            if (v == *ch.base_var)
              im.push_back(Poly::variable(etreg, ex.atlas.field, 2));
            else if (p.uses_var(v))
              throw MathError("D(base) is not a base polynomial");
            else
              im.push_back(Poly::zero(etreg, ex.atlas.field));
          }
          return p.substitute(etreg, ex.atlas.field, im);
        };
        Poly n1 = lift_to_et(ex.d1.image(c, *ch.base_var));
        Poly n2 = lift_to_et(ex.d2.image(c, *ch.base_var));
        symbolic = n1 * Poly::variable(etreg, ex.atlas.field, 0) +
                   n2 * Poly::variable(etreg, ex.atlas.field, 1);
      }
      if (!found_chart) throw MathError("no finite-base chart");
      if (!(symbolic == *ex.expect.tangent_poly)) {
        ok = false;
        detail += "symbolic D(t) = " + symbolic.str() + ", expected " +
                  ex.expect.tangent_poly->str() + "; ";
      }
      // infinity criterion
      if (ex.expect.infinity_when) {
        auto ereg = Registry::make({"e1", "e2"});
        Poly inf = Poly::zero(ereg, ex.atlas.field);
        bool found_recip = false;
        for (std::size_t c = 0; c < ex.atlas.charts.size() && !found_recip; ++c) {
          const Chart& ch = ex.atlas.charts[c];
          if (!ch.base_var || !ch.base_reciprocal) continue;
          found_recip = true;
          auto at0 = [&](const RatExpr& r) {
            std::vector<std::optional<std::uint64_t>> vals(ch.reg->size());
            vals[*ch.base_var] = 0;
            // evaluate numerator at base = 0; remaining variables must drop out
            Poly p = r.num.evaluate_partial(vals);
            Poly d0 = r.den.evaluate_partial(vals);
            ENRIQ_CHECK(p.is_constant() && d0.is_constant(), "infinity probe not constant");
            Expo z(ch.reg->size(), 0);
            std::uint64_t dv = d0.coeff_of(z);
            ENRIQ_CHECK(dv != 0, "infinity probe denominator vanishes");
            return ex.atlas.field->mul(p.coeff_of(z), ex.atlas.field->inv(dv));
          };
          inf = Poly::variable(ereg, ex.atlas.field, 0).scaled(at0(ex.d1.image(c, *ch.base_var))) +
                Poly::variable(ereg, ex.atlas.field, 1).scaled(at0(ex.d2.image(c, *ch.base_var)));
        }
        if (found_recip && !(inf == *ex.expect.infinity_when)) {
          ok = false;
          detail += "infinity criterion " + inf.str() + ", expected " +
                    ex.expect.infinity_when->str() + "; ";
        }
      }
      // sampled consistency of the tangent_fibers operation
      if (ex.expect.generic) {
        FieldPtr f4 = gf4;
        bool sampled = false;
        for (std::uint64_t e1 : f4->enumerate()) {
          if (sampled) break;
          for (std::uint64_t e2 : f4->enumerate()) {
            if (e1 == 0 && e2 == 0) continue;
            if (ex.expect.generic->eval(FieldElt(e1, f4), FieldElt(e2, f4)) != GenericPredicate::True)
              continue;
            Derivation d = linear_combination(cx.atlas, FieldElt(e1, f4), cx.d1, FieldElt(e2, f4), cx.d2);
            TangentFibers tf = tangent_fibers(cx.atlas, d, 8, opt.seed);
            // compare against roots of the expected polynomial at (e1,e2)
            Poly expect_poly = embed_poly(*ex.expect.tangent_poly, f4);
            std::vector<std::optional<std::uint64_t>> vals(3);
            vals[0] = e1;
            vals[1] = e2;
            Poly inst = expect_poly.evaluate_partial(vals);
            std::vector<std::uint64_t> expect_roots;
            if (!inst.is_zero() && !inst.is_constant()) {
              UPoly u = to_univariate(inst, 2);
              FieldPtr big = tf.field;
              UPoly ue(big);
              for (auto cc : u.c) ue.c.push_back(get_embedding(f4, big)(cc));
              expect_roots = roots_in_field(ue, opt.seed);
            }
            std::vector<std::uint64_t> got;
            for (const auto& fe : tf.finite) got.push_back(fe.bits);
            std::sort(got.begin(), got.end());
            if (got != expect_roots) {
              ok = false;
              detail += "sampled tangent fibers disagree at (" + f4->to_string(e1) + "," +
                        f4->to_string(e2) + "); ";
            }
            sampled = true;
            break;
          }
        }
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    rep.add("T1", "tangent fibers", ok, detail);
  }

  // ---- T2: ordinariness of the tangent fibers
  if (ex.expect.ordinary && *ex.expect.ordinary != "na") {
    bool ok = true;
    std::string detail;
    try {
      bool want_ordinary = *ex.expect.ordinary == "true";
      bool checked = false;
      for (std::uint64_t e1 : gf4->enumerate()) {
        if (checked) break;
        for (std::uint64_t e2 : gf4->enumerate()) {
          if (e1 == 0 && e2 == 0) continue;
          if (ex.expect.generic &&
              ex.expect.generic->eval(FieldElt(e1, gf4), FieldElt(e2, gf4)) != GenericPredicate::True)
            continue;
          Derivation d = linear_combination(cx.atlas, FieldElt(e1, gf4), cx.d1, FieldElt(e2, gf4), cx.d2);
          TangentFibers tf = tangent_fibers(cx.atlas, d, 8, opt.seed);
          if (tf.finite.empty()) continue;
          // find the finite-base chart for the Hasse probe
          std::size_t hchart = SIZE_MAX;
          for (std::size_t c = 0; c < cx.atlas.charts.size(); ++c)
            if (cx.atlas.charts[c].base_var && !cx.atlas.charts[c].base_reciprocal) {
              hchart = c;
              break;
            }
          ENRIQ_CHECK(hchart != SIZE_MAX, "no finite-base chart for Hasse probe");
          for (const auto& v : tf.finite) {
            if (!fiber_is_smooth(cx.atlas, hchart, v)) continue;
            FieldElt a1 = hasse_coefficient_at_fiber(cx.atlas, hchart, v);
            bool ordinary = !a1.is_zero();
            if (ordinary != want_ordinary) {
              ok = false;
              detail += "fiber t=" + v.str() + ": a1=" + a1.str() + "; ";
            }
            checked = true;
          }
          if (checked) break;
        }
      }
      if (!checked) {
        ok = false;
        detail += "no smooth tangent fiber sampled; ";
      }
      // the infinity fiber on the additive line (when expected)
      if (ex.expect.ordinary_infinity_fiber.has_value()) {
        std::size_t rchart = SIZE_MAX;
        for (std::size_t c = 0; c < cx.atlas.charts.size(); ++c)
          if (cx.atlas.charts[c].base_var && cx.atlas.charts[c].base_reciprocal) {
            rchart = c;
            break;
          }
        ENRIQ_CHECK(rchart != SIZE_MAX, "no reciprocal-base chart");
        FieldElt zero(0, gf4);
        if (fiber_is_smooth(cx.atlas, rchart, zero)) {
          FieldElt a1 = hasse_coefficient_at_fiber(cx.atlas, rchart, zero);
          bool ordinary = !a1.is_zero();
          if (ordinary != *ex.expect.ordinary_infinity_fiber) {
            ok = false;
            detail += "infinity fiber: a1=" + a1.str() + "; ";
          }
        } else {
          ok = false;
          detail += "infinity fiber not smooth; ";
        }
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    rep.add("T2", "ordinariness of tangent fibers", ok, detail);
  }

  auto t1c = std::chrono::steady_clock::now();
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1c - t0).count();
  rep.fields_used.push_back("GF(2^" + std::to_string(ex.atlas.field->degree()) + ")");
  rep.fields_used.push_back("GF(2^" + std::to_string(gf4->degree()) + ")");
  return rep;
}

SummaryReport verify_all(const VerifyOptions& opt) {
  SummaryReport sum;
  sum.seed = opt.seed;
  const auto& reg = builtin_registry();
  sum.cases.resize(reg.size());
  int n = (int)reg.size();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < n; ++i) {
    try {
      sum.cases[i] = run_example(reg[i], opt);
    } catch (const std::exception& e) {
      CaseReport r;
      r.name = reg[i].name;
      r.add("C0", "example run", false, e.what());
      sum.cases[i] = r;
    }
  }
  for (const auto& c : sum.cases) sum.all_pass = sum.all_pass && c.pass;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    std::string verdict = reg[i].expect.verdict ? *reg[i].expect.verdict : "?";
    std::string config =
        reg[i].expect.has_lifted ? multiset_str(reg[i].expect.sing_lifted) : reg[i].name;
    sum.configuration_verdicts.emplace_back(config, verdict);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// report emission

std::string emit_text(const CaseReport& rep, const VerifyOptions& opt) {
  std::ostringstream os;
  os << "== " << rep.name << " : " << (rep.pass ? "PASS" : "FAIL");
  if (opt.timings) os << "  (" << rep.elapsed_ms << " ms)";
  os << "\n";
  for (const auto& c : rep.checks) {
    os << "  " << c.id;
    for (std::size_t k = c.id.size(); k < 4; ++k) os << ' ';
    os << c.status;
    for (std::size_t k = c.status.size(); k < 5; ++k) os << ' ';
    os << " " << c.name;
    if (!c.detail.empty()) os << " -- " << c.detail;
    os << "\n";
  }
  return os.str();
}

std::string emit_text(const SummaryReport& rep, const VerifyOptions& opt) {
  std::ostringstream os;
  for (const auto& c : rep.cases) os << emit_text(c, opt);
  os << "\nconfiguration summary:\n";
  for (const auto& [config, verdict] : rep.configuration_verdicts)
    os << "  " << config << " : " << verdict << "\n";
  int passed = 0;
  for (const auto& c : rep.cases)
    if (c.pass) ++passed;
  os << "\n" << passed << "/" << rep.cases.size() << " examples pass\n";
  return os.str();
}

namespace {

nlohmann::ordered_json check_json(const CheckResult& c) {
  nlohmann::ordered_json j;
  j["id"] = c.id;
  j["name"] = c.name;
  j["status"] = c.status;
  j["detail"] = c.detail;
  return j;
}

nlohmann::ordered_json case_json(const CaseReport& rep, const VerifyOptions& opt) {
  nlohmann::ordered_json j;
  j["name"] = rep.name;
  j["pass"] = rep.pass;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks) j["checks"].push_back(check_json(c));
  j["fields_used"] = rep.fields_used;
  if (opt.timings) j["elapsed_ms"] = rep.elapsed_ms;
  return j;
}

} // namespace

std::string emit_json(const CaseReport& rep, const VerifyOptions& opt) {
  nlohmann::ordered_json j;
  j["schema"] = "enriq-report/1";
  j["report"] = case_json(rep, opt);
  return j.dump(2) + "\n";
}

std::string emit_json(const SummaryReport& rep, const VerifyOptions& opt) {
  nlohmann::ordered_json j;
  j["schema"] = "enriq-report/1";
  j["seed"] = rep.seed;
  j["all_pass"] = rep.all_pass;
  j["cases"] = nlohmann::ordered_json::array();
  for (const auto& c : rep.cases) j["cases"].push_back(case_json(c, opt));
  auto table = nlohmann::ordered_json::array();
  for (const auto& [config, verdict] : rep.configuration_verdicts) {
    nlohmann::ordered_json row;
    row["configuration"] = config;
    row["verdict"] = verdict;
    table.push_back(row);
  }
  j["configuration_verdicts"] = table;
  return j.dump(2) + "\n";
}

} // namespace enriq
