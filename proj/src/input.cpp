#include <enriq/input.hpp>

#include <algorithm>
#include <map>
#include <sstream>

#include <enriq/extension.hpp>
#include <enriq/parse.hpp>

namespace enriq {

GenericPredicate::Value GenericPredicate::eval(const FieldElt& e1, const FieldElt& e2) const {
  std::vector<FieldElt> pt{e1, e2};
  if (!undefined_when.empty()) {
    bool all_zero = true;
    for (const auto& q : undefined_when) {
      Poly qe = embed_poly(q, e1.field);
      if (!qe.evaluate(pt).is_zero()) all_zero = false;
    }
    if (all_zero) return Undefined;
  }
  for (const auto& p : nonzero) {
    Poly pe = embed_poly(p, e1.field);
    if (pe.evaluate(pt).is_zero()) return False;
  }
  return True;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

struct PendingChart {
  std::string name;
  std::vector<std::string> vars;
  std::vector<std::string> inverted_vars;
  std::vector<std::string> unit_exprs;
  std::vector<std::string> relation_exprs;
  std::optional<std::string> base;
  bool base_reciprocal = false;
  int line = 0;
};

struct PendingTransition {
  std::string src, dst;
  std::vector<std::string> invert_entries;
  std::vector<std::pair<std::string, std::string>> assignments;
  int line = 0;
};

struct PendingDerivation {
  // chart -> assignments
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> per_chart;
};

} // namespace

ExampleCase parse_input(const std::string& text, const std::string& fallback_name) {
  ExampleCase out;
  out.name = fallback_name;
  FieldPtr field = Field::gf2();
  bool field_set = false;

  std::vector<PendingChart> charts;
  std::vector<PendingTransition> transitions;
  std::map<std::string, PendingDerivation> derivations;
  std::vector<std::pair<std::string, std::string>> expects; // key, value
  std::vector<int> expect_lines;
  std::string basis_d1 = "D1", basis_d2 = "D2";

  auto find_chart = [&](const std::string& n) -> PendingChart* {
    for (auto& c : charts)
      if (c.name == n) return &c;
    return nullptr;
  };

  std::istringstream in(text);
  std::string rawline;
  int lineno = 0;
  while (std::getline(in, rawline)) {
    ++lineno;
    std::string line = rawline;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    auto rest_of = [&]() {
      std::string r;
      std::getline(ls, r);
      return trim(r);
    };
    auto fail = [&](const std::string& msg) -> void {
      throw ParseError(msg, ParsePos{lineno, 1});
    };

    if (kw == "name") {
      out.name = rest_of();
    } else if (kw == "field") {
      std::string spec = rest_of();
      if (field_set) fail("duplicate field line");
      field_set = true;
      if (spec == "gf2")
        field = Field::gf2();
      else
        field = Field::make(parse_gf2_modulus(spec));
    } else if (kw == "chart") {
      PendingChart pc;
      pc.line = lineno;
      ls >> pc.name;
      if (pc.name.empty()) fail("chart needs a name");
      std::string attr;
      while (ls >> attr) {
        auto eq = attr.find('=');
        // attributes may contain commas that were split by the stream; re-join
        std::string value = (eq == std::string::npos) ? "" : attr.substr(eq + 1);
        std::string key = (eq == std::string::npos) ? attr : attr.substr(0, eq);
        if (key == "vars") {
          for (auto& v : split(value, ',')) pc.vars.push_back(v);
        } else if (key == "inverted") {
          for (auto& v : split(value, ',')) {
            if (!v.empty() && v.front() == '(')
              pc.unit_exprs.push_back(v.substr(1, v.size() - 2));
            else
              pc.inverted_vars.push_back(v);
          }
        } else {
          fail("unknown chart attribute: " + key);
        }
      }
      if (pc.vars.empty()) fail("chart " + pc.name + " declares no variables");
      if (find_chart(pc.name)) fail("duplicate chart " + pc.name);
      charts.push_back(std::move(pc));
    } else if (kw == "relation") {
      std::string cname;
      ls >> cname;
      std::string rest = rest_of();
      if (rest.empty() || rest[0] != ':') fail("relation: expected ':'");
      auto* pc = find_chart(cname);
      if (!pc) fail("relation for unknown chart " + cname);
      pc->relation_exprs.push_back(trim(rest.substr(1)));
    } else if (kw == "unit") {
      std::string cname;
      ls >> cname;
      std::string rest = rest_of();
      if (rest.empty() || rest[0] != ':') fail("unit: expected ':'");
      auto* pc = find_chart(cname);
      if (!pc) fail("unit for unknown chart " + cname);
      pc->unit_exprs.push_back(trim(rest.substr(1)));
    } else if (kw == "transition") {
      std::string head;
      ls >> head;
      auto arrow = head.find("->");
      if (arrow == std::string::npos) fail("transition: expected src->dst");
      PendingTransition pt;
      pt.line = lineno;
      pt.src = head.substr(0, arrow);
      pt.dst = head.substr(arrow + 2);
      std::string rest = rest_of();
      if (!rest.empty() && rest[0] != ':') {
        // optional invert=...
        auto colon = rest.find(':');
        if (colon == std::string::npos) fail("transition: expected ':'");
        std::string attrs = trim(rest.substr(0, colon));
        rest = trim(rest.substr(colon));
        if (attrs.rfind("invert=", 0) == 0) {
          for (auto& v : split(attrs.substr(7), ',')) pt.invert_entries.push_back(v);
        } else if (!attrs.empty()) {
          fail("transition: unknown attribute " + attrs);
        }
      }
      if (rest.empty() || rest[0] != ':') fail("transition: expected ':'");
      for (auto& part : split(rest.substr(1), ';')) {
        if (part.empty()) continue;
        auto eq = part.find('=');
        if (eq == std::string::npos) fail("transition assignment needs '='");
        pt.assignments.emplace_back(trim(part.substr(0, eq)), trim(part.substr(eq + 1)));
      }
      transitions.push_back(std::move(pt));
    } else if (kw == "derivation") {
      std::string dname, cname;
      ls >> dname >> cname;
      std::string rest = rest_of();
      if (rest.empty() || rest[0] != ':') fail("derivation: expected ':'");
      auto& pd = derivations[dname];
      auto& as = pd.per_chart[cname];
      for (auto& part : split(rest.substr(1), ';')) {
        if (part.empty()) continue;
        auto eq = part.find('=');
        if (eq == std::string::npos) fail("derivation assignment needs '='");
        as.emplace_back(trim(part.substr(0, eq)), trim(part.substr(eq + 1)));
      }
    } else if (kw == "basis") {
      auto names = split(rest_of(), ',');
      if (names.size() != 2) fail("basis needs two derivation names");
      basis_d1 = names[0];
      basis_d2 = names[1];
    } else if (kw == "base-coordinate") {
      std::string spec = rest_of();
      bool recip = false;
      auto sp = spec.find(' ');
      if (sp != std::string::npos) {
        std::string flag = trim(spec.substr(sp + 1));
        if (flag == "reciprocal")
          recip = true;
        else if (!flag.empty())
          fail("base-coordinate: unknown flag " + flag);
        spec = trim(spec.substr(0, sp));
      }
      auto colon = spec.find(':');
      if (colon == std::string::npos) fail("base-coordinate: expected chart:var");
      auto* pc = find_chart(spec.substr(0, colon));
      if (!pc) fail("base-coordinate for unknown chart");
      pc->base = spec.substr(colon + 1);
      pc->base_reciprocal = recip;
    } else if (kw == "expect") {
      std::string rest = rest_of();
      auto eq = rest.find('=');
      if (eq == std::string::npos) fail("expect: missing '='");
      expects.emplace_back(trim(rest.substr(0, eq)), trim(rest.substr(eq + 1)));
      expect_lines.push_back(lineno);
    } else {
      fail("unknown directive: " + kw);
    }
  }

  if (charts.empty()) throw InputError(out.name + ": no charts declared");

  // build the atlas
  out.atlas.name = out.name;
  out.atlas.field = field;
  for (auto& pc : charts) {
    Chart c;
    c.name = pc.name;
    c.field = field;
    c.reg = Registry::make(pc.vars, pc.inverted_vars);
    for (auto& rx : pc.relation_exprs)
      c.relations.push_back(parse_poly(rx, c.reg, field, pc.line));
    for (auto& ux : pc.unit_exprs) c.units.push_back(parse_poly(ux, c.reg, field, pc.line));
    if (pc.base) c.base_var = c.reg->index_of(*pc.base);
    c.base_reciprocal = pc.base_reciprocal;
    if (c.relations.empty()) throw InputError("chart " + c.name + " has no relations");
    out.atlas.charts.push_back(std::move(c));
  }
  for (auto& pt : transitions) {
    Transition t;
    t.src = out.atlas.chart_index(pt.src);
    t.dst = out.atlas.chart_index(pt.dst);
    const Chart& src = out.atlas.charts[t.src];
    const Chart& dst = out.atlas.charts[t.dst];
    for (auto& entry : pt.invert_entries) {
      std::string e = entry;
      if (!e.empty() && e.front() == '(') e = e.substr(1, e.size() - 2);
      t.overlap_units.push_back(parse_poly(e, src.reg, field, pt.line));
    }
    std::map<std::string, RatExpr> given;
    for (auto& [var, expr] : pt.assignments)
      given[var] = parse_ratexpr(expr, src.reg, field, pt.line);
    for (std::size_t v = 0; v < dst.reg->size(); ++v) {
      auto it = given.find(dst.reg->name(v));
      if (it == given.end())
        throw InputError("transition " + pt.src + "->" + pt.dst + ": no image for " +
                         dst.reg->name(v));
      t.images.push_back(it->second);
      given.erase(it);
    }
    if (!given.empty())
      throw InputError("transition " + pt.src + "->" + pt.dst + ": image for unknown variable " +
                       given.begin()->first);
    out.atlas.transitions.push_back(std::move(t));
  }
  out.atlas.prepare();

  auto build_derivation = [&](const std::string& dname) {
    auto it = derivations.find(dname);
    if (it == derivations.end()) throw InputError("derivation " + dname + " not declared");
    Derivation d;
    d.name = dname;
    d.images.resize(out.atlas.charts.size());
    for (std::size_t ci = 0; ci < out.atlas.charts.size(); ++ci) {
      const Chart& ch = out.atlas.charts[ci];
      auto cit = it->second.per_chart.find(ch.name);
      if (cit == it->second.per_chart.end())
        throw InputError("derivation " + dname + " missing chart " + ch.name);
      std::map<std::string, RatExpr> given;
      for (auto& [var, expr] : cit->second) given[var] = parse_ratexpr(expr, ch.reg, field);
      for (std::size_t v = 0; v < ch.reg->size(); ++v) {
        auto g = given.find(ch.reg->name(v));
        if (g == given.end())
          throw InputError("derivation " + dname + " on " + ch.name + ": no image for " +
                           ch.reg->name(v));
        d.images[ci].push_back(g->second);
      }
    }
    return d;
  };
  out.d1 = build_derivation(basis_d1);
  out.d2 = build_derivation(basis_d2);
  out.d1_name = basis_d1;
  out.d2_name = basis_d2;

  // expectations
  auto ereg = Registry::make({"e1", "e2"});
  auto etreg = Registry::make({"e1", "e2", "t"});
  for (std::size_t i = 0; i < expects.size(); ++i) {
    const auto& [key, value] = expects[i];
    int ln = expect_lines[i];
    if (key == "lie-type") {
      out.expect.lie_type = std::stoi(value);
    } else if (key == "verdict") {
      if (value != "classical" && value != "supersingular" && value != "mixed")
        throw ParseError("verdict must be classical|supersingular|mixed", {ln, 1});
      out.expect.verdict = value;
    } else if (key == "generic") {
      GenericPredicate gp;
      gp.reg = ereg;
      std::string v = value;
      auto uw = v.find("undefined-when:");
      std::string uws;
      if (uw != std::string::npos) {
        uws = trim(v.substr(uw + 15));
        v = trim(v.substr(0, uw));
      }
      if (v.rfind("nonzero:", 0) != 0) throw ParseError("generic: expected nonzero:...", {ln, 1});
      for (auto& p : split(v.substr(8), ';'))
        if (!p.empty()) gp.nonzero.push_back(parse_poly(p, ereg, field, ln));
      for (auto& p : split(uws, ';'))
        if (!p.empty()) gp.undefined_when.push_back(parse_poly(p, ereg, field, ln));
      out.expect.generic = std::move(gp);
    } else if (key == "tangent-fibers") {
      std::string v = value;
      auto iw = v.find("inf-when:");
      if (iw != std::string::npos) {
        out.expect.infinity_when = parse_poly(trim(v.substr(iw + 9)), ereg, field, ln);
        v = trim(v.substr(0, iw));
      }
      if (v.rfind("roots-of:", 0) != 0)
        throw ParseError("tangent-fibers: expected roots-of:...", {ln, 1});
      out.expect.tangent_poly = parse_poly(trim(v.substr(9)), etreg, field, ln);
    } else if (key == "ordinary") {
      auto parts = split(value, ' ');
      std::string first = parts.empty() ? value : parts[0];
      if (first != "true" && first != "false" && first != "na")
        throw ParseError("ordinary must be true|false|na", {ln, 1});
      out.expect.ordinary = first;
      for (std::size_t j = 1; j < parts.size(); ++j) {
        if (parts[j].rfind("inf:", 0) == 0)
          out.expect.ordinary_infinity_fiber = (parts[j].substr(4) == "true");
      }
    } else if (key == "sing-cover") {
      out.expect.has_cover = true;
      for (auto& item : split(value, ';')) {
        if (item.empty()) continue;
        ExpectedPointGroup g;
        std::string s = item;
        auto star = s.find('*');
        auto at = s.find('@');
        if (star != std::string::npos && star < at) {
          g.count = std::stoi(trim(s.substr(0, star)));
          s = trim(s.substr(star + 1));
          at = s.find('@');
        }
        if (at == std::string::npos) throw ParseError("sing-cover item needs '@ chart'", {ln, 1});
        g.cls = parse_sing_class(trim(s.substr(0, at)));
        s = trim(s.substr(at + 1));
        auto colon = s.find(':');
        if (colon == std::string::npos) throw ParseError("sing-cover item needs ': constraints'", {ln, 1});
        g.chart = trim(s.substr(0, colon));
        std::size_t ci = out.atlas.chart_index(g.chart);
        for (auto& cs : split(s.substr(colon + 1), '|'))
          if (!cs.empty())
            g.constraints.push_back(parse_poly(cs, out.atlas.charts[ci].reg, field, ln));
        out.expect.sing_cover.push_back(std::move(g));
      }
    } else if (key == "sing-image" || key == "sing-lifted") {
      bool image = key == "sing-image";
      auto& target = image ? out.expect.sing_image : out.expect.sing_lifted;
      (image ? out.expect.has_image : out.expect.has_lifted) = true;
      if (trim(value) == "none") continue;
      for (auto& item : split(value, '+')) {
        if (item.empty()) continue;
        int count = 1;
        std::string s = item;
        auto star = s.find('*');
        if (star != std::string::npos) {
          count = std::stoi(trim(s.substr(0, star)));
          s = trim(s.substr(star + 1));
        }
        SingClass c = parse_sing_class(s);
        for (int k = 0; k < count; ++k) target.push_back(c);
      }
    } else {
      throw ParseError("unknown expect key: " + key, {ln, 1});
    }
  }
  return out;
}

} // namespace enriq
