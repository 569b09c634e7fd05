#include <enriq/singclass.hpp>

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>

#include <enriq/assets.hpp>
#include <enriq/extension.hpp>
#include <enriq/factor.hpp>
#include <enriq/parse.hpp>

namespace enriq {

int SingClass::index() const {
  switch (kind) {
    case Smooth: return 0;
    case A: case D: case E: return n;
    case E12: return 12;
    default: return 0;
  }
}

std::string SingClass::str() const {
  switch (kind) {
    case Smooth: return "Smooth";
    case A: return "A" + std::to_string(n);
    case D: return "D" + std::to_string(n) + "^" + std::to_string(r);
    case E: return "E" + std::to_string(n) + "^" + std::to_string(r);
    case E12: return "E12";
    default: return "Unclassified(" + reason + ")";
  }
}

SingClass parse_sing_class(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s == "Smooth" || s == "smooth") return SingClass::smooth();
  if (s == "E12" || s == "Ell12") return SingClass::e12();
  if (s.empty()) throw InputError("empty singularity class");
  char k = s[0];
  std::string rest = s.substr(1);
  int n = 0, r = 0;
  auto caret = rest.find('^');
  if (caret != std::string::npos) {
    n = std::stoi(rest.substr(0, caret));
    r = std::stoi(rest.substr(caret + 1));
  } else {
    n = std::stoi(rest);
  }
  if (k == 'A') return SingClass::a(n);
  if (k == 'D') return SingClass::d(n, r);
  if (k == 'E') return SingClass::e(n, r);
  throw InputError("bad singularity class: " + text);
}

SingClass image_type(const SingClass& c) {
  switch (c.kind) {
    case SingClass::Smooth:
      return SingClass::smooth();
    case SingClass::A:
      if (c.n % 2 == 0) throw MathError("A" + std::to_string(c.n) + " cannot appear on the covering");
      // A_{2n-1} -> A_{n-1}
      return (c.n == 1) ? SingClass::smooth() : SingClass::a((c.n + 1) / 2 - 1);
    case SingClass::D:
      if (c.r != 0) throw MathError(c.str() + " has positive coindex; no image rule");
      return (c.n % 2 == 0) ? SingClass::smooth() : SingClass::a(1);
    case SingClass::E:
      if (c.r != 0) throw MathError(c.str() + " has positive coindex; no image rule");
      if (c.n == 6) return SingClass::a(2);
      if (c.n == 7 || c.n == 8) return SingClass::smooth();
      throw MathError("unexpected E index " + std::to_string(c.n));
    case SingClass::E12:
      return SingClass::smooth();
    default:
      throw MathError("cannot take the image of " + c.str());
  }
}

std::vector<SingClass> lift_to_cover(const SingClass& c) {
  switch (c.kind) {
    case SingClass::A: {
      if (c.n % 2 == 0) throw MathError("A" + std::to_string(c.n) + " cannot appear on the covering");
      int n = (c.n + 1) / 2;
      return std::vector<SingClass>((std::size_t)n, SingClass::a(1));
    }
    case SingClass::D:
      if (c.r != 0) throw MathError(c.str() + " has positive coindex; no lift rule");
      if (c.n % 2 == 1) return {SingClass::d(c.n - 1, 0)};
      return {c}; // smooth image: unchanged
    case SingClass::E:
      if (c.r != 0) throw MathError(c.str() + " has positive coindex; no lift rule");
      if (c.n == 6) return {SingClass::unclassified("lift of E6^0 not exercised by any example")};
      return {c};
    case SingClass::E12:
    case SingClass::Smooth:
      return {c};
    default:
      throw MathError("cannot lift " + c.str());
  }
}

// ---------------------------------------------------------------------------
// jet utilities

namespace {

// substitute var -> var + g (g over the same registry), truncated
Poly shear(const Poly& f, std::size_t var, const Poly& g, long long N) {
  const auto& reg = f.reg();
  const auto& F = f.field();
  std::vector<Poly> images;
  for (std::size_t i = 0; i < reg->size(); ++i) images.push_back(Poly::variable(reg, F, i));
  images[var] = images[var] + g;
  return f.substitute_truncated(reg, F, images, N);
}

Poly linear_change(const Poly& f, const std::vector<std::vector<std::uint64_t>>& M, long long N) {
  // v_i -> sum_j M[i][j] v_j
  const auto& reg = f.reg();
  const auto& F = f.field();
  std::vector<Poly> images;
  for (std::size_t i = 0; i < reg->size(); ++i) {
    Poly img = Poly::zero(reg, F);
    for (std::size_t j = 0; j < reg->size(); ++j) {
      if (M[i][j] == 0) continue;
      img += Poly::variable(reg, F, j).scaled(M[i][j]);
    }
    images.push_back(std::move(img));
  }
  return f.substitute_truncated(reg, F, images, N);
}

Poly homogeneous_part(const Poly& f, long long d) {
  std::vector<Term> ts;
  for (const auto& t : f.terms())
    if (total_degree(t.exp) == d) ts.push_back(t);
  return Poly::from_terms(f.reg(), f.field(), std::move(ts));
}

std::uint64_t coeff2(const Poly& f, int a, int b, int c) {
  Expo e{a, b, c};
  return f.coeff_of(e);
}

} // namespace

QuadraticAnalysis quadratic_analysis(const Poly& jet, long long N) {
  long long mult = jet.order_at_origin();
  if (jet.is_zero() || mult != 2)
    throw MathError("multiplicity " + std::to_string(jet.is_zero() ? 0 : mult) +
                    " (expected a double point)");
  ENRIQ_CHECK(jet.reg()->size() == 3, "jet must use three variables");
  Poly f = jet;
  FieldPtr F = f.field();
  // alternating form of the quadratic part
  auto mform = [&](const Poly& g) {
    std::array<std::uint64_t, 3> m{};
    m[0] = coeff2(g, 1, 1, 0); // (0,1)
    m[1] = coeff2(g, 1, 0, 1); // (0,2)
    m[2] = coeff2(g, 0, 1, 1); // (1,2)
    return m;
  };
  auto m = mform(homogeneous_part(f, 2));
  QuadraticAnalysis out;
  if (m[0] == 0 && m[1] == 0 && m[2] == 0) {
    // perfect square: l = sum sqrt(q_ii) v_i; send l to z
    out.branch = QuadraticAnalysis::DEBranch;
    out.rank = 0;
    std::array<std::uint64_t, 3> alpha{F->sqrt(coeff2(f, 2, 0, 0)), F->sqrt(coeff2(f, 0, 2, 0)),
                                       F->sqrt(coeff2(f, 0, 0, 2))};
    // pivot: prefer z, then y, then x
    int piv = alpha[2] != 0 ? 2 : (alpha[1] != 0 ? 1 : 0);
    ENRIQ_CHECK(alpha[piv] != 0, "zero quadratic part on a double point");
    // old v_piv = inv(alpha_piv) * (z_new + sum_{i != piv} alpha_i v_i); then swap piv <-> 2
    std::vector<std::vector<std::uint64_t>> M(3, std::vector<std::uint64_t>(3, 0));
    for (int i = 0; i < 3; ++i) M[i][i] = 1;
    std::uint64_t inv = F->inv(alpha[piv]);
    for (int i = 0; i < 3; ++i) M[piv][i] = (i == piv) ? inv : F->mul(inv, alpha[i]);
    Poly g = linear_change(f, M, N);
    if (piv != 2) {
      std::vector<std::vector<std::uint64_t>> P(3, std::vector<std::uint64_t>(3, 0));
      for (int i = 0; i < 3; ++i) P[i][i] = 1;
      P[piv][piv] = 0;
      P[2][2] = 0;
      P[piv][2] = 1;
      P[2][piv] = 1;
      g = linear_change(g, P, N);
    }
    ENRIQ_CHECK(homogeneous_part(g, 2) ==
                    Poly::monomial(g.reg(), g.field(), Expo{0, 0, 2}, 1),
                "DE quadratic normalization failed");
    out.transformed = g;
    return out;
  }
  out.branch = QuadraticAnalysis::ABranch;
  out.rank = 2;
  // bring a hyperbolic pair to (x, y): pick the first nonzero cross pair
  int i0, j0;
  if (m[0] != 0) {
    i0 = 0; j0 = 1;
  } else if (m[1] != 0) {
    i0 = 0; j0 = 2;
  } else {
    i0 = 1; j0 = 2;
  }
  // permute (i0, j0, k) -> (0, 1, 2)
  int k0 = 3 - i0 - j0;
  std::vector<std::vector<std::uint64_t>> P(3, std::vector<std::uint64_t>(3, 0));
  P[i0][0] = 1;
  P[j0][1] = 1;
  P[k0][2] = 1;
  Poly g = linear_change(f, P, N);
  // scale y so the xy coefficient is 1
  {
    std::uint64_t c = coeff2(g, 1, 1, 0);
    ENRIQ_CHECK(c != 0, "lost the hyperbolic pair");
    std::vector<std::vector<std::uint64_t>> S(3, std::vector<std::uint64_t>(3, 0));
    S[0][0] = 1;
    S[1][1] = F->inv(c);
    S[2][2] = 1;
    g = linear_change(g, S, N);
  }
  // kill the xz and yz cross terms: y -> y + m_xz z, x -> x + m_yz z
  {
    std::uint64_t cxz = coeff2(g, 1, 0, 1);
    if (cxz != 0)
      g = shear(g, 1, Poly::variable(g.reg(), F, 2).scaled(cxz), N);
    std::uint64_t cyz = coeff2(g, 0, 1, 1);
    if (cyz != 0)
      g = shear(g, 0, Poly::variable(g.reg(), F, 2).scaled(cyz), N);
  }
  // quadratic part now xy + a x^2 + b y^2 + c z^2; make x isotropic
  std::uint64_t a = coeff2(g, 2, 0, 0);
  std::uint64_t b = coeff2(g, 0, 2, 0);
  if (a != 0) {
    // root of b t^2 + t + a, extending the field when irreducible
    UPoly q({a, 1, b}, F);
    auto rs = roots_in_field(q);
    if (rs.empty()) {
      FieldPtr ext = extension_field(F, 2);
      g = embed_poly(g, ext);
      const Embedding& em = get_embedding(F, ext);
      UPoly qe({em(a), 1, em(b)}, ext);
      rs = roots_in_field(qe);
      ENRIQ_CHECK(!rs.empty(), "quadratic has no root over the degree-2 extension");
      F = ext;
    }
    // y -> y + mu x
    g = shear(g, 1, Poly::variable(g.reg(), F, 0).scaled(rs.front()), N);
    ENRIQ_CHECK(coeff2(g, 2, 0, 0) == 0, "isotropy normalization failed");
    b = coeff2(g, 0, 2, 0);
  }
  if (b != 0) {
    // x -> x + b y kills the y^2 term
    g = shear(g, 0, Poly::variable(g.reg(), F, 1).scaled(b), N);
  }
  // rescale xy to 1 again (shears may have scaled it)
  {
    std::uint64_t c = coeff2(g, 1, 1, 0);
    ENRIQ_CHECK(c != 0, "lost the hyperbolic pair after shears");
    if (c != 1) {
      std::vector<std::vector<std::uint64_t>> S(3, std::vector<std::uint64_t>(3, 0));
      S[0][0] = 1;
      S[1][1] = F->inv(c);
      S[2][2] = 1;
      g = linear_change(g, S, N);
    }
  }
  out.transformed = g;
  return out;
}

SingClass split_hyperbolic(const Poly& jet, long long N) {
  Poly f = jet;
  const auto& reg = f.reg();
  const FieldPtr F = f.field();
  Expo exy{1, 1, 0};
  // F = xy + x P + y Q + S(z); one round substitutes x -> x+Q, y -> y+P and
  // roughly doubles the order of the mixed part.
  auto decompose = [&](const Poly& g, Poly& P, Poly& Q, Poly& S) {
    std::vector<Term> tp, tq, ts;
    for (const auto& t : g.terms()) {
      if (t.exp == exy) continue;
      if (t.exp[0] >= 1) {
        Expo e = t.exp;
        e[0] -= 1;
        tp.push_back(Term{std::move(e), t.coeff});
      } else if (t.exp[1] >= 1) {
        Expo e = t.exp;
        e[1] -= 1;
        tq.push_back(Term{std::move(e), t.coeff});
      } else {
        ts.push_back(t);
      }
    }
    P = Poly::from_terms(reg, F, std::move(tp));
    Q = Poly::from_terms(reg, F, std::move(tq));
    S = Poly::from_terms(reg, F, std::move(ts));
  };
  auto mixed_order = [&](const Poly& P, const Poly& Q) {
    long long o = LLONG_MAX;
    if (!P.is_zero()) o = std::min(o, P.order_at_origin() + 1);
    if (!Q.is_zero()) o = std::min(o, Q.order_at_origin() + 1);
    return o;
  };
  int guard = 0;
  while (true) {
    if (++guard > 200) throw JetInsufficient("hyperbolic splitting did not stabilize");
    Poly P(reg, F), Q(reg, F), S(reg, F);
    decompose(f, P, Q, S);
    if (P.is_zero() && Q.is_zero()) break;
    long long before = mixed_order(P, Q);
    std::vector<Poly> images{Poly::variable(reg, F, 0) + Q, Poly::variable(reg, F, 1) + P,
                             Poly::variable(reg, F, 2)};
    Poly g = f.substitute_truncated(reg, F, images, N);
    Poly P2(reg, F), Q2(reg, F), S2(reg, F);
    decompose(g, P2, Q2, S2);
    if (mixed_order(P2, Q2) > before) {
      f = g;
      continue;
    }
    // fallback: kill the single smallest bad monomial
    const Term* pick = nullptr;
    for (const auto& t : f.terms()) {
      if (t.exp == exy || (t.exp[0] == 0 && t.exp[1] == 0)) continue;
      if (!pick || total_degree(t.exp) < total_degree(pick->exp) ||
          (total_degree(t.exp) == total_degree(pick->exp) &&
           TermOrder::grevlex().greater(pick->exp, t.exp)))
        pick = &t;
    }
    ENRIQ_CHECK(pick, "splitting fallback without a bad monomial");
    Expo e = pick->exp;
    std::uint64_t c = pick->coeff;
    if (e[0] >= 1) {
      Expo u = e;
      u[0] -= 1;
      f = shear(f, 1, Poly::monomial(reg, F, u, c), N);
    } else {
      Expo u = e;
      u[1] -= 1;
      f = shear(f, 0, Poly::monomial(reg, F, u, c), N);
    }
  }
  // residual g(z)
  Poly resid = f + Poly::monomial(reg, F, exy, 1);
  for (const auto& t : resid.terms())
    ENRIQ_CHECK(t.exp[0] == 0 && t.exp[1] == 0, "splitting residual not pure in z");
  if (resid.is_zero())
    throw JetInsufficient("hyperbolic residual vanished at the working jet order");
  long long mord = resid.order_at_origin();
  return SingClass::a((int)mord - 1);
}

long long tjurina(const Poly& jet) {
  std::vector<Poly> gens{jet, jet.derivative(0), jet.derivative(1), jet.derivative(2)};
  std::vector<Poly> gs;
  for (auto& g : gens)
    if (!g.is_zero()) gs.push_back(g);
  auto local = local_multiplicity_at_origin(gs);
  if (!local) throw JetInsufficient("Tjurina number did not stabilize (non-isolated?)");
  return *local;
}

std::vector<BlowupChild> blowup_charts(const Poly& jet, long long N, int max_ext_degree) {
  const auto& reg = jet.reg();
  const FieldPtr F = jet.field();
  std::vector<BlowupChild> out;
  for (int chart = 0; chart < 3; ++chart) {
    // v_j -> v_chart * v_j (j != chart), then divide by v_chart^2
    std::vector<Poly> images;
    for (std::size_t j = 0; j < 3; ++j) {
      Poly img = Poly::variable(reg, F, j);
      if ((int)j != chart) img = img * Poly::variable(reg, F, (std::size_t)chart);
      images.push_back(img);
    }
    Poly total = jet.substitute_truncated(reg, F, images, N + 2);
    // strict transform: subtract 2 from the chart exponent
    std::vector<Term> ts;
    for (const auto& t : total.terms()) {
      Expo e = t.exp;
      ENRIQ_CHECK(e[chart] >= 2, "blow-up transform not divisible");
      e[chart] -= 2;
      ts.push_back(Term{std::move(e), t.coeff});
    }
    Poly strict = Poly::from_terms(reg, F, std::move(ts)).truncated(N - 2);
    // singular points on the exceptional divisor, restricted to this chart's
    // slice of P^2: chart x keeps all, chart y keeps x = 0, chart z keeps x = y = 0
    std::vector<Poly> gens{strict, strict.derivative(0), strict.derivative(1),
                           strict.derivative(2), Poly::variable(reg, F, (std::size_t)chart)};
    for (int prev = 0; prev < chart; ++prev) gens.push_back(Poly::variable(reg, F, (std::size_t)prev));
    SolveOutcome sol = solve_zero_dim(gens, reg, F, max_ext_degree);
    if (sol.too_small) throw ExtensionTooSmall(sol.needed_degree);
    for (const auto& p : sol.points) {
      BlowupChild ch;
      ch.chart = chart;
      ch.point = p.coords;
      ch.field = sol.field;
      {
        Poly se = embed_poly(strict, sol.field);
        std::vector<Poly> tr;
        for (std::size_t i = 0; i < 3; ++i)
          tr.push_back(Poly::variable(reg, sol.field, i) +
                       Poly::constant(reg, sol.field, p.coords[i]));
        ch.jet = se.substitute_truncated(reg, sol.field, tr, N - 2);
      }
      ch.jet_order = N - 2;
      out.push_back(std::move(ch));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// the normal-form table

namespace {

// defined below; the table constructor classifies blow-up children against
// the partially built table
SingClass classify_jet_impl(const Poly& jet, long long N, const NormalFormTable& table);

SingClass::Kind kind_of_letter(char c) {
  switch (c) {
    case 'A': return SingClass::A;
    case 'D': return SingClass::D;
    case 'E': return SingClass::E;
    default: throw InputError(std::string("bad normal form type letter: ") + c);
  }
}

} // namespace

NormalFormTable::NormalFormTable() {
  auto reg = Registry::make({"x", "y", "z"});
  FieldPtr F = Field::gf2();
  const std::string& text = embedded_asset("normal_forms.txt");
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    NormalFormEntry e;
    if (head == "E12") {
      e.cls = SingClass::e12();
    } else {
      char letter = head[0];
      int n = std::stoi(head.substr(1));
      int r = 0;
      ls >> r;
      e.cls = SingClass{kind_of_letter(letter), n, r, ""};
    }
    std::string colon;
    ls >> colon;
    if (colon != ":") throw InputError("normal_forms.txt line " + std::to_string(lineno) + ": expected ':'");
    std::string rest;
    std::getline(ls, rest);
    e.jet = parse_poly(rest, reg, F);
    entries_.push_back(std::move(e));
  }
  // compute every tau
  for (auto& e : entries_) e.tau = enriq::tjurina(e.jet);
  // (kind, n, tau) must determine r
  for (const auto& a : entries_)
    for (const auto& b : entries_) {
      if (&a == &b) continue;
      if (a.cls.kind == b.cls.kind && a.cls.n == b.cls.n && a.tau == b.tau)
        throw InternalError("normal-form table: (" + a.cls.str() + ", tau=" + std::to_string(a.tau) +
                            ") collides with " + b.cls.str());
    }
  // build the reduction table bottom-up in tau order
  std::vector<const NormalFormEntry*> order;
  for (const auto& e : entries_)
    if (e.cls.kind == SingClass::D || e.cls.kind == SingClass::E) order.push_back(&e);
  std::sort(order.begin(), order.end(), [](const NormalFormEntry* a, const NormalFormEntry* b) {
    if (a->tau != b->tau) return a->tau < b->tau;
    return a->cls < b->cls;
  });
  for (const auto* e : order) {
    long long N = 24;
    auto children = blowup_charts(e->jet, N);
    std::vector<std::string> syms;
    for (const auto& ch : children) {
      SingClass c = classify_jet_impl(ch.jet, ch.jet_order, *this);
      if (c.kind == SingClass::Unclassified)
        throw InternalError("table build: child of " + e->cls.str() + " unclassified: " + c.reason);
      syms.push_back(c.str());
    }
    std::string key = reduction_key_str(syms, e->tau);
    auto it = reduction_.find(key);
    auto val = std::make_pair(e->cls.kind, e->cls.n);
    if (it != reduction_.end() && it->second != val)
      throw InternalError("reduction table ambiguity at key " + key);
    reduction_[key] = val;
  }
}

const NormalFormTable& NormalFormTable::instance() {
  static NormalFormTable table;
  return table;
}

long long NormalFormTable::tau_of(const SingClass& c) const {
  for (const auto& e : entries_)
    if (e.cls == c) return e.tau;
  return -1;
}

std::optional<int> NormalFormTable::coindex_by_tau(SingClass::Kind kind, int n,
                                                   long long tau) const {
  for (const auto& e : entries_)
    if (e.cls.kind == kind && e.cls.n == n && e.tau == tau) return e.cls.r;
  return std::nullopt;
}

std::string NormalFormTable::reduction_key_str(const std::vector<std::string>& children,
                                               long long tau) const {
  auto sorted = children;
  std::sort(sorted.begin(), sorted.end());
  std::string key = "tau=" + std::to_string(tau) + "|";
  for (const auto& s : sorted) key += s + ",";
  return key;
}

std::optional<std::pair<SingClass::Kind, int>> NormalFormTable::reduce(
    const std::vector<std::string>& children, long long tau) const {
  auto it = reduction_.find(reduction_key_str(children, tau));
  if (it == reduction_.end()) return std::nullopt;
  return it->second;
}

namespace {

SingClass dynkin_via_blowup_impl(const Poly& jet, long long N, const NormalFormTable& table) {
  if (N < 6) throw JetInsufficient("jet order too small for blow-up recursion");
  long long tau = tjurina(jet);
  auto children = blowup_charts(jet, N);
  std::vector<std::string> syms;
  for (const auto& ch : children) {
    SingClass c = classify_jet_impl(ch.jet, ch.jet_order, table);
    if (c.kind == SingClass::Unclassified)
      return SingClass::unclassified("blow-up child unclassified: " + c.reason);
    syms.push_back(c.str());
  }
  auto red = table.reduce(syms, tau);
  if (!red)
    return SingClass::unclassified("no reduction key " + table.reduction_key_str(syms, tau));
  auto r = table.coindex_by_tau(red->first, red->second, tau);
  if (!r) return SingClass::unclassified("no coindex matches tau " + std::to_string(tau));
  return SingClass{red->first, red->second, *r, ""};
}

} // namespace

SingClass dynkin_via_blowup(const Poly& jet, long long N) {
  return dynkin_via_blowup_impl(jet, N, NormalFormTable::instance());
}

// ---------------------------------------------------------------------------
// E12 detection

namespace {

// Weierstrass division: F (unit * z^2 + lower z-order, no constant/linear part)
// rewritten as unit * (z^2 + b(x,y) z + c(x,y)).  Returns (b, c).
std::pair<Poly, Poly> weierstrass_prepare(const Poly& f, long long N) {
  const auto& reg = f.reg();
  const FieldPtr F = f.field();
  // split f = A z^2 + B z + C with B, C pure in x,y
  auto split = [&](const Poly& g, Poly& A, Poly& B, Poly& C) {
    std::vector<Term> ta, tb, tc;
    for (const auto& t : g.terms()) {
      if (t.exp[2] >= 2) {
        Expo e = t.exp;
        e[2] -= 2;
        ta.push_back(Term{std::move(e), t.coeff});
      } else if (t.exp[2] == 1) {
        Expo e = t.exp;
        e[2] = 0;
        tb.push_back(Term{std::move(e), t.coeff});
      } else {
        tc.push_back(t);
      }
    }
    A = Poly::from_terms(reg, F, std::move(ta));
    B = Poly::from_terms(reg, F, std::move(tb));
    C = Poly::from_terms(reg, F, std::move(tc));
  };
  Poly A(reg, F), B(reg, F), C(reg, F);
  split(f, A, B, C);
  Expo z0(3, 0);
  ENRIQ_CHECK(A.coeff_of(z0) != 0, "weierstrass_prepare: z^2 coefficient not a unit");
  // jet inverse of A (3 variables)
  Poly one = Poly::constant(reg, F, 1);
  Poly Ainv;
  {
    std::uint64_t a0 = A.coeff_of(z0);
    Poly mm = one + A.scaled(F->inv(a0));
    Poly acc = one;
    Poly mp = mm.truncated(N);
    long long ord = 1;
    while (!mp.is_zero() && ord <= N) {
      acc = (acc * (one + mp)).truncated(N);
      mp = (mp * mp).truncated(N);
      ord *= 2;
    }
    Ainv = acc.scaled(F->inv(a0)).truncated(N);
  }
  // divide z^2 by f: remainder r with z-degree <= 1; z^2 = q f + r
  Poly z2 = Poly::monomial(reg, F, Expo{0, 0, 2}, 1);
  Poly r = z2;
  int guard = 0;
  while (true) {
    ENRIQ_CHECK(++guard < 4096, "weierstrass division did not terminate");
    Poly rh(reg, F), rb(reg, F), rc(reg, F);
    split(r, rh, rb, rc);
    if (rh.is_zero()) break;
    // r = rh z^2 + low = rh A^-1 (A z^2) + low = rh A^-1 (f + Bz + C) + low
    Poly t = (rh * Ainv).truncated(N);
    Poly zvar = Poly::variable(reg, F, 2);
    r = (rb * zvar + rc + t * (B * zvar + C)).truncated(N + 2);
  }
  Poly rh(reg, F), b(reg, F), c(reg, F);
  {
    Poly junk(reg, F);
    split(r, junk, b, c);
    ENRIQ_CHECK(junk.is_zero(), "weierstrass remainder has z^2 terms");
  }
  // f = q^{-1} (z^2 + b z + c): the pair (b, c) is what we need
  return {b.truncated(N), c.truncated(N)};
}

// solve b = g*cx + f*cy modulo degree (k+1) in two variables x,y; returns
// (g, f) on success
std::optional<std::pair<Poly, Poly>> lift_membership(const Poly& b, const Poly& cx, const Poly& cy,
                                                     long long k) {
  const auto& reg = b.reg();
  const FieldPtr F = b.field();
  // unknown coefficient vectors for g and f over monomials in x,y
  std::vector<Expo> gmons, fmons, eqmons;
  long long ocx = cx.is_zero() ? k + 1 : cx.order_at_origin();
  long long ocy = cy.is_zero() ? k + 1 : cy.order_at_origin();
  for (int dx = 0; dx <= k; ++dx)
    for (int dy = 0; dy + dx <= k; ++dy) {
      Expo e{dx, dy, 0};
      eqmons.push_back(e);
      if (dx + dy + ocx <= k) gmons.push_back(e);
      if (dx + dy + ocy <= k) fmons.push_back(e);
    }
  std::size_t cols = gmons.size() + fmons.size();
  std::map<Expo, std::size_t> eqidx;
  for (std::size_t i = 0; i < eqmons.size(); ++i) eqidx[eqmons[i]] = i;
  // matrix rows: equations; columns: unknowns; rhs = b coefficients
  std::vector<std::vector<std::uint64_t>> Mx(eqmons.size(),
                                             std::vector<std::uint64_t>(cols + 1, 0));
  auto add_block = [&](const std::vector<Expo>& mons, const Poly& cpoly, std::size_t col0) {
    for (std::size_t j = 0; j < mons.size(); ++j) {
      for (const auto& t : cpoly.terms()) {
        Expo e = t.exp;
        e[0] += mons[j][0];
        e[1] += mons[j][1];
        if (e[0] + e[1] > k) continue;
        auto it = eqidx.find(e);
        if (it == eqidx.end()) continue;
        Mx[it->second][col0 + j] ^= 0; // keep structure explicit
        Mx[it->second][col0 + j] = F->add(Mx[it->second][col0 + j], t.coeff);
      }
    }
  };
  add_block(gmons, cx, 0);
  add_block(fmons, cy, gmons.size());
  for (const auto& t : b.terms()) {
    if (t.exp[0] + t.exp[1] > k) continue;
    auto it = eqidx.find(t.exp);
    ENRIQ_CHECK(it != eqidx.end(), "lift_membership: missing equation monomial");
    Mx[it->second][cols] = t.coeff;
  }
  // gaussian elimination
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < Mx.size(); ++col) {
    std::size_t piv = row;
    while (piv < Mx.size() && Mx[piv][col] == 0) ++piv;
    if (piv == Mx.size()) continue;
    std::swap(Mx[row], Mx[piv]);
    std::uint64_t inv = F->inv(Mx[row][col]);
    for (auto& x : Mx[row]) x = F->mul(x, inv);
    for (std::size_t i = 0; i < Mx.size(); ++i) {
      if (i == row || Mx[i][col] == 0) continue;
      std::uint64_t s = Mx[i][col];
      for (std::size_t j = col; j <= cols; ++j) Mx[i][j] = F->add(Mx[i][j], F->mul(Mx[row][j], s));
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < Mx.size(); ++i)
    if (Mx[i][cols] != 0) return std::nullopt; // inconsistent
  // read a solution (free unknowns = 0)
  std::vector<std::uint64_t> sol(cols, 0);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) sol[pivot_col[i]] = Mx[i][cols];
  std::vector<Term> gt, ft;
  for (std::size_t j = 0; j < gmons.size(); ++j)
    if (sol[j] != 0) gt.push_back(Term{gmons[j], sol[j]});
  for (std::size_t j = 0; j < fmons.size(); ++j)
    if (sol[gmons.size() + j] != 0) ft.push_back(Term{fmons[j], sol[gmons.size() + j]});
  return std::make_pair(Poly::from_terms(reg, F, std::move(gt)),
                        Poly::from_terms(reg, F, std::move(ft)));
}

} // namespace

bool detect_E12(const Poly& jet, long long N) {
  // cheap intrinsic filter
  if (tjurina(jet) != 24) return false;
  QuadraticAnalysis qa = quadratic_analysis(jet, N);
  if (qa.branch != QuadraticAnalysis::DEBranch) return false;
  Poly f = qa.transformed;
  const auto& reg = f.reg();
  FieldPtr F = f.field();
  Poly zvar = Poly::variable(reg, F, 2);
  Poly z2 = Poly::monomial(reg, F, Expo{0, 0, 2}, 1);

  // Weierstrass preparation and removal of the z-linear coefficient
  auto [b, c] = weierstrass_prepare(f, N);
  int guard = 0;
  while (!b.is_zero()) {
    if (++guard > 64) return false;
    long long k = b.order_at_origin();
    if (k > N) break;
    Poly cx = c.derivative(0);
    Poly cy = c.derivative(1);
    auto lifted = lift_membership(b, cx, cy, k);
    if (!lifted) return false; // z-coefficient not removable
    // x -> x + g z, y -> y + f z
    Poly cur = (z2 + b * zvar + c).truncated(N);
    std::vector<Poly> images{Poly::variable(reg, F, 0) + lifted->first * zvar,
                             Poly::variable(reg, F, 1) + lifted->second * zvar, zvar};
    cur = cur.substitute_truncated(reg, F, images, N);
    auto bc = weierstrass_prepare(cur, N);
    if (!bc.first.is_zero() && bc.first.order_at_origin() <= k) return false; // no progress
    b = bc.first;
    c = bc.second;
  }

  // c must have order 3 with a perfect-cube leading form
  if (c.is_zero() || c.order_at_origin() != 3) return false;
  Poly c3 = homogeneous_part(c, 3);
  std::uint64_t a0 = c3.coeff_of(Expo{3, 0, 0});
  std::uint64_t a1 = c3.coeff_of(Expo{2, 1, 0});
  std::uint64_t a2 = c3.coeff_of(Expo{1, 2, 0});
  std::uint64_t a3 = c3.coeff_of(Expo{0, 3, 0});
  if (a0 == 0) {
    // cube only if it is a3 y^3; swap x and y
    if (a1 != 0 || a2 != 0 || a3 == 0) return false;
    std::vector<Poly> sw{Poly::variable(reg, F, 1), Poly::variable(reg, F, 0), zvar};
    c = c.substitute_truncated(reg, F, sw, N);
    std::swap(a0, a3);
  } else {
    std::uint64_t lam = F->mul(a1, F->inv(a0));
    // cube test: a2 = a0 lam^2, a3 = a0 lam^3
    if (a2 != F->mul(a0, F->mul(lam, lam)) || a3 != F->mul(a0, F->mul(F->mul(lam, lam), lam)))
      return false;
    if (lam != 0) {
      std::vector<Poly> im{Poly::variable(reg, F, 0) + Poly::variable(reg, F, 1).scaled(lam),
                           Poly::variable(reg, F, 1), zvar};
      c = c.substitute_truncated(reg, F, im, N);
    }
  }
  // now c = a0 x^3 + higher; kill removable junk
  guard = 0;
  while (true) {
    if (++guard > 100000) throw JetInsufficient("E12 normalization did not stabilize");
    const Term* pick = nullptr;
    for (const auto& t : c.terms()) {
      int dx = t.exp[0], dy = t.exp[1];
      if (dx == 3 && dy == 0) continue;
      bool even_even = (dx % 2 == 0) && (dy % 2 == 0);
      bool x2_odd = (dx == 2) && (dy % 2 == 1) && dy >= 3;
      if (!even_even && !x2_odd) continue;
      if (!pick || total_degree(t.exp) < total_degree(pick->exp) ||
          (total_degree(t.exp) == total_degree(pick->exp) &&
           TermOrder::grevlex().greater(pick->exp, t.exp)))
        pick = &t;
    }
    if (!pick) break;
    int dx = pick->exp[0], dy = pick->exp[1];
    std::uint64_t cc = pick->coeff;
    if (dx % 2 == 0 && dy % 2 == 0) {
      // z-shear removes the exact square term from c
      Expo h{dx, dy, 0};
      c = c + Poly::monomial(reg, F, h, cc);
    } else {
      // x-shear against the x^3 head: x -> x + (cc/a0) y^dy
      Poly u = Poly::monomial(reg, F, Expo{0, dy, 0}, F->mul(cc, F->inv(a0)));
      std::vector<Poly> im{Poly::variable(reg, F, 0) + u, Poly::variable(reg, F, 1), zvar};
      c = c.substitute_truncated(reg, F, im, N);
    }
  }
  // certificate: c = a0 x^3 + beta y^7 + (monomial ideal members)
  if (c.coeff_of(Expo{3, 0, 0}) == 0) return false;
  if (c.coeff_of(Expo{0, 7, 0}) == 0) return false;
  static const int idealgens[5][2] = {{5, 0}, {3, 1}, {2, 3}, {1, 4}, {0, 9}};
  for (const auto& t : c.terms()) {
    int dx = t.exp[0], dy = t.exp[1];
    if ((dx == 3 && dy == 0) || (dx == 0 && dy == 7)) continue;
    bool in_ideal = false;
    for (auto& g : idealgens)
      if (dx >= g[0] && dy >= g[1]) {
        in_ideal = true;
        break;
      }
    if (!in_ideal) return false;
  }
  return true;
}

namespace {

SingClass classify_once(const Poly& jet, long long W, const NormalFormTable& table) {
  if (jet.is_zero()) return SingClass::unclassified("zero jet");
  long long ord = jet.order_at_origin();
  if (ord <= 1) return SingClass::smooth();
  QuadraticAnalysis qa = quadratic_analysis(jet, W);
  if (qa.branch == QuadraticAnalysis::ABranch) return split_hyperbolic(qa.transformed, W);
  if (detect_E12(qa.transformed, W)) return SingClass::e12();
  return dynkin_via_blowup_impl(qa.transformed, W, table);
}

// iterative deepening: run at a small working order first and grow it only
// when an insufficiency signal comes back
SingClass classify_jet_impl(const Poly& jet, long long N, const NormalFormTable& table) {
  long long W = std::min<long long>(N, 12);
  while (true) {
    try {
      return classify_once(jet.truncated(W), W, table);
    } catch (const JetInsufficient&) {
      if (W >= N) throw;
      W = std::min(N, W * 2);
    }
  }
}

} // namespace

SingClass classify_jet(const Poly& jet, long long N) {
  return classify_jet_impl(jet, N, NormalFormTable::instance());
}

SingClass classify_point(const Atlas& atlas, const SurfacePoint& p, long long jet_order) {
  long long N = jet_order;
  std::string last;
  while (N <= 96) {
    try {
      LocalModel lm = local_model(atlas, p, N);
      return classify_jet(lm.jet, N);
    } catch (const JetInsufficient& e) {
      last = e.what();
      N *= 2;
    }
  }
  return SingClass::unclassified("jet order exceeded 96: " + last);
}

} // namespace enriq
