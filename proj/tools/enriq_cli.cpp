#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <enriq/extension.hpp>
#include <enriq/liealg.hpp>
#include <enriq/parse.hpp>
#include <enriq/verify.hpp>

namespace {

using namespace enriq;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ExampleCase load_case(const std::string& arg) {
  for (const auto& ex : builtin_registry())
    if (ex.name == arg) return ex;
  return parse_input(read_file(arg), arg);
}

int run_verify_all(const std::string& format, const VerifyOptions& opt) {
  SummaryReport rep = verify_all(opt);
  std::cout << (format == "json" ? emit_json(rep, opt) : emit_text(rep, opt));
  return rep.all_pass ? 0 : 1;
}

int run_verify(const std::string& target, const std::string& format, const VerifyOptions& opt) {
  ExampleCase ex = load_case(target);
  CaseReport rep = run_example(ex, opt);
  std::cout << (format == "json" ? emit_json(rep, opt) : emit_text(rep, opt));
  return rep.pass ? 0 : 1;
}

int run_sing(const std::string& target, const VerifyOptions& opt) {
  ExampleCase ex = load_case(target);
  auto pts = singular_points(ex.atlas, opt.max_ext_degree, opt.seed);
  std::cout << ex.name << ": " << pts.size() << " singular point(s)\n";
  for (const auto& p : pts) {
    SingClass c = classify_point(ex.atlas, p);
    std::cout << "  " << p.str(ex.atlas) << " : " << c.str() << "\n";
  }
  return 0;
}

int run_lie(const std::string& target) {
  ExampleCase ex = load_case(target);
  LieStructure s = build_structure(ex.atlas, ex.d1, ex.d2);
  const auto& F = ex.atlas.field;
  std::cout << ex.name << ":\n";
  std::cout << "  [" << ex.d1_name << "," << ex.d2_name << "] = (" << F->to_string(s.b1) << ","
            << F->to_string(s.b2) << ")\n";
  std::cout << "  " << ex.d1_name << "^[2] = (" << F->to_string(s.s11) << "," << F->to_string(s.s12)
            << ")\n";
  std::cout << "  " << ex.d2_name << "^[2] = (" << F->to_string(s.s21) << "," << F->to_string(s.s22)
            << ")\n";
  std::cout << "  type (" << classify_type(s) << ")\n";
  LieLines lines = p_closed_lines(s);
  if (lines.all_p_closed) {
    std::cout << "  all lines p-closed";
    if (lines.all_additive) {
      std::cout << ", all additive\n";
    } else {
      std::cout << "; additive locus:";
      for (const auto& l : lines.lines) std::cout << " " << l.str();
      std::cout << "\n";
    }
  } else {
    std::cout << "  p-closed lines:";
    for (const auto& l : lines.lines)
      std::cout << " " << l.str() << (l.multiplicative ? "(mult)" : "(add)");
    std::cout << "\n";
  }
  return 0;
}

int run_fix(const std::string& target, const std::string& coeffs) {
  ExampleCase ex = load_case(target);
  auto comma = coeffs.find(',');
  if (comma == std::string::npos) throw InputError("--coeffs expects e1,e2");
  FieldPtr F = ex.atlas.field;
  auto noreg = Registry::make({});
  auto parse_elt = [&](const std::string& s, const FieldPtr& field) {
    Poly p = parse_poly(s, noreg, field);
    Expo z;
    return p.is_zero() ? 0 : p.coeff_of(z);
  };
  std::string s1 = coeffs.substr(0, comma), s2 = coeffs.substr(comma + 1);
  bool needs_w = s1.find('w') != std::string::npos || s2.find('w') != std::string::npos;
  ExampleCase cx = ex;
  if (needs_w && F->degree() < 2) {
    F = extension_field(F, 2);
    cx = coerce_case(ex, F);
  }
  FieldElt e1(parse_elt(s1, F), F), e2(parse_elt(s2, F), F);
  Derivation d = linear_combination(cx.atlas, e1, cx.d1, e2, cx.d2);
  std::cout << cx.name << " with D = (" << e1.str() << ")*" << cx.d1_name << " + (" << e2.str()
            << ")*" << cx.d2_name << ":\n";
  bool fpf = true;
  for (std::size_t c = 0; c < cx.atlas.charts.size(); ++c) {
    auto gens = fix_ideal(cx.atlas, d, c);
    Groebner gb = groebner_compute(gens, TermOrder::grevlex());
    std::cout << "  chart " << cx.atlas.charts[c].name << ": fixed ideal = (";
    for (std::size_t i = 0; i < gb.basis.size(); ++i) {
      if (i) std::cout << ", ";
      std::cout << gb.basis[i].str();
    }
    std::cout << ")\n";
    if (!contains_one(gb)) fpf = false;
  }
  std::cout << "  fixed-point-free: " << (fpf ? "yes" : "no") << "\n";
  return 0;
}

int run_classify_jet(const std::string& path) {
  std::string text = read_file(path);
  FieldPtr F = Field::gf2();
  std::istringstream in(text);
  std::string line, expr;
  long long order = 24;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "field") {
      std::string spec;
      std::getline(ls, spec);
      spec.erase(0, spec.find_first_not_of(" \t"));
      F = (spec == "gf2") ? Field::gf2() : Field::make(parse_gf2_modulus(spec));
    } else if (kw == "order") {
      ls >> order;
    } else {
      expr += line + " ";
    }
  }
  auto reg = Registry::make({"x", "y", "z"});
  Poly jet = parse_poly(expr, reg, F);
  SingClass c = classify_jet(jet, order);
  std::cout << c.str() << "\n";
  return c.kind == SingClass::Unclassified ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact characteristic-2 calculus on canonical coverings of Enriques surfaces"};
  app.require_subcommand(1);

  std::string format = "text";
  VerifyOptions opt;
  bool serial = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--seed", opt.seed, "seed for the factorization splitter");
    cmd->add_option("--max-ext-degree", opt.max_ext_degree, "field extension budget");
    cmd->add_flag("--timings", opt.timings, "include wall-clock timings in reports");
    cmd->add_flag("--serial", serial, "disable the parallel kernels");
  };

  auto* all = app.add_subcommand("verify-all", "verify every builtin example");
  add_common(all);

  std::string target;
  auto* verify = app.add_subcommand("verify", "verify one example (builtin name or file)");
  verify->add_option("target", target, "builtin name or input file")->required();
  add_common(verify);

  std::string sing_target;
  auto* sing = app.add_subcommand("sing", "singularity inventory of a surface");
  sing->add_option("target", sing_target)->required();
  add_common(sing);

  std::string lie_target;
  auto* lie = app.add_subcommand("lie", "restricted Lie structure of the derivation basis");
  lie->add_option("target", lie_target)->required();

  std::string fix_target, coeffs;
  auto* fix = app.add_subcommand("fix", "fixed ideal of e1*D1 + e2*D2");
  fix->add_option("target", fix_target)->required();
  fix->add_option("--coeffs", coeffs, "e1,e2 (field elements in w)")->required();

  std::string jet_path;
  auto* cj = app.add_subcommand("classify-jet", "classify a raw three-variable jet");
  cj->add_option("file", jet_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (serial) enriq::Poly::set_parallel(false);
    if (all->parsed()) return run_verify_all(format, opt);
    if (verify->parsed()) return run_verify(target, format, opt);
    if (sing->parsed()) return run_sing(sing_target, opt);
    if (lie->parsed()) return run_lie(lie_target);
    if (fix->parsed()) return run_fix(fix_target, coeffs);
    if (cj->parsed()) return run_classify_jet(jet_path);
  } catch (const enriq::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const enriq::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
