#include <enriq/assets.hpp>
#include <enriq/verify.hpp>

#include <map>
#include <mutex>

#include <enriq/extension.hpp>

#include "enriq_data.inc"

namespace enriq {

const std::string& embedded_asset(const std::string& name) {
  static std::map<std::string, std::string> table = [] {
    std::map<std::string, std::string> t;
    for (const auto& e : kEmbeddedData) t[e.name] = e.text;
    return t;
  }();
  auto it = table.find(name);
  if (it == table.end()) throw InternalError("missing embedded asset: " + name);
  return it->second;
}

std::vector<std::string> embedded_asset_names() {
  std::vector<std::string> out;
  for (const auto& e : kEmbeddedData) out.push_back(e.name);
  return out;
}

const std::vector<ExampleCase>& builtin_registry() {
  static std::vector<ExampleCase> cases = [] {
    std::vector<ExampleCase> out;
    // registry order fixed by file naming
    const char* files[] = {
        "a_12a1.surf",  "b_8a1d4.surf", "c_6a1d6.surf",   "d_5a1e7.surf", "e_3d4.surf",
        "f_d4d8.surf",  "g_d4e8.surf",  "h_d12.surf",     "i_d4d8same.surf", "j_e12.surf",
    };
    for (const char* f : files) out.push_back(parse_input(embedded_asset(f), f));
    return out;
  }();
  return cases;
}

const ExampleCase& builtin_case(const std::string& name) {
  for (const auto& ex : builtin_registry())
    if (ex.name == name) return ex;
  throw InputError("unknown builtin example: " + name);
}

ExampleCase coerce_case(const ExampleCase& ex, const FieldPtr& ext) {
  ExampleCase out;
  out.name = ex.name;
  out.atlas = ex.atlas.coerced(ext);
  auto coerce_derivation = [&](const Derivation& d) {
    Derivation o;
    o.name = d.name;
    o.images.resize(d.images.size());
    for (std::size_t c = 0; c < d.images.size(); ++c)
      for (const auto& im : d.images[c]) o.images[c].push_back(embed_rat(im, ext));
    return o;
  };
  out.d1 = coerce_derivation(ex.d1);
  out.d2 = coerce_derivation(ex.d2);
  out.d1_name = ex.d1_name;
  out.d2_name = ex.d2_name;
  out.expect = ex.expect; // predicates embed on evaluation
  return out;
}

} // namespace enriq
