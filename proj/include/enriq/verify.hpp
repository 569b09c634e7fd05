#ifndef ENRIQ_VERIFY_HPP
#define ENRIQ_VERIFY_HPP

#include <enriq/input.hpp>
#include <enriq/liealg.hpp>

namespace enriq {

struct VerifyOptions {
  int max_ext_degree = 4;
  std::uint64_t seed = 0;
  bool timings = false;
};

struct CheckResult {
  std::string id;      // C1..C10, T1, T2
  std::string name;
  std::string status;  // pass | fail | skip | info
  std::string detail;
};

struct CaseReport {
  std::string name;
  std::vector<CheckResult> checks;
  bool pass = true;
  long long elapsed_ms = 0;
  std::vector<std::string> fields_used;

  void add(const std::string& id, const std::string& nm, bool ok, const std::string& detail = "");
  void skip(const std::string& id, const std::string& nm, const std::string& detail);
  void info(const std::string& id, const std::string& nm, const std::string& detail);
};

struct SummaryReport {
  std::vector<CaseReport> cases;
  bool all_pass = true;
  std::uint64_t seed = 0;
  // configuration -> verdict table (reproduces the corollary)
  std::vector<std::pair<std::string, std::string>> configuration_verdicts;
};

// The builtin corpus: the ten examples, parsed from the embedded assets.
const std::vector<ExampleCase>& builtin_registry();

// A builtin case by name; throws InputError when absent.
const ExampleCase& builtin_case(const std::string& name);

// Example with every coefficient embedded into ext (atlas and derivations).
ExampleCase coerce_case(const ExampleCase& ex, const FieldPtr& ext);

CaseReport run_example(const ExampleCase& ex, const VerifyOptions& opt = {});
SummaryReport verify_all(const VerifyOptions& opt = {});

std::string emit_text(const CaseReport& rep, const VerifyOptions& opt = {});
std::string emit_text(const SummaryReport& rep, const VerifyOptions& opt = {});
std::string emit_json(const CaseReport& rep, const VerifyOptions& opt = {});
std::string emit_json(const SummaryReport& rep, const VerifyOptions& opt = {});

} // namespace enriq

#endif
