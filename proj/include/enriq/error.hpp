#ifndef ENRIQ_ERROR_HPP
#define ENRIQ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace enriq {

// Bad user input (files, CLI arguments, malformed polynomials).  CLI exit code 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated internal invariant (e.g. an ambiguous classifier table).  CLI exit code 3.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

// Domain errors on otherwise well-formed data (inverting zero, reducible modulus, ...).
struct MathError : std::runtime_error {
  explicit MathError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation needs a field extension beyond the allowed bound.
struct ExtensionTooSmall : std::runtime_error {
  int needed;
  explicit ExtensionTooSmall(int needed_degree)
      : std::runtime_error("solutions require larger extension (degree " +
                           std::to_string(needed_degree) + ")"),
        needed(needed_degree) {}
};

// The working jet order was too small for a classification step.
struct JetInsufficient : std::runtime_error {
  explicit JetInsufficient(const std::string& msg) : std::runtime_error(msg) {}
};

#define ENRIQ_CHECK(cond, msg) \
  do { \
    if (!(cond)) throw ::enriq::InternalError(std::string("internal: ") + (msg)); \
  } while (0)

} // namespace enriq

#endif
