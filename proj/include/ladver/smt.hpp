#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ladver/symexpr.hpp"
#include "ladver/vcgen.hpp"

namespace ladver::smt {

struct SolverConfig {
  std::string executable = "z3";        // resolved by the caller (flag > env)
  std::vector<std::string> extra_args;
  int timeout_ms = 10000;               // per VC; values below 100 are raised to 100
  bool produce_models = true;           // always true in verify mode
};

/// Assignment extracted from a sat answer: version-0 variable name -> value.
struct Model {
  std::map<std::string, sym::Value> values;

  friend bool operator==(const Model&, const Model&) = default;
};

enum class UnknownReason { Timeout, SolverReported, ProtocolError };

std::string to_string(UnknownReason r);

struct SolverVerdict {
  enum class Kind { Sat, Unsat, Unknown };

  Kind kind = Kind::Unknown;
  Model model;  // Sat only; keys are a subset of the declared variables
  UnknownReason unknown_reason = UnknownReason::ProtocolError;
  std::string detail;  // diagnostic context for Unknown verdicts

  static SolverVerdict sat(Model m);
  static SolverVerdict unsat();
  static SolverVerdict unknown(UnknownReason r, std::string detail = {});
};

/// The solver could not be run at all (missing executable, spawn failure).
/// A configuration problem, reported distinctly from Unknown verdicts.
struct SolverConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Formula contains an operator with no SMT-LIB mapping. Unreachable through
/// the public pipeline; existence of this error marks it as a bug, not input.
struct UnsupportedTerm : std::logic_error {
  using std::logic_error::logic_error;
};

// Complete SMT-LIB2 script for one VC: produce-models, one declare-const per
// version-0 variable (words get Word16 range asserts), the assertion,
// check-sat, get-model. No set-logic line: the solver's auto mode handles the
// div/mod-heavy fragment best (see emit_smtlib for the measurements).
std::string emit_smtlib(const Vc& vc);

// Runs one VC through the external solver process.
SolverVerdict check(const Vc& vc, const SolverConfig& cfg);

/// Raw subprocess run, exposed for tests (stub solvers, batched scripts).
struct RunResult {
  bool timed_out = false;
  int exit_code = 0;  // negative = terminated by that signal
  std::string out;
  std::string err;
};

RunResult run_solver(const std::string& script, const SolverConfig& cfg);

// Parses solver stdout: a sat/unsat/unknown verdict line plus, for sat, the
// get-model S-expressions (define-fun forms, negative literals as (- n)).
SolverVerdict parse_solver_output(const std::string& text);

// Canonical model text and its inverse; parse_model(print_model(m)) == m.
std::string print_model(const Model& m);
std::optional<Model> parse_model(const std::string& text);

}  // namespace ladver::smt
