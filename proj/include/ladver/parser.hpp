#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ladver/ast.hpp"

namespace ladver {

struct ParseError {
  SourceSpan span;
  DiagKind kind = DiagKind::BadOperand;
  std::string message;  // always names the offending token verbatim
};

std::string to_string(const ParseError& e);

struct ParseResult {
  std::optional<Program> program;
  std::vector<ParseError> errors;
  bool ok() const { return program.has_value(); }
};

struct ParseOptions {
  AddressLimits limits;
};

// Parses the textual IL form: one step per line, ';' starts a comment,
// mnemonics case-insensitive, comparison contacts written LD=/AND</OR<> etc.
// All diagnostics are collected in one pass (a bad line is skipped, not
// fatal); `program` is set only when there are none.
ParseResult parse_program(std::string_view text, const ParseOptions& options = {});

// Re-runs the structural checks (stack balance, arity, operand sorts, device
// bounds) on an already-built Program. Programs produced by parse_program or
// Program::create always validate clean; exposed so callers can assert that
// invariant directly.
std::vector<ParseError> validate(const Program& p);

// Canonical one-step-per-line text, rungs separated by a blank line.
// Re-parsing the output yields a step-for-step identical Program.
std::string pretty_print(const Program& p);

}  // namespace ladver
