#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ladver/scenario.hpp"
#include "ladver/smt.hpp"
#include "ladver/vcgen.hpp"

namespace ladver {

inline constexpr const char* kToolName = "ladder-verify";
inline constexpr const char* kToolVersion = "0.1.0";

// Exact hues for the rendered ladder; the source text names them only.
inline constexpr const char* kColorActive = "#1565C0";    // blue: wire active
inline constexpr const char* kColorInactive = "#9E9E9E";  // grey: wire off
inline constexpr const char* kColorFault = "#C62828";     // red: faulting call

enum class OutcomeStatus { Proved, Error, Unknown, Skipped };

std::string to_string(OutcomeStatus s);

/// Result of checking one VC. `duration_ms` is kept for programmatic use
/// only — no renderer emits it, so identical runs give identical bytes.
struct Outcome {
  Vc vc;
  OutcomeStatus status = OutcomeStatus::Skipped;
  std::optional<Scenario> scenario;  // status == Error
  std::optional<smt::UnknownReason> unknown_reason;
  std::string unknown_detail;
  double duration_ms = 0.0;
};

struct Report {
  std::string file;  // input path as the user gave it
  int step_count = 0;
  int rung_count = 0;
  Mode mode = Mode::Checked;
  std::string solver_name;  // basename of the solver executable
  std::vector<Outcome> outcomes;  // program order, independent of --jobs

  // The program itself, for step text in trace rendering. Not serialized;
  // absent after report_from_json, in which case traces show locations only.
  std::optional<Program> program;

  bool any_error() const;
  bool any_unknown() const;
};

// Plain-text rendering: per error, the location, the verbatim reason label,
// the initial valuation (defaulted devices flagged), and the re-simulated
// trace with wire states and writes.
std::string render_text(const Report& r);

// Machine-readable rendering; schema documented in docs/schema.md,
// version field "schema": 1, fixed key order.
std::string render_json(const Report& r);

// Inverse of render_json over the rendered fields (VC formulas and solver
// models are not serialized, so the returned Vcs carry locations and labels
// but null formulas). Throws std::invalid_argument on malformed input.
Report report_from_json(const std::string& json_text);

// Field-by-field equality over everything render_json emits.
bool report_equivalent(const Report& a, const Report& b);

// Deterministic SVG of the whole program with the trace's wire colors,
// device values above the elements, and the faulting call stroked red.
std::string render_svg(const Program& p, const Trace& trace);
std::string render_svg(const Program& p, const Scenario& s);

// Standalone HTML page embedding the SVG plus the textual scenario.
std::string render_html(const Program& p, const Scenario& s,
                        const std::string& file_label);

// Helpers shared by the text renderer and the CLI simulate command.
std::string render_init_lines(const InitialValuation& init,
                              const std::string& indent);
std::string render_trace_lines(const Program& p, const Trace& trace,
                               const std::string& indent);

// One step as source text ("BCD D0 D1"), shared by renderers.
std::string step_text(const Step& s);

}  // namespace ladver
