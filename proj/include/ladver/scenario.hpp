#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ladver/instructions.hpp"
#include "ladver/smt.hpp"
#include "ladver/vcgen.hpp"

namespace ladver {

/// Scan-start device values reconstructed from a solver model. Covers every
/// device the program mentions; devices the model left out get 0/false and
/// are listed in `defaulted` so reports can flag them as arbitrary.
struct InitialValuation {
  DeviceState state;
  std::set<Device> defaulted;

  friend bool operator==(const InitialValuation&, const InitialValuation&) = default;
};

struct TraceStep {
  StepLoc location;
  bool acc_active = false;  // wire state at this point of the rung
  std::vector<Write> writes;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

/// Concrete re-execution of one scan: all intermediate wire states and
/// writes, stopping at the fault (inclusive) when one occurs.
struct Trace {
  InitialValuation init;
  std::vector<TraceStep> steps;
  std::optional<Fault> fault;
};

enum class ScenarioStatus { Confirmed, Spurious };

/// A solver counterexample validated (or refuted) by concrete simulation.
/// Spurious means the model did not reproduce the VC's fault — an internal
/// encoding inconsistency, never a user-facing result.
struct Scenario {
  Vc vc;
  Trace trace;
  ScenarioStatus status = ScenarioStatus::Spurious;
};

struct ModelSortMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Splits an SMT variable name back into its SSA identity ("D0_1" -> D0 v1).
std::optional<SsaVar> parse_ssa_name(const std::string& name);

// Interprets a model as scan-start values. Throws ModelSortMismatch when the
// model assigns a boolean to a word device, an integer to a bit device, or a
// value outside the 16-bit range.
InitialValuation model_to_initial(const smt::Model& model, const Program& p);

// Executes one scan concretely with the IL accumulator stack; coil and call
// steps go through instructions::concrete_eval. Faults are data, not errors.
Trace simulate_scan(const Program& p, const InitialValuation& init,
                    Mode mode = Mode::Checked);

// Pipeline steps 4+5: model -> init -> re-simulation -> validated scenario.
// Confirmed iff the trace faults at the VC's location with the VC's reason.
Scenario build_scenario(const Vc& vc, const smt::Model& model,
                        const Program& p, Mode mode = Mode::Checked);

// Parses the CLI init grammar "X1=1,D0=9999" (bits 0/1, words decimal).
// Unknown devices are allowed; bad syntax yields an explanatory error.
InitialValuation parse_init_string(const std::string& text, const Program& p);

}  // namespace ladver
