#pragma once

#include <string>

#include "ladver/report.hpp"
#include "ladver/scenario.hpp"
#include "ladver/smt.hpp"

namespace ladver {

struct VerifyOptions {
  smt::SolverConfig solver;
  Mode mode = Mode::Checked;
  bool all_vcs = false;  // default: stop after the first confirmed error
  int jobs = 1;          // concurrent solver processes
};

/// Outcome of the whole parse → VC generation → solve → re-simulate pipeline
/// on one program. `spurious` flags the internal-inconsistency case: a sat
/// model whose re-simulation did not reproduce the claimed fault.
struct VerifyResult {
  Report report;
  bool spurious = false;
  std::string spurious_detail;

  // 0 all proved, 1 confirmed error, 2 unknown without error, 4 spurious.
  int exit_code() const;
};

// Generates all VCs, discharges them with the configured solver, and
// re-simulates each counterexample. Outcomes are in program order no matter
// how many jobs run; with jobs > 1 the outputs are byte-identical to a
// sequential run. Throws smt::SolverConfigError when the solver cannot run.
VerifyResult verify_program(const Program& p, const std::string& file_label,
                            const VerifyOptions& opts);

// What reports show for the solver: the executable's basename.
std::string solver_display_name(const std::string& executable);

}  // namespace ladver
