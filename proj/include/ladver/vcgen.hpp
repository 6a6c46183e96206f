#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ladver/ast.hpp"
#include "ladver/instructions.hpp"
#include "ladver/symexpr.hpp"

namespace ladver {

/// One SSA instance of a device; version 0 is the value at scan start.
struct SsaVar {
  Device device;
  int version = 0;

  friend bool operator==(const SsaVar&, const SsaVar&) = default;
};

// SMT-facing name, e.g. "D0_1", "X1_0".
std::string ssa_name(const SsaVar& v);

/// Definition introduced by a coil or call step: var := expr.
struct Def {
  SsaVar var;
  sym::Ref expr;
  int step_index = 0;  // step that introduced the definition
};

/// Symbolic machine state threaded through one scan.
struct SymState {
  std::map<Device, int> versions;  // current version per device (absent = 0)
  std::shared_ptr<std::vector<Def>> defs = std::make_shared<std::vector<Def>>();
  std::vector<sym::Ref> acc_stack;  // symbolic IL accumulator stack

  SsaVar current(const Device& d) const;
  // Expression for the device's current value (a Var of the right sort).
  sym::Ref read(const Device& d) const;
  // Appends a def for the next version of d and makes it current.
  SsaVar define(const Device& d, sym::Ref expr, int step_index);
};

/// One labeled verification condition. The formula ranges over SSA variables
/// and is closed under the first `defs_prefix` entries of `defs`; it is
/// satisfiable iff some initial valuation reaches the step with the wire
/// active, every earlier contract obligation intact, and this contract's
/// domain condition false.
struct Vc {
  sym::Ref formula;
  std::shared_ptr<const std::vector<Def>> defs;
  std::size_t defs_prefix = 0;
  StepLoc location;
  std::string instr;   // instruction name, e.g. "BCD"
  ReasonLabel reason;  // e.g. "BCD: out of [0...9999] range call"
  int pre_index = 0;   // position among the instruction's preconditions
};

struct ScanResult {
  std::vector<Vc> vcs;
  SymState final_state;
};

// Symbolically executes one scan in program order under single-state
// assignment: logic steps update the accumulator stack, coils and calls
// define new device versions (call effects guarded by the wire), and every
// instruction precondition yields one VC.
ScanResult run_scan_symbolic(const Program& p, Mode mode = Mode::Checked);

// Closes a VC over its definitions: the result mentions version-0 variables
// only, with let-bindings keeping the size linear in the used defs.
sym::Ref inline_vc(const Vc& vc);

// Debug/text form used by `verify --dump-vcs`.
std::string describe(const Vc& vc);

}  // namespace ladver
