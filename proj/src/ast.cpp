#include "ladver/ast.hpp"

#include <algorithm>
#include <stdexcept>

#include "ladver/instructions.hpp"

namespace ladver {

char kind_letter(DeviceKind k) {
  switch (k) {
    case DeviceKind::X: return 'X';
    case DeviceKind::Y: return 'Y';
    case DeviceKind::M: return 'M';
    case DeviceKind::D: return 'D';
  }
  return '?';
}

std::optional<DeviceKind> kind_from_letter(char c) {
  switch (c) {
    case 'X': case 'x': return DeviceKind::X;
    case 'Y': case 'y': return DeviceKind::Y;
    case 'M': case 'm': return DeviceKind::M;
    case 'D': case 'd': return DeviceKind::D;
    default: return std::nullopt;
  }
}

std::string to_string(const Device& d) {
  return std::string(1, kind_letter(d.kind)) + std::to_string(d.index);
}

std::uint16_t AddressLimits::bound(DeviceKind k) const {
  switch (k) {
    case DeviceKind::X: return x;
    case DeviceKind::Y: return y;
    case DeviceKind::M: return m;
    case DeviceKind::D: return d;
  }
  return 0;
}

std::string to_string(const Operand& op) {
  if (op.is_constant()) return "K" + std::to_string(op.constant_value().value());
  return to_string(op.device_ref());
}

std::string to_string(CmpRel r) {
  switch (r) {
    case CmpRel::Eq: return "=";
    case CmpRel::Lt: return "<";
    case CmpRel::Gt: return ">";
    case CmpRel::Le: return "<=";
    case CmpRel::Ge: return ">=";
    case CmpRel::Ne: return "<>";
  }
  return "?";
}

bool is_load_op(StepOp op) {
  return op == StepOp::Ld || op == StepOp::Ldi || op == StepOp::CmpLd;
}

bool is_combine_op(StepOp op) {
  switch (op) {
    case StepOp::And:
    case StepOp::Ani:
    case StepOp::Or:
    case StepOp::Ori:
    case StepOp::CmpAnd:
    case StepOp::CmpOr:
      return true;
    default:
      return false;
  }
}

bool is_block_op(StepOp op) { return op == StepOp::Anb || op == StepOp::Orb; }

bool is_action_op(StepOp op) {
  switch (op) {
    case StepOp::Out:
    case StepOp::Set:
    case StepOp::Rst:
    case StepOp::Call:
      return true;
    default:
      return false;
  }
}

std::string step_name(StepOp op) {
  switch (op) {
    case StepOp::Ld: return "LD";
    case StepOp::Ldi: return "LDI";
    case StepOp::And: return "AND";
    case StepOp::Ani: return "ANI";
    case StepOp::Or: return "OR";
    case StepOp::Ori: return "ORI";
    case StepOp::Anb: return "ANB";
    case StepOp::Orb: return "ORB";
    case StepOp::CmpLd: return "LD";
    case StepOp::CmpAnd: return "AND";
    case StepOp::CmpOr: return "OR";
    case StepOp::Out: return "OUT";
    case StepOp::Set: return "SET";
    case StepOp::Rst: return "RST";
    case StepOp::Call: return "CALL";
  }
  return "?";
}

std::string to_string(const StepLoc& loc) {
  return "rung " + std::to_string(loc.rung_index + 1) + ", step " +
         std::to_string(loc.step_index + 1) + ", line " +
         std::to_string(loc.source_line);
}

std::string to_string(DiagKind k) {
  switch (k) {
    case DiagKind::UnknownMnemonic: return "UnknownMnemonic";
    case DiagKind::BadOperand: return "BadOperand";
    case DiagKind::ArityMismatch: return "ArityMismatch";
    case DiagKind::SortMismatch: return "SortMismatch";
    case DiagKind::StackImbalance: return "StackImbalance";
    case DiagKind::IndexOutOfRange: return "IndexOutOfRange";
    case DiagKind::ConstantOutOfRange: return "ConstantOutOfRange";
  }
  return "?";
}

Step Step::contact(StepOp op, Device d) {
  Step s;
  s.op = op;
  s.operands = {Operand::device(d)};
  return s;
}

Step Step::compare(StepOp op, CmpRel rel, Operand a, Operand b) {
  Step s;
  s.op = op;
  s.rel = rel;
  s.operands = {std::move(a), std::move(b)};
  return s;
}

Step Step::coil(StepOp op, Device d) {
  Step s;
  s.op = op;
  s.operands = {Operand::device(d)};
  return s;
}

Step Step::call(std::string name, std::vector<Operand> operands) {
  Step s;
  s.op = StepOp::Call;
  s.callee = std::move(name);
  s.operands = std::move(operands);
  return s;
}

bool same_step(const Step& a, const Step& b) {
  return a.op == b.op && a.rel == b.rel && a.callee == b.callee &&
         a.operands == b.operands;
}

// ---------------------------------------------------------------------------
// Program construction: rung grouping plus the full shape validation.

Program::BuildResult Program::create(std::vector<Step> steps,
                                     AddressLimits limits) {
  std::vector<BuildIssue> issues;

  for (std::size_t i = 0; i < steps.size(); ++i) {
    auto step_issues = check_step_shape(steps[i], static_cast<int>(i), limits);
    issues.insert(issues.end(), step_issues.begin(), step_issues.end());
  }

  // The IL accumulator-stack discipline. A rung starts at a load when no rung
  // is open or the open rung already fired its action steps; the stack must
  // hold exactly one entry whenever an action executes and at rung end.
  std::vector<Rung> rungs;
  int stack = 0;
  bool action_seen = false;
  int rung_start = -1;

  auto close_rung = [&](int end, int at_step) {
    if (rung_start < 0) return;
    if (!action_seen && stack != 1) {
      issues.push_back(BuildIssue{
          at_step, DiagKind::StackImbalance,
          "rung ends with " + std::to_string(stack) +
              " accumulator entries; expected exactly 1"});
    }
    rungs.push_back(Rung{rung_start, end});
    rung_start = -1;
    stack = 0;
    action_seen = false;
  };

  for (std::size_t i = 0; i < steps.size(); ++i) {
    const int pos = static_cast<int>(i);
    const StepOp op = steps[i].op;
    if (is_load_op(op)) {
      if (rung_start < 0 || action_seen) {
        close_rung(pos, pos > 0 ? pos - 1 : 0);
        rung_start = pos;
      }
      ++stack;
    } else if (is_combine_op(op)) {
      if (rung_start < 0 || action_seen || stack < 1) {
        issues.push_back(BuildIssue{pos, DiagKind::StackImbalance,
                                    step_name(op) +
                                        " has no accumulator to combine with"});
        if (rung_start < 0) {
          rung_start = pos;  // open a recovery rung so later checks make sense
          stack = 1;
        }
      }
    } else if (is_block_op(op)) {
      if (stack < 2) {
        issues.push_back(BuildIssue{
            pos, DiagKind::StackImbalance,
            step_name(op) + " needs two stacked blocks, have " +
                std::to_string(std::max(stack, 0))});
        if (rung_start < 0) {
          rung_start = pos;
          stack = 1;
        }
      } else {
        --stack;
      }
    } else {  // action step
      if (rung_start < 0 || stack != 1) {
        issues.push_back(BuildIssue{
            pos, DiagKind::StackImbalance,
            (steps[i].op == StepOp::Call ? steps[i].callee : step_name(op)) +
                " requires exactly 1 accumulator entry, have " +
                std::to_string(std::max(stack, 0))});
        if (rung_start < 0) {
          rung_start = pos;
          stack = 1;
        }
      }
      action_seen = true;
    }
  }
  close_rung(static_cast<int>(steps.size()),
             steps.empty() ? 0 : static_cast<int>(steps.size()) - 1);

  if (!issues.empty()) {
    return BuildResult{std::nullopt, std::move(issues)};
  }

  Program p;
  p.limits_ = limits;
  p.steps_ = std::move(steps);
  p.rungs_ = std::move(rungs);
  for (std::size_t r = 0; r < p.rungs_.size(); ++r) {
    for (int i = p.rungs_[r].first; i < p.rungs_[r].end; ++i) {
      p.steps_[i].loc.rung_index = static_cast<int>(r);
    }
  }
  for (std::size_t i = 0; i < p.steps_.size(); ++i) {
    p.steps_[i].loc.step_index = static_cast<int>(i);
    p.steps_[i].loc.source_line = p.steps_[i].span.line;
  }

  std::vector<Device> devices;
  for (const Step& s : p.steps_) {
    for (const Operand& op : s.operands) {
      if (op.is_device()) devices.push_back(op.device_ref());
    }
  }
  std::sort(devices.begin(), devices.end());
  devices.erase(std::unique(devices.begin(), devices.end()), devices.end());
  p.devices_used_ = std::move(devices);

  return BuildResult{std::move(p), {}};
}

int step_count(const Program& p) {
  return static_cast<int>(p.steps().size());
}

}  // namespace ladver
