#include "ladver/vcgen.hpp"

#include <sstream>
#include <stdexcept>

namespace ladver {

std::string ssa_name(const SsaVar& v) {
  return to_string(v.device) + "_" + std::to_string(v.version);
}

SsaVar SymState::current(const Device& d) const {
  auto it = versions.find(d);
  return SsaVar{d, it == versions.end() ? 0 : it->second};
}

sym::Ref SymState::read(const Device& d) const {
  return sym::var(ssa_name(current(d)),
                  is_bit_kind(d.kind) ? sym::Sort::Bool : sym::Sort::Int);
}

SsaVar SymState::define(const Device& d, sym::Ref expr, int step_index) {
  int next = current(d).version + 1;
  versions[d] = next;
  SsaVar v{d, next};
  defs->push_back(Def{v, std::move(expr), step_index});
  return v;
}

namespace {

// Word-source operand as a symbolic term at the current state.
sym::Ref operand_expr(const Operand& op, const SymState& st) {
  if (op.is_constant()) return sym::int_const(op.constant_value().value());
  return st.read(op.device_ref());
}

sym::Ref pop(std::vector<sym::Ref>& stack) {
  sym::Ref top = stack.back();
  stack.pop_back();
  return top;
}

}  // namespace

ScanResult run_scan_symbolic(const Program& p, Mode mode) {
  const Registry& reg = registry(mode);
  ScanResult result;
  SymState& st = result.final_state;

  // Path knowledge carried into each VC: for every contract obligation
  // already emitted, the guarded fact that it held (wire → domain). A model
  // of a later VC therefore cannot abort the scan at an earlier step, which
  // is what makes every counterexample re-simulate to the claimed fault.
  std::vector<sym::Ref> assumptions;

  for (std::size_t i = 0; i < p.steps().size(); ++i) {
    const Step& step = p.steps()[i];
    const int step_index = static_cast<int>(i);
    switch (step.op) {
      case StepOp::Ld:
        st.acc_stack.push_back(st.read(step.operands[0].device_ref()));
        break;
      case StepOp::Ldi:
        st.acc_stack.push_back(
            sym::not_of(st.read(step.operands[0].device_ref())));
        break;
      case StepOp::And:
        st.acc_stack.back() = sym::and_of(
            {st.acc_stack.back(), st.read(step.operands[0].device_ref())});
        break;
      case StepOp::Ani:
        st.acc_stack.back() = sym::and_of(
            {st.acc_stack.back(),
             sym::not_of(st.read(step.operands[0].device_ref()))});
        break;
      case StepOp::Or:
        st.acc_stack.back() = sym::or_of(
            {st.acc_stack.back(), st.read(step.operands[0].device_ref())});
        break;
      case StepOp::Ori:
        st.acc_stack.back() = sym::or_of(
            {st.acc_stack.back(),
             sym::not_of(st.read(step.operands[0].device_ref()))});
        break;
      case StepOp::CmpLd:
        st.acc_stack.push_back(sym::compare(rel_tag(step.rel),
                                            operand_expr(step.operands[0], st),
                                            operand_expr(step.operands[1], st)));
        break;
      case StepOp::CmpAnd:
        st.acc_stack.back() = sym::and_of(
            {st.acc_stack.back(),
             sym::compare(rel_tag(step.rel), operand_expr(step.operands[0], st),
                          operand_expr(step.operands[1], st))});
        break;
      case StepOp::CmpOr:
        st.acc_stack.back() = sym::or_of(
            {st.acc_stack.back(),
             sym::compare(rel_tag(step.rel), operand_expr(step.operands[0], st),
                          operand_expr(step.operands[1], st))});
        break;
      case StepOp::Anb: {
        sym::Ref b = pop(st.acc_stack);
        st.acc_stack.back() = sym::and_of({st.acc_stack.back(), std::move(b)});
        break;
      }
      case StepOp::Orb: {
        sym::Ref b = pop(st.acc_stack);
        st.acc_stack.back() = sym::or_of({st.acc_stack.back(), std::move(b)});
        break;
      }
      case StepOp::Out:
      case StepOp::Set:
      case StepOp::Rst: {
        const Device& dst = step.operands[0].device_ref();
        sym::Ref value =
            coil_sym(step.op, st.acc_stack.back(), st.read(dst));
        st.define(dst, std::move(value), step_index);
        break;
      }
      case StepOp::Call: {
        const Instruction* instr = reg.lookup(step.callee);
        if (instr == nullptr || instr->kind != InstrKind::WordOp) {
          throw std::logic_error("run_scan_symbolic: unknown instruction " +
                                 step.callee);
        }
        const sym::Ref acc = st.acc_stack.back();

        SymArgs args;
        const Device* dst = nullptr;
        for (std::size_t k = 0; k < instr->signature.operands.size(); ++k) {
          switch (instr->signature.operands[k].role) {
            case OperandRole::WordSrc:
              args.srcs.push_back(operand_expr(step.operands[k], st));
              break;
            case OperandRole::WordDst:
              dst = &step.operands[k].device_ref();
              break;
            case OperandRole::BitDst:
              break;
          }
        }
        args.prev_dst = st.read(*dst);

        for (std::size_t k = 0; k < instr->preconditions.size(); ++k) {
          const Precondition& pre = instr->preconditions[k];
          sym::Ref domain = pre.formula(args);

          Vc vc;
          std::vector<sym::Ref> conj = assumptions;
          conj.push_back(acc);
          conj.push_back(sym::not_of(domain));
          vc.formula = sym::and_of(std::move(conj));
          vc.defs = st.defs;
          vc.defs_prefix = st.defs->size();
          vc.location = step.loc;
          vc.instr = step.callee;
          vc.reason = pre.reason;
          vc.pre_index = static_cast<int>(k);
          result.vcs.push_back(std::move(vc));

          assumptions.push_back(sym::implies(acc, std::move(domain)));
        }

        sym::Ref effect = instr->sym_compute(args);
        st.define(*dst, sym::ite(acc, std::move(effect), args.prev_dst),
                  step_index);
        break;
      }
    }
  }
  return result;
}

sym::Ref inline_vc(const Vc& vc) {
  const std::vector<Def>& defs = *vc.defs;

  // Mark the defs the formula actually reaches, walking backwards so each
  // def's own free variables extend the frontier.
  std::map<std::string, sym::Sort> needed = sym::free_vars(vc.formula);
  std::vector<bool> used(vc.defs_prefix, false);
  for (std::size_t i = vc.defs_prefix; i-- > 0;) {
    const std::string name = ssa_name(defs[i].var);
    if (needed.find(name) == needed.end()) continue;
    used[i] = true;
    needed.merge(sym::free_vars(defs[i].expr));
  }

  // Wrap in reverse so outer lets bind names used by inner ones; defs are
  // topologically ordered, which makes this well-scoped.
  sym::Ref body = vc.formula;
  for (std::size_t i = vc.defs_prefix; i-- > 0;) {
    if (used[i]) body = sym::let_in(ssa_name(defs[i].var), defs[i].expr, body);
  }
  return body;
}

std::string describe(const Vc& vc) {
  std::ostringstream os;
  os << "vc " << vc.instr << " (" << vc.reason.text << ") at "
     << to_string(vc.location) << "\n";
  os << "  formula: ";
  sym::print_smt(os, inline_vc(vc));
  os << "\n";
  return os.str();
}

}  // namespace ladver
