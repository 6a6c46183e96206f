#include "ladver/instructions.hpp"

#include <stdexcept>

namespace ladver {

namespace {

using sym::Ref;

Ref wrap16(Ref e) {
  // Two's-complement reduction: ((e + 32768) mod 65536) - 32768.
  return sym::sub(sym::emod(sym::add(std::move(e), sym::int_const(32768)),
                            sym::int_const(65536)),
                  sym::int_const(32768));
}

// Same reduction when `e` is statically confined to [lo, hi]. With at most
// one overflow step possible on either side the wrap is a plain case split,
// which integer solvers handle far better than div/mod by 65536.
Ref wrap16_in(Ref e, long long lo, long long hi) {
  if (lo >= kWord16Min && hi <= kWord16Max) return e;
  if (lo < kWord16Min - 65536 || hi > kWord16Max + 65536) {
    return wrap16(std::move(e));
  }
  Ref v = sym::var("w16", sym::Sort::Int);
  Ref body = v;
  if (hi > kWord16Max) {
    body = sym::ite(sym::gt(v, sym::int_const(kWord16Max)),
                    sym::sub(v, sym::int_const(65536)), std::move(body));
  }
  if (lo < kWord16Min) {
    body = sym::ite(sym::lt(v, sym::int_const(kWord16Min)),
                    sym::add(v, sym::int_const(65536)), std::move(body));
  }
  return sym::let_in("w16", std::move(e), std::move(body));
}

// Truncated (round-toward-zero) division on top of SMT's Euclidean div/mod.
Ref trunc_div(const Ref& a, const Ref& b) {
  Ref adjust = sym::ite(
      sym::and_of({sym::ne(sym::emod(a, b), sym::int_const(0)),
                   sym::lt(a, sym::int_const(0))}),
      sym::ite(sym::gt(b, sym::int_const(0)), sym::int_const(1), sym::int_const(-1)),
      sym::int_const(0));
  return sym::add(sym::ediv(a, b), std::move(adjust));
}

Ref nibble(const Ref& src, int i) {
  long long div = 1;
  for (int k = 0; k < i; ++k) div *= 16;
  Ref shifted = (div == 1) ? src : sym::ediv(src, sym::int_const(div));
  return sym::emod(std::move(shifted), sym::int_const(16));
}

Ref bcd_sym(const Ref& src) {
  Ref body = sym::add(
      sym::add(sym::mul(sym::var("dig1", sym::Sort::Int), sym::int_const(4096)),
               sym::mul(sym::var("dig2", sym::Sort::Int), sym::int_const(256))),
      sym::add(sym::mul(sym::var("dig3", sym::Sort::Int), sym::int_const(16)),
               sym::var("dig4", sym::Sort::Int)));
  // Keep the 16-bit register view: packings >= 0x8000 read back negative.
  // The packed sum is at most 0x9999 = 39321, so a single case split wraps it.
  body = wrap16_in(std::move(body), 0, 39321);
  body = sym::let_in("dig4", sym::emod(sym::var("r2", sym::Sort::Int), sym::int_const(10)), body);
  body = sym::let_in("dig3", sym::ediv(sym::var("r2", sym::Sort::Int), sym::int_const(10)), body);
  body = sym::let_in("r2", sym::emod(sym::var("r1", sym::Sort::Int), sym::int_const(100)), body);
  body = sym::let_in("dig2", sym::ediv(sym::var("r1", sym::Sort::Int), sym::int_const(100)), body);
  body = sym::let_in("r1", sym::emod(src, sym::int_const(1000)), body);
  body = sym::let_in("dig1", sym::ediv(src, sym::int_const(1000)), body);
  return body;
}

Ref bin_sym(const Ref& src) {
  Ref body = sym::add(
      sym::add(sym::mul(sym::var("nib3", sym::Sort::Int), sym::int_const(1000)),
               sym::mul(sym::var("nib2", sym::Sort::Int), sym::int_const(100))),
      sym::add(sym::mul(sym::var("nib1", sym::Sort::Int), sym::int_const(10)),
               sym::var("nib0", sym::Sort::Int)));
  body = sym::let_in("nib0", nibble(src, 0), body);
  body = sym::let_in("nib1", nibble(src, 1), body);
  body = sym::let_in("nib2", nibble(src, 2), body);
  body = sym::let_in("nib3", nibble(src, 3), body);
  return body;
}

Precondition bcd_range_pre() {
  return Precondition{
      ReasonLabel{"BCD: out of [0...9999] range call"},
      "0 <= src <= 9999",
      [](const EvalArgs& a) {
        int v = a.srcs[0].value();
        return 0 <= v && v <= 9999;
      },
      [](const SymArgs& a) {
        return sym::and_of({sym::le(sym::int_const(0), a.srcs[0]),
                            sym::le(a.srcs[0], sym::int_const(9999))});
      }};
}

Precondition bin_range_pre() {
  // Nibbles are taken from the raw 16-bit pattern. The Euclidean div/mod in
  // `nibble` agrees with that view even for negative values, because 16^i
  // divides 2^16: ediv(x + 65536, 16^i) shifts by an exact multiple of 16.
  return Precondition{
      ReasonLabel{"BIN: nibble out of [0...9] range call"},
      "every nibble of src <= 9",
      [](const EvalArgs& a) {
        const unsigned u = static_cast<std::uint16_t>(a.srcs[0].value());
        for (int i = 0; i < 4; ++i) {
          if (((u >> (4 * i)) & 0xFu) > 9) return false;
        }
        return true;
      },
      [](const SymArgs& a) {
        std::vector<Ref> conj;
        for (int i = 0; i < 4; ++i) {
          conj.push_back(sym::le(nibble(a.srcs[0], i), sym::int_const(9)));
        }
        return sym::and_of(std::move(conj));
      }};
}

Precondition range_result_pre(std::string label, std::string text,
                              std::function<long long(const EvalArgs&)> value,
                              std::function<Ref(const SymArgs&)> sym_value) {
  return Precondition{
      ReasonLabel{std::move(label)},
      std::move(text),
      [value](const EvalArgs& a) { return fits_word16(value(a)); },
      [sym_value](const SymArgs& a) {
        Ref v = sym_value(a);
        return sym::and_of({sym::le(sym::int_const(kWord16Min), v),
                            sym::le(v, sym::int_const(kWord16Max))});
      }};
}

Signature sig(std::string name, std::vector<OperandSpec> ops) {
  return Signature{std::move(name), std::move(ops)};
}

constexpr OperandSpec kWordSrc{OperandRole::WordSrc, true};
constexpr OperandSpec kWordDst{OperandRole::WordDst, false};
constexpr OperandSpec kBitDst{OperandRole::BitDst, false};

}  // namespace

Word16 bcd_compute(Word16 src) {
  int v = src.value();
  if (v < 0 || v > 9999) {
    throw std::domain_error("bcd_compute: source " + std::to_string(v) +
                            " outside [0, 9999]");
  }
  int dig1 = v / 1000;
  int r1 = v % 1000;
  int dig2 = r1 / 100;
  int r2 = r1 % 100;
  int dig3 = r2 / 10;
  int dig4 = r2 % 10;
  // The packed pattern is a raw 16-bit value; sources >= 8000 set the sign
  // bit (e.g. 9999 -> 0x9999), so the register reads back negative.
  return Word16::wrap(dig1 * 4096 + dig2 * 256 + dig3 * 16 + dig4);
}

Word16 bin_compute(Word16 src) {
  // Nibbles live on the raw bit pattern, so a negative register value is
  // fine as long as each nibble is a decimal digit (0x9999 = -26215 -> 9999).
  const unsigned u = static_cast<std::uint16_t>(src.value());
  unsigned digits[4];
  for (int i = 0; i < 4; ++i) {
    digits[i] = (u >> (4 * i)) & 0xFu;
    if (digits[i] > 9) {
      throw std::domain_error("bin_compute: nibble " + std::to_string(i) +
                              " of " + std::to_string(src.value()) +
                              " exceeds 9");
    }
  }
  return Word16::checked(static_cast<long long>(digits[3]) * 1000 +
                         digits[2] * 100 + digits[1] * 10 + digits[0]);
}

bool eval_compare(CmpRel rel, Word16 a, Word16 b) {
  switch (rel) {
    case CmpRel::Eq: return a.value() == b.value();
    case CmpRel::Lt: return a.value() < b.value();
    case CmpRel::Gt: return a.value() > b.value();
    case CmpRel::Le: return a.value() <= b.value();
    case CmpRel::Ge: return a.value() >= b.value();
    case CmpRel::Ne: return a.value() != b.value();
  }
  throw std::logic_error("eval_compare: bad relation");
}

int rel_tag(CmpRel rel) { return static_cast<int>(rel); }

bool coil_value(StepOp op, bool acc, bool prev) {
  switch (op) {
    case StepOp::Out: return acc;
    case StepOp::Set: return prev || acc;
    case StepOp::Rst: return prev && !acc;
    default: throw std::logic_error("coil_value: not a coil step");
  }
}

sym::Ref coil_sym(StepOp op, const sym::Ref& acc, const sym::Ref& prev) {
  switch (op) {
    case StepOp::Out: return acc;
    case StepOp::Set: return sym::or_of({prev, acc});
    case StepOp::Rst: return sym::and_of({prev, sym::not_of(acc)});
    default: throw std::logic_error("coil_sym: not a coil step");
  }
}

// ---------------------------------------------------------------------------
// Registry

Registry::Registry(Mode mode) : mode_(mode) {
  const bool wrap = mode == Mode::Wrap;

  auto word_entry = [&](Signature s, std::vector<Precondition> pres,
                        std::function<Word16(const EvalArgs&)> compute,
                        std::function<Ref(const SymArgs&)> sym_compute,
                        bool reads_dst = false) {
    entries_.push_back(Instruction{InstrKind::WordOp, std::move(s),
                                   std::move(pres), std::move(compute),
                                   std::move(sym_compute), reads_dst});
  };

  word_entry(sig("MOV", {kWordSrc, kWordDst}), {},
             [](const EvalArgs& a) { return a.srcs[0]; },
             [](const SymArgs& a) { return a.srcs[0]; });

  {
    std::vector<Precondition> pres;
    if (!wrap) {
      pres.push_back(Precondition{
          ReasonLabel{"INC: overflow"},
          "dst < 32767",
          [](const EvalArgs& a) { return a.prev_dst.value() < 32767; },
          [](const SymArgs& a) { return sym::lt(a.prev_dst, sym::int_const(32767)); }});
    }
    word_entry(sig("INC", {kWordDst}), std::move(pres),
               [wrap](const EvalArgs& a) {
                 return wrap ? wrap_add(a.prev_dst, Word16::checked(1))
                             : Word16::checked(a.prev_dst.value() + 1);
               },
               [wrap](const SymArgs& a) {
                 Ref v = sym::add(a.prev_dst, sym::int_const(1));
                 return wrap ? wrap16_in(std::move(v), kWord16Min + 1, kWord16Max + 1) : v;
               },
               /*reads_dst=*/true);
  }

  {
    std::vector<Precondition> pres;
    if (!wrap) {
      pres.push_back(Precondition{
          ReasonLabel{"DEC: underflow"},
          "dst > -32768",
          [](const EvalArgs& a) { return a.prev_dst.value() > -32768; },
          [](const SymArgs& a) { return sym::gt(a.prev_dst, sym::int_const(-32768)); }});
    }
    word_entry(sig("DEC", {kWordDst}), std::move(pres),
               [wrap](const EvalArgs& a) {
                 return wrap ? wrap_sub(a.prev_dst, Word16::checked(1))
                             : Word16::checked(a.prev_dst.value() - 1);
               },
               [wrap](const SymArgs& a) {
                 Ref v = sym::sub(a.prev_dst, sym::int_const(1));
                 return wrap ? wrap16_in(std::move(v), kWord16Min - 1, kWord16Max - 1) : v;
               },
               /*reads_dst=*/true);
  }

  struct Arith {
    const char* name;
    const char* pre_text;
    long long (*value)(long long, long long);
    Ref (*sym_value)(const Ref&, const Ref&);
    long long lo, hi;  // static bounds of the raw result over word inputs
  };
  const Arith arith_ops[] = {
      {"ADD", "-32768 <= src1 + src2 <= 32767",
       [](long long a, long long b) { return a + b; },
       [](const Ref& a, const Ref& b) { return sym::add(a, b); },
       2 * kWord16Min, 2 * kWord16Max},
      {"SUB", "-32768 <= src1 - src2 <= 32767",
       [](long long a, long long b) { return a - b; },
       [](const Ref& a, const Ref& b) { return sym::sub(a, b); },
       kWord16Min - kWord16Max, kWord16Max - kWord16Min},
      {"MUL", "-32768 <= src1 * src2 <= 32767",
       [](long long a, long long b) { return a * b; },
       [](const Ref& a, const Ref& b) { return sym::mul(a, b); },
       kWord16Min * kWord16Max, kWord16Min * kWord16Min},
  };
  for (const Arith& op : arith_ops) {
    auto value = op.value;
    auto sym_value = op.sym_value;
    const long long lo = op.lo, hi = op.hi;
    std::vector<Precondition> pres;
    if (!wrap) {
      pres.push_back(range_result_pre(
          std::string(op.name) + ": overflow", op.pre_text,
          [value](const EvalArgs& a) {
            return value(a.srcs[0].value(), a.srcs[1].value());
          },
          [sym_value](const SymArgs& a) { return sym_value(a.srcs[0], a.srcs[1]); }));
    }
    word_entry(sig(op.name, {kWordSrc, kWordSrc, kWordDst}), std::move(pres),
               [value, wrap](const EvalArgs& a) {
                 long long v = value(a.srcs[0].value(), a.srcs[1].value());
                 return wrap ? Word16::wrap(v) : Word16::checked(v);
               },
               [sym_value, wrap, lo, hi](const SymArgs& a) {
                 Ref v = sym_value(a.srcs[0], a.srcs[1]);
                 return wrap ? wrap16_in(std::move(v), lo, hi) : v;
               });
  }

  {
    // DIV writes the truncated quotient; both checks stay on in wrap mode.
    std::vector<Precondition> pres;
    pres.push_back(Precondition{
        ReasonLabel{"DIV: division by zero"},
        "src2 <> 0",
        [](const EvalArgs& a) { return a.srcs[1].value() != 0; },
        [](const SymArgs& a) { return sym::ne(a.srcs[1], sym::int_const(0)); }});
    pres.push_back(Precondition{
        ReasonLabel{"DIV: overflow"},
        "not (src1 = -32768 and src2 = -1)",
        [](const EvalArgs& a) {
          return !(a.srcs[0].value() == -32768 && a.srcs[1].value() == -1);
        },
        [](const SymArgs& a) {
          return sym::not_of(
              sym::and_of({sym::eq(a.srcs[0], sym::int_const(-32768)),
                           sym::eq(a.srcs[1], sym::int_const(-1))}));
        }});
    word_entry(sig("DIV", {kWordSrc, kWordSrc, kWordDst}), std::move(pres),
               [](const EvalArgs& a) {
                 return Word16::checked(a.srcs[0].value() / a.srcs[1].value());
               },
               [](const SymArgs& a) { return trunc_div(a.srcs[0], a.srcs[1]); });
  }

  word_entry(sig("BCD", {kWordSrc, kWordDst}), {bcd_range_pre()},
             [](const EvalArgs& a) { return bcd_compute(a.srcs[0]); },
             [](const SymArgs& a) { return bcd_sym(a.srcs[0]); });

  word_entry(sig("BIN", {kWordSrc, kWordDst}), {bin_range_pre()},
             [](const EvalArgs& a) { return bin_compute(a.srcs[0]); },
             [](const SymArgs& a) { return bin_sym(a.srcs[0]); });

  for (const char* name : {"OUT", "SET", "RST"}) {
    entries_.push_back(Instruction{InstrKind::Coil, sig(name, {kBitDst}), {},
                                   nullptr, nullptr, false});
  }

  for (const char* name : {"=", "<", ">", "<=", ">=", "<>"}) {
    entries_.push_back(Instruction{InstrKind::Compare,
                                   sig(name, {kWordSrc, kWordSrc}), {},
                                   nullptr, nullptr, false});
  }

  for (std::size_t i = 0; i < entries_.size(); ++i) {
    by_name_.emplace(entries_[i].signature.name, i);
  }
}

const Instruction* Registry::lookup(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return nullptr;
  return &entries_[it->second];
}

const Registry& registry(Mode mode) {
  static const Registry checked(Mode::Checked);
  static const Registry wrap(Mode::Wrap);
  return mode == Mode::Checked ? checked : wrap;
}

const Instruction* find_callable(const std::string& upper_name) {
  const Instruction* instr = registry(Mode::Checked).lookup(upper_name);
  if (instr == nullptr || instr->kind != InstrKind::WordOp) return nullptr;
  return instr;
}

// ---------------------------------------------------------------------------
// Step shape checking

namespace {

bool index_in_bounds(const Device& d, const AddressLimits& limits) {
  return d.index < limits.bound(d.kind);
}

std::optional<std::string> operand_sort_problem(const OperandSpec& spec,
                                                const Operand& op) {
  switch (spec.role) {
    case OperandRole::WordSrc:
      if (op.is_constant()) {
        if (!spec.accepts_const) return "constant not allowed here";
        return std::nullopt;
      }
      if (op.device_ref().kind != DeviceKind::D) {
        return "word source must be a D device or K constant";
      }
      return std::nullopt;
    case OperandRole::WordDst:
      if (!op.is_device() || op.device_ref().kind != DeviceKind::D) {
        return "word destination must be a D device";
      }
      return std::nullopt;
    case OperandRole::BitDst:
      if (!op.is_device()) return "coil destination must be a bit device";
      switch (op.device_ref().kind) {
        case DeviceKind::Y:
        case DeviceKind::M:
          return std::nullopt;
        case DeviceKind::X:
          return "X devices are read-only inputs";
        case DeviceKind::D:
          return "coil destination must be a Y or M device";
      }
      return "coil destination must be a Y or M device";
  }
  return std::nullopt;
}

void check_against_specs(const Step& step, int step_pos,
                         const std::string& display_name,
                         const std::vector<OperandSpec>& specs,
                         const AddressLimits& limits,
                         std::vector<BuildIssue>& out) {
  if (step.operands.size() != specs.size()) {
    out.push_back(BuildIssue{
        step_pos, DiagKind::ArityMismatch,
        display_name + " expects " + std::to_string(specs.size()) +
            " operand(s), got " + std::to_string(step.operands.size())});
    return;
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const Operand& op = step.operands[i];
    if (auto problem = operand_sort_problem(specs[i], op)) {
      out.push_back(BuildIssue{step_pos, DiagKind::SortMismatch,
                               display_name + " operand " +
                                   std::to_string(i + 1) + " (" +
                                   to_string(op) + "): " + *problem});
    }
    if (op.is_device() && !index_in_bounds(op.device_ref(), limits)) {
      out.push_back(BuildIssue{
          step_pos, DiagKind::IndexOutOfRange,
          to_string(op.device_ref()) + ": index exceeds address bound " +
              std::to_string(limits.bound(op.device_ref().kind))});
    }
  }
}

const std::vector<OperandSpec>& contact_specs() {
  static const std::vector<OperandSpec> specs{{OperandRole::BitDst, false}};
  return specs;
}

}  // namespace

std::vector<BuildIssue> check_step_shape(const Step& step, int step_pos,
                                         const AddressLimits& limits) {
  std::vector<BuildIssue> out;
  switch (step.op) {
    case StepOp::Ld:
    case StepOp::Ldi:
    case StepOp::And:
    case StepOp::Ani:
    case StepOp::Or:
    case StepOp::Ori: {
      // Contacts read one bit device; X/Y/M all legal to read.
      if (step.operands.size() != 1) {
        out.push_back(BuildIssue{step_pos, DiagKind::ArityMismatch,
                                 "contact expects 1 operand, got " +
                                     std::to_string(step.operands.size())});
        return out;
      }
      const Operand& op = step.operands[0];
      if (!op.is_device() || !is_bit_kind(op.device_ref().kind)) {
        out.push_back(BuildIssue{step_pos, DiagKind::SortMismatch,
                                 "contact operand (" + to_string(op) +
                                     ") must be an X, Y or M device"});
      }
      if (op.is_device() && !index_in_bounds(op.device_ref(), limits)) {
        out.push_back(BuildIssue{
            step_pos, DiagKind::IndexOutOfRange,
            to_string(op.device_ref()) + ": index exceeds address bound " +
                std::to_string(limits.bound(op.device_ref().kind))});
      }
      return out;
    }
    case StepOp::CmpLd:
    case StepOp::CmpAnd:
    case StepOp::CmpOr: {
      const Instruction* instr = registry().lookup(to_string(step.rel));
      check_against_specs(step, step_pos, "comparison " + to_string(step.rel),
                          instr->signature.operands, limits, out);
      return out;
    }
    case StepOp::Anb:
    case StepOp::Orb:
      if (!step.operands.empty()) {
        out.push_back(BuildIssue{step_pos, DiagKind::ArityMismatch,
                                 "block combine takes no operands"});
      }
      return out;
    case StepOp::Out:
    case StepOp::Set:
    case StepOp::Rst:
      check_against_specs(step, step_pos, step_name(step.op), contact_specs(),
                          limits, out);
      return out;
    case StepOp::Call: {
      const Instruction* instr = find_callable(step.callee);
      if (instr == nullptr) {
        out.push_back(BuildIssue{step_pos, DiagKind::UnknownMnemonic,
                                 "unknown instruction: " + step.callee});
        return out;
      }
      check_against_specs(step, step_pos, step.callee,
                          instr->signature.operands, limits, out);
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Concrete evaluation

bool DeviceState::bit(const Device& d) const {
  auto it = bits.find(d);
  return it == bits.end() ? false : it->second;
}

Word16 DeviceState::word(const Device& d) const {
  auto it = words.find(d);
  return it == words.end() ? Word16{} : it->second;
}

Word16 operand_value(const Operand& op, const DeviceState& state) {
  if (op.is_constant()) return op.constant_value();
  return state.word(op.device_ref());
}

EvalResult concrete_eval(const Step& step, bool wire, DeviceState& state,
                         Mode mode) {
  EvalResult result;
  switch (step.op) {
    case StepOp::Out:
    case StepOp::Set:
    case StepOp::Rst: {
      const Device& dst = step.operands[0].device_ref();
      bool value = coil_value(step.op, wire, state.bit(dst));
      state.set_bit(dst, value);
      result.writes.push_back(Write{dst, value});
      return result;
    }
    case StepOp::Call: {
      if (!wire) return result;  // inactive input: destination keeps prev_val
      const Instruction* instr = find_callable(step.callee);
      if (instr == nullptr) {
        throw std::logic_error("concrete_eval: unknown instruction " + step.callee);
      }
      const Instruction* moded = registry(mode).lookup(step.callee);

      EvalArgs args;
      const Device* dst = nullptr;
      for (std::size_t i = 0; i < moded->signature.operands.size(); ++i) {
        const OperandSpec& spec = moded->signature.operands[i];
        if (spec.role == OperandRole::WordSrc) {
          args.srcs.push_back(operand_value(step.operands[i], state));
        } else if (spec.role == OperandRole::WordDst) {
          dst = &step.operands[i].device_ref();
        }
      }
      if (dst == nullptr) {
        throw std::logic_error("concrete_eval: call without destination");
      }
      args.prev_dst = state.word(*dst);

      for (const Precondition& pre : moded->preconditions) {
        if (!pre.holds(args)) {
          Fault fault;
          fault.location = step.loc;
          fault.reason = pre.reason.text;
          for (std::size_t i = 0; i < moded->signature.operands.size(); ++i) {
            if (moded->signature.operands[i].role == OperandRole::WordSrc) {
              fault.offending.emplace_back(
                  to_string(step.operands[i]),
                  operand_value(step.operands[i], state));
            }
          }
          if (moded->reads_dst) {
            fault.offending.emplace_back(to_string(*dst), args.prev_dst);
          }
          result.fault = std::move(fault);
          return result;
        }
      }

      Word16 value = moded->compute(args);
      state.set_word(*dst, value);
      result.writes.push_back(Write{*dst, value});
      return result;
    }
    default:
      throw std::logic_error("concrete_eval: step is not a coil or call");
  }
}

std::string to_string(const Signature& sig) {
  std::string out = sig.name;
  int src_n = 0;
  for (const OperandSpec& spec : sig.operands) {
    out += ' ';
    switch (spec.role) {
      case OperandRole::WordSrc:
        ++src_n;
        out += "<src" + std::to_string(src_n) + ":word";
        if (spec.accepts_const) out += "|K";
        out += ">";
        break;
      case OperandRole::WordDst:
        out += "<dst:word>";
        break;
      case OperandRole::BitDst:
        out += "<dst:bit>";
        break;
    }
  }
  return out;
}

}  // namespace ladver
