#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ladver/ast.hpp"
#include "ladver/symexpr.hpp"
#include "ladver/word16.hpp"

namespace ladver {

// Checked mode faults on overflow (the default); Wrap mode silently wraps
// INC/DEC/ADD/SUB/MUL results mod 2^16. BCD/BIN/DIV checks apply in both.
enum class Mode : unsigned char { Checked, Wrap };

enum class OperandRole : unsigned char { WordSrc, WordDst, BitDst };

struct OperandSpec {
  OperandRole role;
  bool accepts_const;
};

struct Signature {
  std::string name;
  std::vector<OperandSpec> operands;
};

std::string to_string(const Signature& sig);

struct ReasonLabel {
  std::string text;
};

/// Values an instruction sees when it fires: word sources in signature order
/// plus the destination's previous value.
struct EvalArgs {
  std::vector<Word16> srcs;
  Word16 prev_dst;
};

struct SymArgs {
  std::vector<sym::Ref> srcs;
  sym::Ref prev_dst;
};

// One labeled domain condition of a contract. The full precondition has the
// shape `inactive wire \/ domain(args)`; only the domain part is stored.
struct Precondition {
  ReasonLabel reason;
  std::string text;  // printable form of the domain condition
  std::function<bool(const EvalArgs&)> holds;
  std::function<sym::Ref(const SymArgs&)> formula;
};

inline bool pre_holds(const Precondition& pre, bool wire, const EvalArgs& args) {
  return !wire || pre.holds(args);
}

enum class InstrKind : unsigned char { WordOp, Coil, Compare };

struct Instruction {
  InstrKind kind;
  Signature signature;
  std::vector<Precondition> preconditions;
  // Destination value when the wire is active and all preconditions hold.
  std::function<Word16(const EvalArgs&)> compute;
  std::function<sym::Ref(const SymArgs&)> sym_compute;
  bool reads_dst = false;  // INC/DEC read their destination
};

/// Immutable instruction-contract registry for one mode.
class Registry {
 public:
  explicit Registry(Mode mode);

  const Instruction* lookup(const std::string& name) const;
  const std::vector<Instruction>& entries() const { return entries_; }
  Mode mode() const { return mode_; }

 private:
  Mode mode_;
  std::vector<Instruction> entries_;
  std::map<std::string, std::size_t> by_name_;
};

const Registry& registry(Mode mode = Mode::Checked);

// Packs the 4 decimal digits of src (0..9999) into 4 nibbles. The result is
// the raw pattern read as a signed register, so sources >= 8000 come back
// negative (9999 -> 0x9999 = -26215). Throws std::domain_error outside
// [0, 9999].
Word16 bcd_compute(Word16 src);

// Inverse of bcd_compute: reads the 4 nibbles of the raw 16-bit pattern as
// decimal digits. Throws std::domain_error if any nibble exceeds 9.
Word16 bin_compute(Word16 src);

bool eval_compare(CmpRel rel, Word16 a, Word16 b);
int rel_tag(CmpRel rel);

bool coil_value(StepOp op, bool acc, bool prev);
sym::Ref coil_sym(StepOp op, const sym::Ref& acc, const sym::Ref& prev);

/// Instruction-name resolution used by the parser: nullptr when unknown.
const Instruction* find_callable(const std::string& upper_name);

// Arity, operand-sort, and device-bound checks for one step.
std::vector<BuildIssue> check_step_shape(const Step& step, int step_pos,
                                         const AddressLimits& limits);

/// Runtime contract violation detected by the concrete evaluator.
struct Fault {
  StepLoc location;
  std::string reason;
  std::vector<std::pair<std::string, Word16>> offending;  // (operand, value)
};

/// Concrete device valuation shared by the simulator and the oracle.
struct DeviceState {
  std::map<Device, bool> bits;
  std::map<Device, Word16> words;

  bool bit(const Device& d) const;
  Word16 word(const Device& d) const;
  void set_bit(const Device& d, bool v) { bits[d] = v; }
  void set_word(const Device& d, Word16 v) { words[d] = v; }

  friend bool operator==(const DeviceState&, const DeviceState&) = default;
};

using BitOrWord = std::variant<bool, Word16>;

struct Write {
  Device device;
  BitOrWord value;

  friend bool operator==(const Write&, const Write&) = default;
};

struct EvalResult {
  std::optional<Fault> fault;
  std::vector<Write> writes;
};

/// Word value of a source operand: the constant itself or the device's value.
Word16 operand_value(const Operand& op, const DeviceState& state);

// Executes one coil or call step against the valuation. On an active wire
// with a violated precondition, reports a Fault (with the contract's reason
// label verbatim) and leaves the state untouched.
EvalResult concrete_eval(const Step& step, bool wire, DeviceState& state,
                         Mode mode = Mode::Checked);

}  // namespace ladver
