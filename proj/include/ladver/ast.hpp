#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ladver/word16.hpp"

namespace ladver {

// X: input bit, Y: output bit, M: internal relay bit, D: 16-bit data register.
enum class DeviceKind : std::uint8_t { X, Y, M, D };

constexpr bool is_bit_kind(DeviceKind k) { return k != DeviceKind::D; }

char kind_letter(DeviceKind k);
std::optional<DeviceKind> kind_from_letter(char c);

struct Device {
  DeviceKind kind = DeviceKind::X;
  std::uint16_t index = 0;

  friend bool operator==(const Device&, const Device&) = default;
  friend auto operator<=>(const Device&, const Device&) = default;
};

std::string to_string(const Device& d);

// Per-kind address-space bounds; indices must be strictly below the bound.
struct AddressLimits {
  std::uint16_t x = 1024;
  std::uint16_t y = 1024;
  std::uint16_t m = 1024;
  std::uint16_t d = 1024;

  std::uint16_t bound(DeviceKind k) const;
};

/// Either a device reference or a literal word constant (written K<n>).
struct Operand {
  std::variant<Device, Word16> value;

  static Operand device(Device d) { return Operand{d}; }
  static Operand constant(Word16 w) { return Operand{w}; }

  bool is_device() const { return std::holds_alternative<Device>(value); }
  bool is_constant() const { return std::holds_alternative<Word16>(value); }
  const Device& device_ref() const { return std::get<Device>(value); }
  Word16 constant_value() const { return std::get<Word16>(value); }

  friend bool operator==(const Operand&, const Operand&) = default;
};

std::string to_string(const Operand& op);

enum class StepOp : std::uint8_t {
  Ld,      // load contact (push)
  Ldi,     // load inverted contact (push)
  And,     // series contact
  Ani,     // series inverted contact
  Or,      // parallel contact
  Ori,     // parallel inverted contact
  Anb,     // pop two blocks, series-combine
  Orb,     // pop two blocks, parallel-combine
  CmpLd,   // comparison contact, load variant
  CmpAnd,  // comparison contact, series variant
  CmpOr,   // comparison contact, parallel variant
  Out,     // coil: dst follows the wire
  Set,     // coil: latch dst on active wire
  Rst,     // coil: unlatch dst on active wire
  Call,    // named instruction call
};

enum class CmpRel : std::uint8_t { Eq, Lt, Gt, Le, Ge, Ne };

std::string to_string(CmpRel r);

bool is_load_op(StepOp op);     // Ld / Ldi / CmpLd
bool is_combine_op(StepOp op);  // And / Ani / Or / Ori / CmpAnd / CmpOr
bool is_block_op(StepOp op);    // Anb / Orb
bool is_action_op(StepOp op);   // Out / Set / Rst / Call

// Canonical mnemonic for non-call steps ("LD", "ANI", "OUT", ...).
std::string step_name(StepOp op);

// Location of a step inside the source text; every step carries exactly one.
struct SourceSpan {
  int line = 0;    // 1-based; 0 for programmatically built steps
  int column = 1;  // 1-based
  std::string raw_text;
};

struct StepLoc {
  int rung_index = 0;
  int step_index = 0;
  int source_line = 0;

  friend bool operator==(const StepLoc&, const StepLoc&) = default;
};

std::string to_string(const StepLoc& loc);

struct Step {
  StepOp op = StepOp::Ld;
  CmpRel rel = CmpRel::Eq;  // Cmp* steps only
  std::string callee;       // Call steps only, canonical upper-case name
  std::vector<Operand> operands;
  StepLoc loc;      // filled in by Program::create
  SourceSpan span;  // filled in by the parser

  static Step contact(StepOp op, Device d);
  static Step compare(StepOp op, CmpRel rel, Operand a, Operand b);
  static Step coil(StepOp op, Device d);
  static Step call(std::string name, std::vector<Operand> operands);
};

// Structural equality over the semantic fields (spans excluded).
bool same_step(const Step& a, const Step& b);

// Shared diagnostic vocabulary for construction and parsing failures.
enum class DiagKind : std::uint8_t {
  UnknownMnemonic,
  BadOperand,
  ArityMismatch,
  SortMismatch,
  StackImbalance,
  IndexOutOfRange,
  ConstantOutOfRange,
};

std::string to_string(DiagKind k);

struct BuildIssue {
  int step_pos = 0;  // index into the step list handed to Program::create
  DiagKind kind = DiagKind::BadOperand;
  std::string message;
};

// Half-open range [first, end) of step indices forming one rung.
struct Rung {
  int first = 0;
  int end = 0;

  friend bool operator==(const Rung&, const Rung&) = default;
};

// Defined after Program: std::optional needs the complete type.
struct ProgramBuildResult;

/// A validated one-scan program: the flat step list is the paper's "steps"
/// metric; rungs group steps; all values are immutable after construction.
class Program {
 public:
  using BuildResult = ProgramBuildResult;

  // Total over valid step lists; arity/sort/bounds/stack problems are all
  // reported, never deferred.
  static BuildResult create(std::vector<Step> steps, AddressLimits limits = {});

  const std::vector<Step>& steps() const { return steps_; }
  const std::vector<Rung>& rungs() const { return rungs_; }
  const std::vector<Device>& devices_used() const { return devices_used_; }
  const AddressLimits& limits() const { return limits_; }

  int rung_count() const { return static_cast<int>(rungs_.size()); }

 private:
  Program() = default;
  std::vector<Step> steps_;
  std::vector<Rung> rungs_;
  std::vector<Device> devices_used_;  // sorted by (kind, index), unique
  AddressLimits limits_;
};

struct ProgramBuildResult {
  std::optional<Program> program;
  std::vector<BuildIssue> issues;
  bool ok() const { return program.has_value(); }
};

int step_count(const Program& p);

}  // namespace ladver
