#include "ladver/scenario.hpp"

#include <algorithm>
#include <cctype>

namespace ladver {

std::optional<SsaVar> parse_ssa_name(const std::string& name) {
  std::size_t sep = name.rfind('_');
  if (sep == std::string::npos || sep == 0 || sep + 1 >= name.size()) {
    return std::nullopt;
  }
  auto kind = kind_from_letter(name[0]);
  if (!kind) return std::nullopt;

  long long index = 0;
  for (std::size_t i = 1; i < sep; ++i) {
    if (std::isdigit(static_cast<unsigned char>(name[i])) == 0) {
      return std::nullopt;
    }
    index = index * 10 + (name[i] - '0');
    if (index > 65535) return std::nullopt;
  }
  if (sep == 1) return std::nullopt;  // no index digits

  long long version = 0;
  for (std::size_t i = sep + 1; i < name.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(name[i])) == 0) {
      return std::nullopt;
    }
    version = version * 10 + (name[i] - '0');
    if (version > 1000000) return std::nullopt;
  }
  return SsaVar{Device{*kind, static_cast<std::uint16_t>(index)},
                static_cast<int>(version)};
}

InitialValuation model_to_initial(const smt::Model& model, const Program& p) {
  InitialValuation init;

  const std::vector<Device>& used = p.devices_used();
  auto mentions = [&used](const Device& d) {
    return std::binary_search(used.begin(), used.end(), d);
  };

  for (const auto& [name, value] : model.values) {
    auto var = parse_ssa_name(name);
    if (!var || var->version != 0) continue;  // not a scan-start variable
    if (!mentions(var->device)) continue;     // solver-internal extras
    const Device& d = var->device;
    if (is_bit_kind(d.kind)) {
      if (value.sort != sym::Sort::Bool) {
        throw ModelSortMismatch("model assigns an integer to bit device " +
                                to_string(d));
      }
      init.state.set_bit(d, value.b);
    } else {
      if (value.sort != sym::Sort::Int) {
        throw ModelSortMismatch("model assigns a boolean to word device " +
                                to_string(d));
      }
      if (!fits_word16(value.i)) {
        throw ModelSortMismatch("model value " + std::to_string(value.i) +
                                " for " + to_string(d) +
                                " is outside the 16-bit range");
      }
      init.state.set_word(d, Word16::checked(value.i));
    }
  }

  // Pad to full coverage of the program's devices; solvers omit don't-cares.
  for (const Device& d : p.devices_used()) {
    if (is_bit_kind(d.kind)) {
      if (init.state.bits.find(d) == init.state.bits.end()) {
        init.state.set_bit(d, false);
        init.defaulted.insert(d);
      }
    } else {
      if (init.state.words.find(d) == init.state.words.end()) {
        init.state.set_word(d, Word16{});
        init.defaulted.insert(d);
      }
    }
  }
  return init;
}

Trace simulate_scan(const Program& p, const InitialValuation& init, Mode mode) {
  Trace trace;
  trace.init = init;
  trace.steps.reserve(p.steps().size());

  DeviceState state = init.state;
  std::vector<bool> stack;

  auto bit_of = [&](const Step& s) {
    return state.bit(s.operands[0].device_ref());
  };
  auto cmp_of = [&](const Step& s) {
    return eval_compare(s.rel, operand_value(s.operands[0], state),
                        operand_value(s.operands[1], state));
  };

  for (const Step& step : p.steps()) {
    switch (step.op) {
      case StepOp::Ld:
        stack.push_back(bit_of(step));
        break;
      case StepOp::Ldi:
        stack.push_back(!bit_of(step));
        break;
      case StepOp::And:
        stack.back() = stack.back() && bit_of(step);
        break;
      case StepOp::Ani:
        stack.back() = stack.back() && !bit_of(step);
        break;
      case StepOp::Or:
        stack.back() = stack.back() || bit_of(step);
        break;
      case StepOp::Ori:
        stack.back() = stack.back() || !bit_of(step);
        break;
      case StepOp::CmpLd:
        stack.push_back(cmp_of(step));
        break;
      case StepOp::CmpAnd:
        stack.back() = stack.back() && cmp_of(step);
        break;
      case StepOp::CmpOr:
        stack.back() = stack.back() || cmp_of(step);
        break;
      case StepOp::Anb: {
        bool top = stack.back();
        stack.pop_back();
        stack.back() = stack.back() && top;
        break;
      }
      case StepOp::Orb: {
        bool top = stack.back();
        stack.pop_back();
        stack.back() = stack.back() || top;
        break;
      }
      case StepOp::Out:
      case StepOp::Set:
      case StepOp::Rst:
      case StepOp::Call: {
        const bool wire = stack.back();
        EvalResult r = concrete_eval(step, wire, state, mode);
        trace.steps.push_back(TraceStep{step.loc, wire, std::move(r.writes)});
        if (r.fault) {
          trace.fault = std::move(r.fault);
          return trace;
        }
        continue;
      }
    }
    trace.steps.push_back(TraceStep{step.loc, stack.back(), {}});
  }
  return trace;
}

Scenario build_scenario(const Vc& vc, const smt::Model& model,
                        const Program& p, Mode mode) {
  Scenario scenario;
  scenario.vc = vc;
  scenario.trace = simulate_scan(p, model_to_initial(model, p), mode);

  const auto& fault = scenario.trace.fault;
  const bool confirmed = fault.has_value() &&
                         fault->location == vc.location &&
                         fault->reason == vc.reason.text;
  scenario.status =
      confirmed ? ScenarioStatus::Confirmed : ScenarioStatus::Spurious;
  return scenario;
}

InitialValuation parse_init_string(const std::string& text, const Program& p) {
  InitialValuation init;

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(
        pos, comma == std::string::npos ? text.size() - pos : comma - pos);
    pos = comma == std::string::npos ? text.size() : comma + 1;

    // trim
    std::size_t b = item.find_first_not_of(" \t");
    std::size_t e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);

    std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("bad init entry '" + item +
                                  "': expected device=value");
    }
    auto trim = [](std::string s) {
      std::size_t tb = s.find_first_not_of(" \t");
      if (tb == std::string::npos) return std::string{};
      std::size_t te = s.find_last_not_of(" \t");
      return s.substr(tb, te - tb + 1);
    };
    std::string device_text = trim(item.substr(0, eq));
    std::string value_text = trim(item.substr(eq + 1));

    std::optional<DeviceKind> kind;
    if (!device_text.empty()) kind = kind_from_letter(device_text[0]);
    long long index = -1;
    if (kind && device_text.size() > 1) {
      index = 0;
      for (std::size_t i = 1; i < device_text.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(device_text[i])) == 0) {
          index = -1;
          break;
        }
        index = index * 10 + (device_text[i] - '0');
        if (index > 65535) break;
      }
    }
    if (!kind || index < 0 || index > 65535) {
      throw std::invalid_argument("bad init entry '" + item +
                                  "': unknown device '" + device_text + "'");
    }
    Device d{*kind, static_cast<std::uint16_t>(index)};

    bool negative = !value_text.empty() && value_text[0] == '-';
    std::string digits = negative ? value_text.substr(1) : value_text;
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(), [](unsigned char c) {
          return std::isdigit(c) != 0;
        })) {
      throw std::invalid_argument("bad init entry '" + item +
                                  "': value must be decimal");
    }
    long long value = 0;
    for (char c : digits) {
      value = value * 10 + (c - '0');
      if (value > 100000) break;
    }
    if (negative) value = -value;

    if (is_bit_kind(d.kind)) {
      if (value != 0 && value != 1) {
        throw std::invalid_argument("bad init entry '" + item +
                                    "': bit devices take 0 or 1");
      }
      init.state.set_bit(d, value == 1);
    } else {
      if (!fits_word16(value)) {
        throw std::invalid_argument("bad init entry '" + item +
                                    "': value outside -32768..32767");
      }
      init.state.set_word(d, Word16::checked(value));
    }
  }

  for (const Device& d : p.devices_used()) {
    if (is_bit_kind(d.kind)) {
      if (init.state.bits.find(d) == init.state.bits.end()) {
        init.state.set_bit(d, false);
        init.defaulted.insert(d);
      }
    } else {
      if (init.state.words.find(d) == init.state.words.end()) {
        init.state.set_word(d, Word16{});
        init.defaulted.insert(d);
      }
    }
  }
  return init;
}

}  // namespace ladver
