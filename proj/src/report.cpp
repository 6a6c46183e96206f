#include "ladver/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace ladver {

namespace {

using Json = nlohmann::ordered_json;

std::string write_value_text(const BitOrWord& v) {
  if (std::holds_alternative<bool>(v)) {
    return std::get<bool>(v) ? "1" : "0";
  }
  return std::to_string(std::get<Word16>(v).value());
}

std::string offending_text(const Fault& fault) {
  std::string out;
  for (std::size_t i = 0; i < fault.offending.size(); ++i) {
    if (i > 0) out += ", ";
    out += fault.offending[i].first + " = " +
           std::to_string(fault.offending[i].second.value());
  }
  return out;
}

}  // namespace

std::string step_text(const Step& s) {
  std::string text = s.op == StepOp::Call ? s.callee : step_name(s.op);
  if (s.op == StepOp::CmpLd || s.op == StepOp::CmpAnd ||
      s.op == StepOp::CmpOr) {
    text += to_string(s.rel);
  }
  for (const Operand& op : s.operands) {
    text += ' ';
    text += to_string(op);
  }
  return text;
}

std::string to_string(OutcomeStatus s) {
  switch (s) {
    case OutcomeStatus::Proved: return "proved";
    case OutcomeStatus::Error: return "error";
    case OutcomeStatus::Unknown: return "unknown";
    case OutcomeStatus::Skipped: return "skipped";
  }
  return "?";
}

bool Report::any_error() const {
  return std::any_of(outcomes.begin(), outcomes.end(), [](const Outcome& o) {
    return o.status == OutcomeStatus::Error;
  });
}

bool Report::any_unknown() const {
  return std::any_of(outcomes.begin(), outcomes.end(), [](const Outcome& o) {
    return o.status == OutcomeStatus::Unknown;
  });
}

std::string render_init_lines(const InitialValuation& init,
                              const std::string& indent) {
  std::string out;
  auto line = [&](const Device& d, const std::string& value) {
    out += indent + to_string(d) + " = " + value;
    if (init.defaulted.count(d) != 0) out += " (defaulted)";
    out += "\n";
  };
  for (const auto& [d, v] : init.state.bits) line(d, v ? "1" : "0");
  for (const auto& [d, v] : init.state.words) {
    line(d, std::to_string(v.value()));
  }
  return out;
}

std::string render_trace_lines(const Program& p, const Trace& trace,
                               const std::string& indent) {
  std::string out;
  for (const TraceStep& ts : trace.steps) {
    out += indent + "step " + std::to_string(ts.location.step_index + 1) +
           " (line " + std::to_string(ts.location.source_line) + "): " +
           step_text(p.steps()[static_cast<std::size_t>(ts.location.step_index)]);
    for (std::size_t i = 0; i < ts.writes.size(); ++i) {
      out += i == 0 ? " → " : ", ";
      out += to_string(ts.writes[i].device) + "=" +
             write_value_text(ts.writes[i].value);
    }
    out += ts.acc_active ? " | wire on" : " | wire off";
    if (trace.fault && trace.fault->location == ts.location) {
      out += " | FAULT: " + trace.fault->reason + " (" +
             offending_text(*trace.fault) + ")";
    }
    out += "\n";
  }
  return out;
}

namespace {

// Trace lines without a Program (report parsed back from JSON).
std::string trace_lines_bare(const Trace& trace, const std::string& indent) {
  std::string out;
  for (const TraceStep& ts : trace.steps) {
    out += indent + "step " + std::to_string(ts.location.step_index + 1) +
           " (line " + std::to_string(ts.location.source_line) + ")";
    for (std::size_t i = 0; i < ts.writes.size(); ++i) {
      out += i == 0 ? " → " : ", ";
      out += to_string(ts.writes[i].device) + "=" +
             write_value_text(ts.writes[i].value);
    }
    out += ts.acc_active ? " | wire on" : " | wire off";
    if (trace.fault && trace.fault->location == ts.location) {
      out += " | FAULT: " + trace.fault->reason + " (" +
             offending_text(*trace.fault) + ")";
    }
    out += "\n";
  }
  return out;
}

}  // namespace

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << kToolName << " " << kToolVersion << " report for " << r.file << "\n";
  os << "program: " << r.step_count << " steps, " << r.rung_count
     << " rung(s) | mode: " << (r.mode == Mode::Wrap ? "wrap" : "checked")
     << " | solver: " << r.solver_name << "\n";

  int proved = 0, errors = 0, unknown = 0, skipped = 0;
  for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
    const Outcome& o = r.outcomes[i];
    os << "\nvc " << (i + 1) << "/" << r.outcomes.size() << ": " << o.vc.instr
       << " at " << to_string(o.vc.location) << "\n";
    switch (o.status) {
      case OutcomeStatus::Proved:
        ++proved;
        os << "  result: proved (" << o.vc.reason.text
           << " cannot occur on any input)\n";
        break;
      case OutcomeStatus::Skipped:
        ++skipped;
        os << "  result: skipped (an earlier error stopped the run; "
              "use --all to check every condition)\n";
        break;
      case OutcomeStatus::Unknown:
        ++unknown;
        os << "  result: unknown ("
           << (o.unknown_reason ? to_string(*o.unknown_reason)
                                : std::string("unspecified"))
           << ") — inconclusive, not counted as proved\n";
        if (!o.unknown_detail.empty()) {
          os << "  detail: " << o.unknown_detail << "\n";
        }
        break;
      case OutcomeStatus::Error: {
        ++errors;
        os << "  result: error — " << o.vc.reason.text << "\n";
        if (o.scenario) {
          os << "  initial values (scan start):\n"
             << render_init_lines(o.scenario->trace.init, "    ");
          os << "  trace:\n";
          if (r.program) {
            os << render_trace_lines(*r.program, o.scenario->trace, "    ");
          } else {
            os << trace_lines_bare(o.scenario->trace, "    ");
          }
        }
        break;
      }
    }
  }

  os << "\n";
  if (errors == 0 && unknown == 0 && skipped == 0) {
    os << "no runtime error found: " << proved << "/" << r.outcomes.size()
       << " conditions proved\n";
  } else {
    os << "summary: " << errors << " error(s), " << proved << " proved, "
       << unknown << " unknown, " << skipped << " skipped\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Json location_json(const StepLoc& loc) {
  Json j;
  j["rung"] = loc.rung_index + 1;
  j["step"] = loc.step_index + 1;
  j["line"] = loc.source_line;
  return j;
}

StepLoc location_from_json(const Json& j) {
  StepLoc loc;
  loc.rung_index = j.at("rung").get<int>() - 1;
  loc.step_index = j.at("step").get<int>() - 1;
  loc.source_line = j.at("line").get<int>();
  return loc;
}

Json init_json(const InitialValuation& init) {
  Json bits = Json::object();
  for (const auto& [d, v] : init.state.bits) bits[to_string(d)] = v;
  Json words = Json::object();
  for (const auto& [d, v] : init.state.words) words[to_string(d)] = v.value();
  Json defaulted = Json::array();
  for (const Device& d : init.defaulted) defaulted.push_back(to_string(d));
  Json j;
  j["bits"] = std::move(bits);
  j["words"] = std::move(words);
  j["defaulted"] = std::move(defaulted);
  return j;
}

Device device_from_text(const std::string& text) {
  auto kind = text.empty() ? std::nullopt : kind_from_letter(text[0]);
  if (!kind) throw std::invalid_argument("bad device name: " + text);
  long long index = 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw std::invalid_argument("bad device name: " + text);
    }
    index = index * 10 + (text[i] - '0');
    if (index > 65535) throw std::invalid_argument("bad device name: " + text);
  }
  if (text.size() < 2) throw std::invalid_argument("bad device name: " + text);
  return Device{*kind, static_cast<std::uint16_t>(index)};
}

InitialValuation init_from_json(const Json& j) {
  InitialValuation init;
  for (const auto& [name, value] : j.at("bits").items()) {
    init.state.set_bit(device_from_text(name), value.get<bool>());
  }
  for (const auto& [name, value] : j.at("words").items()) {
    init.state.set_word(device_from_text(name),
                        Word16::checked(value.get<int>()));
  }
  for (const auto& name : j.at("defaulted")) {
    init.defaulted.insert(device_from_text(name.get<std::string>()));
  }
  return init;
}

Json trace_json(const Trace& trace) {
  Json steps = Json::array();
  for (const TraceStep& ts : trace.steps) {
    Json s;
    s["location"] = location_json(ts.location);
    s["active"] = ts.acc_active;
    Json writes = Json::array();
    for (const Write& w : ts.writes) {
      Json wj;
      wj["device"] = to_string(w.device);
      if (std::holds_alternative<bool>(w.value)) {
        wj["value"] = std::get<bool>(w.value);
      } else {
        wj["value"] = std::get<Word16>(w.value).value();
      }
      writes.push_back(std::move(wj));
    }
    s["writes"] = std::move(writes);
    steps.push_back(std::move(s));
  }
  return steps;
}

void trace_from_json(const Json& steps, Trace& trace) {
  for (const Json& s : steps) {
    TraceStep ts;
    ts.location = location_from_json(s.at("location"));
    ts.acc_active = s.at("active").get<bool>();
    for (const Json& wj : s.at("writes")) {
      Write w;
      w.device = device_from_text(wj.at("device").get<std::string>());
      if (wj.at("value").is_boolean()) {
        w.value = wj.at("value").get<bool>();
      } else {
        w.value = Word16::checked(wj.at("value").get<int>());
      }
      ts.writes.push_back(std::move(w));
    }
    trace.steps.push_back(std::move(ts));
  }
}

Json fault_json(const Fault& fault) {
  Json j;
  j["location"] = location_json(fault.location);
  j["reason"] = fault.reason;
  Json offending = Json::array();
  for (const auto& [operand, value] : fault.offending) {
    Json oj;
    oj["operand"] = operand;
    oj["value"] = value.value();
    offending.push_back(std::move(oj));
  }
  j["offending"] = std::move(offending);
  return j;
}

Fault fault_from_json(const Json& j) {
  Fault fault;
  fault.location = location_from_json(j.at("location"));
  fault.reason = j.at("reason").get<std::string>();
  for (const Json& oj : j.at("offending")) {
    fault.offending.emplace_back(oj.at("operand").get<std::string>(),
                                 Word16::checked(oj.at("value").get<int>()));
  }
  return fault;
}

}  // namespace

std::string render_json(const Report& r) {
  Json j;
  j["schema"] = 1;
  j["tool"] = std::string(kToolName) + " " + kToolVersion;
  j["file"] = r.file;
  j["mode"] = r.mode == Mode::Wrap ? "wrap" : "checked";
  j["solver"] = r.solver_name;
  Json program;
  program["steps"] = r.step_count;
  program["rungs"] = r.rung_count;
  j["program"] = std::move(program);

  int proved = 0, errors = 0, unknown = 0, skipped = 0;
  Json outcomes = Json::array();
  for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
    const Outcome& o = r.outcomes[i];
    Json oj;
    oj["index"] = i + 1;
    oj["instr"] = o.vc.instr;
    oj["reason"] = o.vc.reason.text;
    oj["location"] = location_json(o.vc.location);
    oj["status"] = to_string(o.status);
    switch (o.status) {
      case OutcomeStatus::Proved: ++proved; break;
      case OutcomeStatus::Skipped: ++skipped; break;
      case OutcomeStatus::Unknown: {
        ++unknown;
        Json uj;
        uj["reason"] = o.unknown_reason ? smt::to_string(*o.unknown_reason)
                                        : "unspecified";
        uj["detail"] = o.unknown_detail;
        oj["unknown"] = std::move(uj);
        break;
      }
      case OutcomeStatus::Error: {
        ++errors;
        if (o.scenario) {
          Json sj;
          sj["init"] = init_json(o.scenario->trace.init);
          sj["trace"] = trace_json(o.scenario->trace);
          if (o.scenario->trace.fault) {
            sj["fault"] = fault_json(*o.scenario->trace.fault);
          }
          oj["scenario"] = std::move(sj);
        }
        break;
      }
    }
    outcomes.push_back(std::move(oj));
  }
  Json summary;
  summary["errors"] = errors;
  summary["proved"] = proved;
  summary["unknown"] = unknown;
  summary["skipped"] = skipped;
  j["summary"] = std::move(summary);
  j["outcomes"] = std::move(outcomes);
  return j.dump(2) + "\n";
}

namespace {
Report report_from_json_tree(const Json& j);
}  // namespace

Report report_from_json(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("bad report JSON: ") + e.what());
  }
  try {
    return report_from_json_tree(j);
  } catch (const nlohmann::json::exception& e) {
    // Missing or mistyped fields surface as nlohmann exceptions; fold them
    // into the documented contract.
    throw std::invalid_argument(std::string("bad report JSON: ") + e.what());
  }
}

namespace {

Report report_from_json_tree(const Json& j) {
  if (!j.contains("schema") || j.at("schema").get<int>() != 1) {
    throw std::invalid_argument("bad report JSON: unsupported schema");
  }

  Report r;
  r.file = j.at("file").get<std::string>();
  r.mode = j.at("mode").get<std::string>() == "wrap" ? Mode::Wrap : Mode::Checked;
  r.solver_name = j.at("solver").get<std::string>();
  r.step_count = j.at("program").at("steps").get<int>();
  r.rung_count = j.at("program").at("rungs").get<int>();

  for (const Json& oj : j.at("outcomes")) {
    Outcome o;
    o.vc.instr = oj.at("instr").get<std::string>();
    o.vc.reason = ReasonLabel{oj.at("reason").get<std::string>()};
    o.vc.location = location_from_json(oj.at("location"));
    const std::string status = oj.at("status").get<std::string>();
    if (status == "proved") {
      o.status = OutcomeStatus::Proved;
    } else if (status == "skipped") {
      o.status = OutcomeStatus::Skipped;
    } else if (status == "unknown") {
      o.status = OutcomeStatus::Unknown;
      const Json& uj = oj.at("unknown");
      const std::string reason = uj.at("reason").get<std::string>();
      if (reason == "timeout") {
        o.unknown_reason = smt::UnknownReason::Timeout;
      } else if (reason == "solver-reported") {
        o.unknown_reason = smt::UnknownReason::SolverReported;
      } else if (reason == "protocol-error") {
        o.unknown_reason = smt::UnknownReason::ProtocolError;
      }
      o.unknown_detail = uj.at("detail").get<std::string>();
    } else if (status == "error") {
      o.status = OutcomeStatus::Error;
      if (oj.contains("scenario")) {
        Scenario s;
        s.vc = o.vc;
        s.status = ScenarioStatus::Confirmed;
        const Json& sj = oj.at("scenario");
        s.trace.init = init_from_json(sj.at("init"));
        trace_from_json(sj.at("trace"), s.trace);
        if (sj.contains("fault")) {
          s.trace.fault = fault_from_json(sj.at("fault"));
        }
        o.scenario = std::move(s);
      }
    } else {
      throw std::invalid_argument("bad report JSON: unknown status " + status);
    }
    r.outcomes.push_back(std::move(o));
  }
  return r;
}

}  // namespace

bool report_equivalent(const Report& a, const Report& b) {
  if (a.file != b.file || a.step_count != b.step_count ||
      a.rung_count != b.rung_count || a.mode != b.mode ||
      a.solver_name != b.solver_name ||
      a.outcomes.size() != b.outcomes.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
    const Outcome& x = a.outcomes[i];
    const Outcome& y = b.outcomes[i];
    if (x.status != y.status || x.vc.instr != y.vc.instr ||
        x.vc.reason.text != y.vc.reason.text ||
        !(x.vc.location == y.vc.location)) {
      return false;
    }
    if (x.unknown_reason != y.unknown_reason ||
        x.unknown_detail != y.unknown_detail) {
      return false;
    }
    if (x.scenario.has_value() != y.scenario.has_value()) return false;
    if (x.scenario) {
      const Trace& s = x.scenario->trace;
      const Trace& t = y.scenario->trace;
      if (!(s.init == t.init) || s.steps != t.steps) return false;
      if (s.fault.has_value() != t.fault.has_value()) return false;
      if (s.fault) {
        if (!(s.fault->location == t.fault->location) ||
            s.fault->reason != t.fault->reason ||
            s.fault->offending != t.fault->offending) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace ladver
