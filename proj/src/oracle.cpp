#include "ladver/oracle.hpp"

#include <algorithm>

namespace ladver {

const std::vector<Word16>& DomainSpec::boundary_values() {
  static const std::vector<Word16> values = [] {
    std::vector<Word16> v;
    for (int raw : {-32768, -2, -1, 0, 1, 9998, 9999, 10000, 32766, 32767}) {
      v.push_back(Word16::checked(raw));
    }
    return v;
  }();
  return values;
}

DomainSpec DomainSpec::default_for(const Program& p) {
  DomainSpec dom;
  std::vector<Device> word_devices;
  std::uint64_t bit_combinations = 1;
  for (const Device& d : p.devices_used()) {
    if (is_bit_kind(d.kind)) {
      dom.bits[d] = {false, true};
      if (bit_combinations <= dom.budget) bit_combinations *= 2;
    } else {
      word_devices.push_back(d);
    }
  }

  const bool full_range_fits =
      word_devices.size() <= 1 &&
      bit_combinations <= dom.budget / 65536 + (dom.budget % 65536 != 0);
  for (const Device& d : word_devices) {
    if (full_range_fits) {
      std::vector<Word16> all;
      all.reserve(65536);
      for (int v = kWord16Min; v <= kWord16Max; ++v) {
        all.push_back(Word16::checked(v));
      }
      dom.words[d] = std::move(all);
    } else {
      dom.words[d] = boundary_values();
    }
  }
  return dom;
}

std::uint64_t DomainSpec::size() const {
  std::uint64_t n = 1;
  auto mul = [&n](std::uint64_t k) {
    if (k == 0) {
      n = 0;
      return;
    }
    if (n > UINT64_MAX / k) {
      n = UINT64_MAX;  // saturate
    } else {
      n *= k;
    }
  };
  for (const auto& [d, values] : bits) mul(values.size());
  for (const auto& [d, values] : words) mul(values.size());
  return n;
}

bool DomainSpec::contains(const DeviceState& state) const {
  for (const auto& [d, values] : bits) {
    bool v = state.bit(d);
    if (std::find(values.begin(), values.end(), v) == values.end()) {
      return false;
    }
  }
  for (const auto& [d, values] : words) {
    Word16 v = state.word(d);
    if (std::find(values.begin(), values.end(), v) == values.end()) {
      return false;
    }
  }
  return true;
}

std::vector<OracleFault> enumerate_faults(const Program& p,
                                          const DomainSpec& dom, Mode mode) {
  const std::uint64_t total = dom.size();
  if (total > dom.budget) {
    throw BudgetExceeded("domain has " + std::to_string(total) +
                         " states, budget is " + std::to_string(dom.budget));
  }

  // Flatten to an odometer: devices in map order (bits first, then words),
  // the last wheel turning fastest.
  struct Wheel {
    Device device;
    bool is_bit;
    std::size_t count;
    std::size_t at = 0;
  };
  std::vector<Wheel> wheels;
  for (const auto& [d, values] : dom.bits) {
    wheels.push_back(Wheel{d, true, values.size()});
  }
  for (const auto& [d, values] : dom.words) {
    wheels.push_back(Wheel{d, false, values.size()});
  }

  std::vector<OracleFault> faults;
  if (total == 0) return faults;

  InitialValuation init;
  // Devices outside the domain (none, when callers use default_for) keep
  // their 0/false defaults and are flagged as such.
  for (const Device& d : p.devices_used()) {
    if (is_bit_kind(d.kind)) {
      if (dom.bits.find(d) == dom.bits.end()) {
        init.state.set_bit(d, false);
        init.defaulted.insert(d);
      }
    } else {
      if (dom.words.find(d) == dom.words.end()) {
        init.state.set_word(d, Word16{});
        init.defaulted.insert(d);
      }
    }
  }

  while (true) {
    for (const Wheel& w : wheels) {
      if (w.is_bit) {
        init.state.set_bit(w.device, dom.bits.at(w.device)[w.at]);
      } else {
        init.state.set_word(w.device, dom.words.at(w.device)[w.at]);
      }
    }

    Trace trace = simulate_scan(p, init, mode);
    if (trace.fault) {
      faults.push_back(
          OracleFault{init, trace.fault->location, trace.fault->reason});
    }

    // Advance the odometer; done when the first wheel rolls over.
    std::size_t i = wheels.size();
    while (i > 0) {
      --i;
      if (++wheels[i].at < wheels[i].count) break;
      wheels[i].at = 0;
      if (i == 0) return faults;
    }
    if (wheels.empty()) return faults;  // no devices: single state, done
  }
}

CrossCheckReport cross_check(const Program& p, const DomainSpec& dom,
                             const std::vector<Scenario>& confirmed,
                             bool verifier_reported_error, Mode mode) {
  CrossCheckReport report;
  report.verifier_found_error = verifier_reported_error;

  std::vector<OracleFault> faults = enumerate_faults(p, dom, mode);
  report.oracle_fault_count = faults.size();
  report.states_enumerated = dom.size();

  bool witness_outside_domain = false;
  for (const Scenario& s : confirmed) {
    if (s.status != ScenarioStatus::Confirmed) continue;
    if (!dom.contains(s.trace.init.state)) {
      witness_outside_domain = true;
      continue;
    }
    const bool found = std::any_of(
        faults.begin(), faults.end(), [&](const OracleFault& f) {
          return f.init.state == s.trace.init.state &&
                 f.location == s.vc.location && f.reason == s.vc.reason.text;
        });
    if (!found) {
      report.findings.push_back(
          "confirmed witness for " + s.vc.instr + " (" + s.vc.reason.text +
          ") at " + to_string(s.vc.location) +
          " is inside the domain but missing from the oracle fault set");
    }
  }

  const bool oracle_found = !faults.empty();
  if (verifier_reported_error && !oracle_found && !witness_outside_domain) {
    report.findings.push_back(
        "verifier reported an error but exhaustive enumeration found none "
        "and every witness is inside the domain");
  }
  if (!verifier_reported_error && oracle_found) {
    report.findings.push_back(
        "exhaustive enumeration found " + std::to_string(faults.size()) +
        " faulting state(s) but the verifier proved all conditions");
  }
  return report;
}

}  // namespace ladver
