#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ladver/scenario.hpp"

namespace ladver {

/// Finite initial-state domain for exhaustive checking. Bit domains default
/// to {false, true}; word domains always contain the 16-bit boundary values
/// so off-by-one faults the solver would catch cannot slip past the oracle.
struct DomainSpec {
  std::map<Device, std::vector<bool>> bits;
  std::map<Device, std::vector<Word16>> words;
  std::uint64_t budget = 1ull << 22;  // maximum number of enumerated states

  // Every device the program mentions: bits {false,true}; the full 16-bit
  // range when it fits the budget with at most one word device, otherwise
  // the boundary-value subset.
  static DomainSpec default_for(const Program& p);

  // The values that are forced into every word domain.
  static const std::vector<Word16>& boundary_values();

  std::uint64_t size() const;  // cross-product cardinality (saturating)
  bool contains(const DeviceState& state) const;
};

struct OracleFault {
  InitialValuation init;
  StepLoc location;
  std::string reason;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Runs simulate_scan on every valuation in the domain's cross product and
// collects the faulting ones with their labels. Deterministic order: devices
// sorted, last device cycling fastest.
std::vector<OracleFault> enumerate_faults(const Program& p,
                                          const DomainSpec& dom,
                                          Mode mode = Mode::Checked);

struct CrossCheckReport {
  std::vector<std::string> findings;  // empty = agreement
  std::uint64_t states_enumerated = 0;
  std::size_t oracle_fault_count = 0;
  bool verifier_found_error = false;

  bool ok() const { return findings.empty(); }
};

// Compares verifier results against the exhaustive ground truth:
//  (a) every Confirmed witness inside the domain must be in the fault set
//      with matching location and reason;
//  (b) the verifier reports an error iff the oracle found one in-domain or
//      the verifier's witness lies outside the domain.
CrossCheckReport cross_check(const Program& p, const DomainSpec& dom,
                             const std::vector<Scenario>& confirmed,
                             bool verifier_reported_error,
                             Mode mode = Mode::Checked);

}  // namespace ladver
