#include "ladver/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>
#include <vector>

#include "ladver/vcgen.hpp"

namespace ladver {

std::string solver_display_name(const std::string& executable) {
  const std::size_t slash = executable.find_last_of('/');
  return slash == std::string::npos ? executable : executable.substr(slash + 1);
}

int VerifyResult::exit_code() const {
  if (spurious) return 4;
  if (report.any_error()) return 1;
  if (report.any_unknown()) return 2;
  return 0;
}

VerifyResult verify_program(const Program& p, const std::string& file_label,
                            const VerifyOptions& opts) {
  ScanResult scan = run_scan_symbolic(p, opts.mode);

  VerifyResult result;
  result.report.file = file_label;
  result.report.step_count = step_count(p);
  result.report.rung_count = p.rung_count();
  result.report.mode = opts.mode;
  result.report.solver_name = solver_display_name(opts.solver.executable);
  result.report.program = p;
  result.report.outcomes.resize(scan.vcs.size());
  for (std::size_t i = 0; i < scan.vcs.size(); ++i) {
    result.report.outcomes[i].vc = scan.vcs[i];
  }

  const std::size_t n = scan.vcs.size();
  // Per-index inconsistency records; resolved to a verdict only after the
  // first-error cutoff, so --jobs cannot change what the run reports.
  std::vector<std::string> spurious_at(n);

  auto check_one = [&](std::size_t i) {
    Outcome& o = result.report.outcomes[i];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const smt::SolverVerdict v = smt::check(o.vc, opts.solver);
      if (v.kind == smt::SolverVerdict::Kind::Unsat) {
        o.status = OutcomeStatus::Proved;
      } else if (v.kind == smt::SolverVerdict::Kind::Sat) {
        Scenario s = build_scenario(o.vc, v.model, p, opts.mode);
        o.status = OutcomeStatus::Error;
        if (s.status == ScenarioStatus::Confirmed) {
          o.scenario = std::move(s);
        } else {
          // Never show an unconfirmed trace as a user-facing bug.
          spurious_at[i] = "sat model for " + o.vc.instr + " at " +
                           to_string(o.vc.location) +
                           " did not re-simulate to the claimed fault";
        }
      } else {
        o.status = OutcomeStatus::Unknown;
        o.unknown_reason = v.unknown_reason;
        o.unknown_detail = v.detail;
      }
    } catch (const ModelSortMismatch& e) {
      // The model itself is malformed; same inconsistency class as Spurious.
      o.status = OutcomeStatus::Error;
      spurious_at[i] = e.what();
    }
    o.duration_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  };

  const int jobs = std::max(opts.jobs, 1);
  if (jobs == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      check_one(i);
      if (!opts.all_vcs &&
          result.report.outcomes[i].status == OutcomeStatus::Error) {
        break;  // later outcomes stay Skipped
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        check_one(i);
      }
    };
    std::vector<std::thread> pool;
    const std::size_t width =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    pool.reserve(width);
    for (std::size_t t = 0; t < width; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    if (!opts.all_vcs) {
      // Match the sequential run byte for byte: everything after the first
      // error is reported as skipped even though it was checked.
      std::size_t first_error = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (result.report.outcomes[i].status == OutcomeStatus::Error) {
          first_error = i;
          break;
        }
      }
      for (std::size_t i = first_error + 1; i < n && first_error < n; ++i) {
        Outcome& o = result.report.outcomes[i];
        o.status = OutcomeStatus::Skipped;
        o.scenario.reset();
        o.unknown_reason.reset();
        o.unknown_detail.clear();
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (result.report.outcomes[i].status == OutcomeStatus::Skipped) continue;
    if (!spurious_at[i].empty()) {
      result.spurious = true;
      result.spurious_detail = spurious_at[i];
      break;
    }
  }

  return result;
}

}  // namespace ladver
