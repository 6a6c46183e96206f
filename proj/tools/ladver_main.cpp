#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ladver/oracle.hpp"
#include "ladver/parser.hpp"
#include "ladver/pipeline.hpp"
#include "ladver/report.hpp"
#include "ladver/scenario.hpp"
#include "ladver/vcgen.hpp"

namespace fs = std::filesystem;
using namespace ladver;

namespace {

// Exit codes shared with the test suite and documented in the README.
constexpr int kExitProved = 0;
constexpr int kExitConfigError = 3;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot write " << path.string() << "\n";
    return false;
  }
  out << content;
  out.flush();
  if (!out) {
    std::cerr << "error: short write to " << path.string() << "\n";
    return false;
  }
  return true;
}

std::string resolve_solver(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("LADDER_VERIFY_SOLVER"); env && *env) {
    return env;
  }
  return "z3";
}

fs::path out_dir_for(const std::string& input, const std::string& out_flag) {
  if (!out_flag.empty()) return fs::path(out_flag);
  const fs::path parent = fs::path(input).parent_path();
  return parent.empty() ? fs::path(".") : parent;
}

// Loads and parses one program file; diagnostics go to stderr.
std::optional<Program> load_program(const std::string& path) {
  const std::optional<std::string> text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  ParseResult parsed = parse_program(*text);
  if (!parsed.ok()) {
    for (const ParseError& e : parsed.errors) {
      std::cerr << path << ": " << to_string(e) << "\n";
    }
    return std::nullopt;
  }
  return std::move(parsed.program);
}

std::optional<Device> parse_device_name(const std::string& text) {
  if (text.size() < 2) return std::nullopt;
  const std::optional<DeviceKind> kind = kind_from_letter(text[0]);
  if (!kind) return std::nullopt;
  long long index = 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
    index = index * 10 + (text[i] - '0');
    if (index > 65535) return std::nullopt;
  }
  return Device{*kind, static_cast<std::uint16_t>(index)};
}

/// Grammar: comma-separated items. Bits: `X1` (both), `X1=0`, `X1=1`,
/// `X1=0|1`. Words: `D0` (boundary set), `D0=-5..10`, `D0=1|2|3`; the 16-bit
/// boundary values are always merged into word sets. Devices not listed keep
/// their defaults from DomainSpec::default_for.
bool parse_domain_into(const std::string& text, DomainSpec& dom) {
  std::stringstream ss(text);
  std::string item;
  auto fail = [](const std::string& it, const std::string& why) {
    std::cerr << "error: bad --domain item '" << it << "': " << why << "\n";
    return false;
  };
  while (std::getline(ss, item, ',')) {
    // trim spaces
    const std::size_t b = item.find_first_not_of(" \t");
    const std::size_t e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);

    const std::size_t eq = item.find('=');
    const std::string name = item.substr(0, eq);
    const std::optional<Device> dev = parse_device_name(name);
    if (!dev) return fail(item, "expected a device name (X/Y/M/D + index)");
    const bool is_word = dev->kind == DeviceKind::D;

    if (eq == std::string::npos) {
      if (is_word) {
        dom.words[*dev] = DomainSpec::boundary_values();
      } else {
        dom.bits[*dev] = {false, true};
      }
      continue;
    }
    const std::string spec = item.substr(eq + 1);
    if (spec.empty()) return fail(item, "empty value set");

    if (!is_word) {
      std::vector<bool> values;
      std::stringstream alts(spec);
      std::string alt;
      while (std::getline(alts, alt, '|')) {
        if (alt == "0") {
          values.push_back(false);
        } else if (alt == "1") {
          values.push_back(true);
        } else {
          return fail(item, "bit values are 0 or 1");
        }
      }
      if (values.empty()) return fail(item, "empty value set");
      dom.bits[*dev] = std::move(values);
      continue;
    }

    auto parse_word = [](const std::string& tok, Word16& out) {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(tok, &used);
        if (used != tok.size() || !fits_word16(v)) return false;
        out = Word16::checked(v);
        return true;
      } catch (const std::exception&) {
        return false;
      }
    };

    std::vector<Word16> values;
    const std::size_t dots = spec.find("..");
    if (dots != std::string::npos) {
      Word16 lo{}, hi{};
      if (!parse_word(spec.substr(0, dots), lo) ||
          !parse_word(spec.substr(dots + 2), hi) || hi.value() < lo.value()) {
        return fail(item, "expected <lo>..<hi> with lo <= hi in 16-bit range");
      }
      for (int v = lo.value(); v <= hi.value(); ++v) {
        values.push_back(Word16::checked(v));
      }
    } else {
      std::stringstream alts(spec);
      std::string alt;
      while (std::getline(alts, alt, '|')) {
        Word16 w{};
        if (!parse_word(alt, w)) {
          return fail(item, "expected decimal word values in -32768..32767");
        }
        values.push_back(w);
      }
    }
    // The boundary set is always merged in so off-by-one faults can't hide.
    for (const Word16& w : DomainSpec::boundary_values()) values.push_back(w);
    std::sort(values.begin(), values.end(),
              [](Word16 a, Word16 b) { return a.value() < b.value(); });
    values.erase(std::unique(values.begin(), values.end()), values.end());
    dom.words[*dev] = std::move(values);
  }
  return true;
}

std::string init_one_line(const InitialValuation& init) {
  std::string out;
  auto add = [&](const Device& d, const std::string& v) {
    if (!out.empty()) out += ' ';
    out += to_string(d) + "=" + v;
  };
  for (const auto& [d, v] : init.state.bits) add(d, v ? "1" : "0");
  for (const auto& [d, v] : init.state.words) add(d, std::to_string(v.value()));
  return out;
}

int run_verify(const std::string& file, const VerifyOptions& opts,
               const std::string& format, const std::string& out_flag,
               bool dump_vcs) {
  const std::optional<Program> p = load_program(file);
  if (!p) return kExitConfigError;

  if (dump_vcs) {
    const ScanResult scan = run_scan_symbolic(*p, opts.mode);
    for (const Vc& vc : scan.vcs) std::cout << describe(vc) << "\n";
    return kExitProved;
  }

  VerifyResult result;
  try {
    result = verify_program(*p, file, opts);
  } catch (const smt::SolverConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  const std::string text = render_text(result.report);
  const std::string json = render_json(result.report);

  const fs::path dir = out_dir_for(file, out_flag);
  std::error_code ec;
  fs::create_directories(dir, ec);  // best effort; writes report failures
  const std::string stem = fs::path(file).stem().string();
  bool wrote = write_file(dir / (stem + ".report.txt"), text);
  wrote = write_file(dir / (stem + ".report.json"), json) && wrote;
  for (std::size_t i = 0; i < result.report.outcomes.size(); ++i) {
    const Outcome& o = result.report.outcomes[i];
    if (o.status != OutcomeStatus::Error || !o.scenario) continue;
    const std::string page = render_html(*p, *o.scenario, file);
    const fs::path path =
        dir / (stem + ".error-" + std::to_string(i + 1) + ".html");
    wrote = write_file(path, page) && wrote;
  }

  std::cout << (format == "json" ? json : text);
  if (result.spurious) {
    std::cerr << "internal inconsistency (spurious scenario): "
              << result.spurious_detail << "\n";
  }
  if (!wrote) return kExitConfigError;
  return result.exit_code();
}

int run_simulate(const std::string& file, const std::string& init_text,
                 Mode mode) {
  const std::optional<Program> p = load_program(file);
  if (!p) return kExitConfigError;
  InitialValuation init;
  try {
    init = parse_init_string(init_text, *p);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  const Trace trace = simulate_scan(*p, init, mode);
  std::cout << "initial values (scan start):\n"
            << render_init_lines(trace.init, "  ");
  std::cout << "trace:\n" << render_trace_lines(*p, trace, "  ");
  if (trace.fault) {
    std::cout << "fault: " << trace.fault->reason << " at "
              << to_string(trace.fault->location) << "\n";
  } else {
    std::cout << "scan completed without fault\n";
  }
  return kExitProved;
}

int run_oracle(const std::string& file, const std::string& domain_text,
               std::uint64_t budget, Mode mode, std::size_t list_limit) {
  const std::optional<Program> p = load_program(file);
  if (!p) return kExitConfigError;
  DomainSpec dom = DomainSpec::default_for(*p);
  if (budget != 0) dom.budget = budget;
  if (!domain_text.empty() && !parse_domain_into(domain_text, dom)) {
    return kExitConfigError;
  }
  std::vector<OracleFault> faults;
  try {
    faults = enumerate_faults(*p, dom, mode);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  std::cout << faults.size() << " faulting initial state(s) over "
            << dom.size() << " enumerated state(s)\n";
  const std::size_t shown = std::min(list_limit, faults.size());
  for (std::size_t i = 0; i < shown; ++i) {
    const OracleFault& f = faults[i];
    std::cout << "  " << init_one_line(f.init) << " -> " << f.reason << " at "
              << to_string(f.location) << "\n";
  }
  if (shown < faults.size()) {
    std::cout << "  ... " << (faults.size() - shown)
              << " more (raise --limit to list them)\n";
  }
  return kExitProved;
}

int run_render(const std::string& file, const std::string& init_text,
               Mode mode, const std::string& out_flag) {
  const std::optional<Program> p = load_program(file);
  if (!p) return kExitConfigError;
  InitialValuation init;
  try {
    init = parse_init_string(init_text, *p);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  const Trace trace = simulate_scan(*p, init, mode);
  const fs::path dir = out_dir_for(file, out_flag);
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path path = dir / (fs::path(file).stem().string() + ".svg");
  if (!write_file(path, render_svg(*p, trace))) return kExitConfigError;
  std::cout << "wrote " << path.string() << "\n";
  if (trace.fault) {
    std::cout << "fault: " << trace.fault->reason << " at "
              << to_string(trace.fault->location) << "\n";
  }
  return kExitProved;
}

int run_list_instructions(Mode mode) {
  const Registry& reg = registry(mode);
  std::cout << "callable instructions ("
            << (mode == Mode::Wrap ? "wrap" : "checked") << " mode):\n";
  for (const Instruction& ins : reg.entries()) {
    std::cout << "  " << to_string(ins.signature) << "\n";
    if (ins.preconditions.empty()) {
      std::cout << "      checks: none\n";
    }
    for (const Precondition& pre : ins.preconditions) {
      std::cout << "      checks: " << pre.text << "  [" << pre.reason.text
                << "]\n";
    }
  }
  std::cout << "contacts: LD LDI AND ANI OR ORI ANB ORB and comparison forms "
               "LD= AND< OR<> ... (relations = < > <= >= <>)\n"
            << "coils: OUT SET RST\n";
  return kExitProved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "finds runtime-error scenarios in Ladder/IL programs by checking every "
      "instruction contract along one scan with an SMT solver"};
  app.set_version_flag("--version",
                       std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  // ---- verify -------------------------------------------------------------
  std::string v_file, v_solver, v_format = "text", v_out;
  std::vector<std::string> v_solver_args;
  int v_timeout = 10000, v_jobs = 1;
  bool v_all = false, v_wrap = false, v_dump = false;
  CLI::App* verify =
      app.add_subcommand("verify", "prove every instruction call safe or "
                                   "produce a concrete error scenario");
  verify->add_option("file", v_file, "ladder program (.lad)")->required();
  verify->add_flag("--all", v_all,
                   "check every condition instead of stopping at the first "
                   "confirmed error");
  verify->add_flag("--wrap", v_wrap,
                   "16-bit wraparound semantics for arithmetic (overflow "
                   "checks off, BCD/BIN/DIV checks stay)");
  verify->add_option("--solver", v_solver,
                     "SMT solver executable (default: $LADDER_VERIFY_SOLVER, "
                     "then 'z3')");
  verify->add_option("--solver-arg", v_solver_args,
                     "extra argument passed to the solver (repeatable)");
  verify->add_option("--timeout", v_timeout,
                     "per-condition solver timeout in ms (default 10000)");
  verify->add_option("--jobs", v_jobs,
                     "concurrent solver processes (never changes output)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--format", v_format, "stdout format")
      ->check(CLI::IsMember({"text", "json", "html"}));
  verify->add_option("--out", v_out,
                     "directory for report files (default: the input's)");
  verify->add_flag("--dump-vcs", v_dump,
                   "print the verification conditions and exit");

  // ---- simulate -----------------------------------------------------------
  std::string s_file, s_init;
  bool s_wrap = false;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "run one scan concretely from a given initial state");
  simulate->add_option("file", s_file, "ladder program (.lad)")->required();
  simulate
      ->add_option("--init", s_init,
                   "initial values, e.g. \"X1=1,D0=9999\" (bits 0/1, words "
                   "decimal; unlisted devices start at 0)")
      ->required();
  simulate->add_flag("--wrap", s_wrap, "16-bit wraparound semantics");

  // ---- oracle -------------------------------------------------------------
  std::string o_file, o_domain;
  std::uint64_t o_budget = 0;
  std::size_t o_limit = 20;
  bool o_wrap = false;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "exhaustively simulate every initial state in a finite "
                "domain and list the faulting ones");
  oracle->add_option("file", o_file, "ladder program (.lad)")->required();
  oracle->add_option(
      "--domain", o_domain,
      "per-device value sets, e.g. \"X1,D0=-5..10\" or \"D0=1|2|3\"; 16-bit "
      "boundary values are always added to word sets");
  oracle->add_option("--budget", o_budget,
                     "maximum number of states (default 2^22)");
  oracle->add_option("--limit", o_limit,
                     "maximum faulting states to list (default 20)");
  oracle->add_flag("--wrap", o_wrap, "16-bit wraparound semantics");

  // ---- render -------------------------------------------------------------
  std::string r_file, r_init, r_out;
  bool r_wrap = false;
  CLI::App* render = app.add_subcommand(
      "render", "simulate one scan and write the colored ladder SVG");
  render->add_option("file", r_file, "ladder program (.lad)")->required();
  render
      ->add_option("--init", r_init,
                   "initial values, e.g. \"X1=1,D0=9999\"")
      ->required();
  render->add_flag("--wrap", r_wrap, "16-bit wraparound semantics");
  render->add_option("--out", r_out,
                     "directory for the SVG (default: the input's)");

  // ---- list-instructions --------------------------------------------------
  bool l_wrap = false;
  CLI::App* list = app.add_subcommand(
      "list-instructions", "print the instruction contracts");
  list->add_flag("--wrap", l_wrap, "show the wrap-mode contracts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage diagnostic
    return kExitConfigError;
  }

  if (verify->parsed()) {
    VerifyOptions opts;
    opts.solver.executable = resolve_solver(v_solver);
    opts.solver.extra_args = v_solver_args;
    opts.solver.timeout_ms = v_timeout;
    opts.mode = v_wrap ? Mode::Wrap : Mode::Checked;
    opts.all_vcs = v_all;
    opts.jobs = v_jobs;
    return run_verify(v_file, opts, v_format, v_out, v_dump);
  }
  if (simulate->parsed()) {
    return run_simulate(s_file, s_init, s_wrap ? Mode::Wrap : Mode::Checked);
  }
  if (oracle->parsed()) {
    return run_oracle(o_file, o_domain, o_budget,
                      o_wrap ? Mode::Wrap : Mode::Checked, o_limit);
  }
  if (render->parsed()) {
    return run_render(r_file, r_init, r_wrap ? Mode::Wrap : Mode::Checked,
                      r_out);
  }
  return run_list_instructions(l_wrap ? Mode::Wrap : Mode::Checked);
}
