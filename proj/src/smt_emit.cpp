#include <algorithm>
#include <cctype>
#include <sstream>

#include "ladver/smt.hpp"

namespace ladver::smt {

SolverVerdict SolverVerdict::sat(Model m) {
  SolverVerdict v;
  v.kind = Kind::Sat;
  v.model = std::move(m);
  return v;
}

SolverVerdict SolverVerdict::unsat() {
  SolverVerdict v;
  v.kind = Kind::Unsat;
  return v;
}

SolverVerdict SolverVerdict::unknown(UnknownReason r, std::string detail) {
  SolverVerdict v;
  v.kind = Kind::Unknown;
  v.unknown_reason = r;
  v.detail = std::move(detail);
  return v;
}

std::string to_string(UnknownReason r) {
  switch (r) {
    case UnknownReason::Timeout: return "timeout";
    case UnknownReason::SolverReported: return "solver-reported";
    case UnknownReason::ProtocolError: return "protocol-error";
  }
  return "?";
}

std::string emit_smtlib(const Vc& vc) {
  sym::Ref closed = inline_vc(vc);
  if (closed->sort != sym::Sort::Bool) {
    throw UnsupportedTerm("emit_smtlib: VC formula is not boolean-sorted");
  }

  std::ostringstream os;
  // Deliberately no (set-logic ...): the VCs are quantifier-free integer
  // arithmetic plus div/mod by constants, and z3's auto mode dispatches that
  // several times faster than its forced QF_LIA/QF_NIA tactics (measured 4s
  // vs 19s on BCD/BIN proofs). Solvers that insist on a declared logic can be
  // given one via --solver-arg (e.g. cvc5 --force-logic=ALL).
  os << "(set-option :produce-models true)\n";

  // free_vars is a std::map, so declarations come out name-sorted: the
  // script is deterministic for identical VCs.
  for (const auto& [name, sort] : sym::free_vars(closed)) {
    if (sort == sym::Sort::Int) {
      os << "(declare-const " << name << " Int)\n";
      os << "(assert (and (<= (- 32768) " << name << ") (<= " << name
         << " 32767)))\n";
    } else {
      os << "(declare-const " << name << " Bool)\n";
    }
  }

  os << "(assert ";
  sym::print_smt(os, closed);
  os << ")\n(check-sat)\n(get-model)\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Model parsing: a tiny S-expression reader, tolerant of both the wrapped
// `(model (define-fun ...))` form and the bare list newer solvers print.

namespace {

struct SExpr {
  bool is_atom = false;
  std::string atom;
  std::vector<SExpr> list;
};

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos])) != 0) {
        ++pos;
      } else if (text[pos] == ';') {  // comment to end of line
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }
};

std::optional<SExpr> parse_one(Cursor& c) {
  c.skip_space();
  if (c.pos >= c.text.size()) return std::nullopt;

  if (c.text[c.pos] == '(') {
    ++c.pos;
    SExpr node;
    while (true) {
      c.skip_space();
      if (c.pos >= c.text.size()) return std::nullopt;  // unbalanced
      if (c.text[c.pos] == ')') {
        ++c.pos;
        return node;
      }
      auto kid = parse_one(c);
      if (!kid) return std::nullopt;
      node.list.push_back(std::move(*kid));
    }
  }
  if (c.text[c.pos] == ')') return std::nullopt;  // stray close

  SExpr node;
  node.is_atom = true;
  if (c.text[c.pos] == '|') {  // quoted symbol
    std::size_t end = c.text.find('|', c.pos + 1);
    if (end == std::string::npos) return std::nullopt;
    node.atom = c.text.substr(c.pos + 1, end - c.pos - 1);
    c.pos = end + 1;
    return node;
  }
  if (c.text[c.pos] == '"') {  // string literal, kept verbatim
    std::size_t end = c.text.find('"', c.pos + 1);
    if (end == std::string::npos) return std::nullopt;
    node.atom = c.text.substr(c.pos, end - c.pos + 1);
    c.pos = end + 1;
    return node;
  }
  std::size_t start = c.pos;
  while (c.pos < c.text.size() &&
         std::isspace(static_cast<unsigned char>(c.text[c.pos])) == 0 &&
         c.text[c.pos] != '(' && c.text[c.pos] != ')') {
    ++c.pos;
  }
  node.atom = c.text.substr(start, c.pos - start);
  return node;
}

bool parse_integer(const SExpr& e, long long& out) {
  if (e.is_atom) {
    const std::string& s = e.atom;
    std::size_t i = (s.size() > 1 && s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    for (std::size_t k = i; k < s.size(); ++k) {
      if (std::isdigit(static_cast<unsigned char>(s[k])) == 0) return false;
    }
    out = std::stoll(s);
    return true;
  }
  // (- 5)
  if (e.list.size() == 2 && e.list[0].is_atom && e.list[0].atom == "-") {
    long long inner = 0;
    if (!parse_integer(e.list[1], inner)) return false;
    out = -inner;
    return true;
  }
  return false;
}

// Extracts (define-fun name () Sort value) bindings anywhere in the tree.
bool collect_defines(const SExpr& e, Model& model) {
  if (e.is_atom) return true;
  if (!e.list.empty() && e.list[0].is_atom && e.list[0].atom == "define-fun") {
    if (e.list.size() != 5) return false;
    const SExpr& name = e.list[1];
    const SExpr& args = e.list[2];
    const SExpr& sort = e.list[3];
    const SExpr& value = e.list[4];
    if (!name.is_atom || !sort.is_atom) return false;
    if (args.is_atom || !args.list.empty()) return true;  // function: not ours
    if (sort.atom == "Bool") {
      if (!value.is_atom || (value.atom != "true" && value.atom != "false")) {
        return false;
      }
      model.values[name.atom] = sym::Value::of_bool(value.atom == "true");
      return true;
    }
    if (sort.atom == "Int") {
      long long v = 0;
      if (!parse_integer(value, v)) return false;
      model.values[name.atom] = sym::Value::of_int(v);
      return true;
    }
    return true;  // other sorts: not ours, ignore
  }
  for (const SExpr& kid : e.list) {
    if (!collect_defines(kid, model)) return false;
  }
  return true;
}

}  // namespace

std::optional<Model> parse_model(const std::string& text) {
  Cursor c{text};
  Model model;
  while (true) {
    c.skip_space();
    if (c.pos >= c.text.size()) break;
    auto node = parse_one(c);
    if (!node) return std::nullopt;
    // A model listing is parenthesized groups all the way down at the top
    // level; a bare atom here means we are reading something else entirely,
    // and treating it as an empty model would hide the protocol error.
    if (node->is_atom) return std::nullopt;
    if (!collect_defines(*node, model)) return std::nullopt;
  }
  return model;
}

std::string print_model(const Model& m) {
  std::ostringstream os;
  os << "(model\n";
  for (const auto& [name, value] : m.values) {
    os << "  (define-fun " << name << " () ";
    if (value.sort == sym::Sort::Bool) {
      os << "Bool " << (value.b ? "true" : "false");
    } else {
      os << "Int ";
      if (value.i < 0) {
        os << "(- " << -value.i << ")";
      } else {
        os << value.i;
      }
    }
    os << ")\n";
  }
  os << ")\n";
  return os.str();
}

SolverVerdict parse_solver_output(const std::string& text) {
  // Find the verdict line; solvers may interleave (error ...) noise.
  std::size_t pos = 0;
  std::string first_error;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string line = text.substr(
        pos, eol == std::string::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string::npos ? text.size() + 1 : eol + 1;

    // trim
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);

    if (line == "sat") {
      auto model = parse_model(text.substr(pos));
      if (!model) {
        return SolverVerdict::unknown(UnknownReason::ProtocolError,
                                      "sat answer with unparseable model");
      }
      return SolverVerdict::sat(std::move(*model));
    }
    if (line == "unsat") return SolverVerdict::unsat();
    if (line == "unknown") {
      return SolverVerdict::unknown(UnknownReason::SolverReported,
                                    "solver answered unknown");
    }
    if (first_error.empty() && line.rfind("(error", 0) == 0) {
      first_error = line;
    }
  }
  return SolverVerdict::unknown(
      UnknownReason::ProtocolError,
      first_error.empty() ? "no sat/unsat/unknown answer in solver output"
                          : first_error);
}

SolverVerdict check(const Vc& vc, const SolverConfig& cfg) {
  const std::string script = emit_smtlib(vc);
  RunResult run = run_solver(script, cfg);
  if (run.timed_out) {
    return SolverVerdict::unknown(
        UnknownReason::Timeout,
        "solver exceeded " + std::to_string(std::max(cfg.timeout_ms, 100)) +
            " ms and was killed");
  }
  SolverVerdict verdict = parse_solver_output(run.out);
  if (verdict.kind == SolverVerdict::Kind::Unknown &&
      verdict.unknown_reason == UnknownReason::ProtocolError) {
    std::string detail = verdict.detail + " (exit code " +
                         std::to_string(run.exit_code) + ")";
    if (!run.err.empty()) {
      detail += "; stderr: " + run.err.substr(0, 400);
    }
    return SolverVerdict::unknown(UnknownReason::ProtocolError, detail);
  }
  return verdict;
}

}  // namespace ladver::smt
