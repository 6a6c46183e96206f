#include "ladver/parser.hpp"

#include <algorithm>
#include <cctype>

#include "ladver/instructions.hpp"

namespace ladver {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

// Digits -> value, capped just past the 16-bit range so huge inputs cannot
// overflow long long while still being reported as out of range.
long long digits_value(std::string_view digits) {
  long long v = 0;
  for (char c : digits) {
    v = v * 10 + (c - '0');
    if (v > 100000) return v;
  }
  return v;
}

std::optional<CmpRel> rel_from(std::string_view s) {
  if (s == "=") return CmpRel::Eq;
  if (s == "<") return CmpRel::Lt;
  if (s == ">") return CmpRel::Gt;
  if (s == "<=") return CmpRel::Le;
  if (s == ">=") return CmpRel::Ge;
  if (s == "<>") return CmpRel::Ne;
  return std::nullopt;
}

struct Token {
  std::string_view text;
  int column = 1;  // 1-based column in the source line
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (is_space(line[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    tokens.push_back(Token{line.substr(start, i - start),
                           static_cast<int>(start) + 1});
  }
  return tokens;
}

struct LineContext {
  int line_number = 0;
  std::string statement;  // trimmed text, comment stripped
  std::vector<ParseError>* errors = nullptr;

  void error(const Token& tok, DiagKind kind, std::string message) const {
    errors->push_back(ParseError{
        SourceSpan{line_number, tok.column, statement}, kind,
        std::move(message)});
  }
};

std::optional<Operand> parse_operand(const Token& tok, const LineContext& ctx,
                                     const AddressLimits& limits) {
  const std::string_view text = tok.text;
  const char head = text[0];

  if (head == 'K' || head == 'k') {
    std::string_view num = text.substr(1);
    const bool negative = !num.empty() && num[0] == '-';
    std::string_view digits = negative ? num.substr(1) : num;
    if (!all_digits(digits)) {
      ctx.error(tok, DiagKind::BadOperand,
                "bad operand '" + std::string(text) +
                    "': constants are decimal K-32768..K32767");
      return std::nullopt;
    }
    long long value = digits_value(digits);
    if (negative) value = -value;
    if (!fits_word16(value)) {
      ctx.error(tok, DiagKind::ConstantOutOfRange,
                "constant '" + std::string(text) +
                    "' outside K-32768..K32767");
      return std::nullopt;
    }
    return Operand::constant(Word16::checked(value));
  }

  if (auto kind = kind_from_letter(head)) {
    std::string_view digits = text.substr(1);
    if (!all_digits(digits)) {
      ctx.error(tok, DiagKind::BadOperand,
                "bad operand '" + std::string(text) +
                    "': expected a device index after '" +
                    std::string(1, head) + "'");
      return std::nullopt;
    }
    long long index = digits_value(digits);
    if (index >= limits.bound(*kind)) {
      ctx.error(tok, DiagKind::IndexOutOfRange,
                "'" + std::string(text) + "': index exceeds address bound " +
                    std::to_string(limits.bound(*kind)));
      return std::nullopt;
    }
    return Operand::device(Device{*kind, static_cast<std::uint16_t>(index)});
  }

  ctx.error(tok, DiagKind::BadOperand,
            "bad operand '" + std::string(text) +
                "': expected a device (X/Y/M/D) or K constant");
  return std::nullopt;
}

// Resolves a mnemonic token to a step head (operands still to be attached).
// Emits UnknownMnemonic and returns nullopt when the token means nothing.
std::optional<Step> parse_mnemonic(const Token& tok, const LineContext& ctx) {
  const std::string_view text = tok.text;
  std::size_t alpha = 0;
  while (alpha < text.size() &&
         std::isalpha(static_cast<unsigned char>(text[alpha])) != 0) {
    ++alpha;
  }
  const std::string base = upper(text.substr(0, alpha));
  const std::string_view rest = text.substr(alpha);

  Step step;
  if (!rest.empty()) {
    // Comparison contact: LD= / AND< / OR<> and friends.
    auto rel = rel_from(rest);
    StepOp op;
    if (base == "LD") op = StepOp::CmpLd;
    else if (base == "AND") op = StepOp::CmpAnd;
    else if (base == "OR") op = StepOp::CmpOr;
    else rel = std::nullopt;
    if (!rel) {
      ctx.error(tok, DiagKind::UnknownMnemonic,
                "unknown mnemonic '" + std::string(text) + "'");
      return std::nullopt;
    }
    step.op = op;
    step.rel = *rel;
    return step;
  }

  if (base == "LD") step.op = StepOp::Ld;
  else if (base == "LDI") step.op = StepOp::Ldi;
  else if (base == "AND") step.op = StepOp::And;
  else if (base == "ANI") step.op = StepOp::Ani;
  else if (base == "OR") step.op = StepOp::Or;
  else if (base == "ORI") step.op = StepOp::Ori;
  else if (base == "ANB") step.op = StepOp::Anb;
  else if (base == "ORB") step.op = StepOp::Orb;
  else if (base == "OUT") step.op = StepOp::Out;
  else if (base == "SET") step.op = StepOp::Set;
  else if (base == "RST") step.op = StepOp::Rst;
  else if (find_callable(base) != nullptr) {
    step.op = StepOp::Call;
    step.callee = base;
  } else {
    ctx.error(tok, DiagKind::UnknownMnemonic,
              "unknown mnemonic '" + std::string(text) + "'");
    return std::nullopt;
  }
  return step;
}

}  // namespace

ParseResult parse_program(std::string_view text, const ParseOptions& options) {
  ParseResult result;
  std::vector<Step> steps;
  std::vector<SourceSpan> spans;  // per lexed step, survives the move below

  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_number;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    std::string_view content = line.substr(0, line.find(';'));
    std::vector<Token> tokens = tokenize(content);
    if (tokens.empty()) continue;

    std::size_t stmt_end = tokens.back().column - 1 + tokens.back().text.size();
    std::size_t stmt_begin = tokens.front().column - 1;
    LineContext ctx{line_number,
                    std::string(content.substr(stmt_begin, stmt_end - stmt_begin)),
                    &result.errors};

    auto step = parse_mnemonic(tokens[0], ctx);
    if (!step) continue;

    bool operands_ok = true;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      auto op = parse_operand(tokens[t], ctx, options.limits);
      if (op) {
        step->operands.push_back(*op);
      } else {
        operands_ok = false;  // keep scanning the line for more diagnostics
      }
    }
    if (!operands_ok) continue;

    step->span = SourceSpan{line_number, tokens[0].column, ctx.statement};
    spans.push_back(step->span);
    steps.push_back(std::move(*step));
  }

  // Structural pass: stack discipline, arity, sorts, bounds. Runs even after
  // lexical errors so one pass reports everything it can.
  auto built = Program::create(std::move(steps), options.limits);
  for (const BuildIssue& issue : built.issues) {
    const SourceSpan& span = spans[static_cast<std::size_t>(issue.step_pos)];
    result.errors.push_back(ParseError{span, issue.kind, issue.message});
  }
  if (result.errors.empty()) {
    result.program = std::move(built.program);
  }
  return result;
}

std::vector<ParseError> validate(const Program& p) {
  auto rebuilt = Program::create(p.steps(), p.limits());
  std::vector<ParseError> errors;
  for (const BuildIssue& issue : rebuilt.issues) {
    const Step& step = p.steps()[static_cast<std::size_t>(issue.step_pos)];
    errors.push_back(ParseError{step.span, issue.kind, issue.message});
  }
  return errors;
}

std::string to_string(const ParseError& e) {
  return "line " + std::to_string(e.span.line) + ", col " +
         std::to_string(e.span.column) + ": " + to_string(e.kind) + ": " +
         e.message;
}

std::string pretty_print(const Program& p) {
  std::string out;
  for (int r = 0; r < p.rung_count(); ++r) {
    if (r > 0) out += '\n';
    const Rung& rung = p.rungs()[static_cast<std::size_t>(r)];
    for (int i = rung.first; i < rung.end; ++i) {
      const Step& s = p.steps()[static_cast<std::size_t>(i)];
      std::string line =
          s.op == StepOp::Call ? s.callee : step_name(s.op);
      if (s.op == StepOp::CmpLd || s.op == StepOp::CmpAnd ||
          s.op == StepOp::CmpOr) {
        line += to_string(s.rel);
      }
      for (const Operand& operand : s.operands) {
        line += ' ';
        line += to_string(operand);
      }
      out += line;
      out += '\n';
    }
  }
  return out;
}

}  // namespace ladver
