#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ladver::sym {

enum class Sort : unsigned char { Int, Bool };

struct Expr;
using Ref = std::shared_ptr<const Expr>;

enum class Op : unsigned char {
  IntConst,
  BoolConst,
  Var,
  Add,
  Sub,
  Mul,
  Div,  // SMT-LIB Euclidean division
  Mod,  // SMT-LIB Euclidean remainder, always in [0, |divisor|)
  Neg,
  Not,
  And,  // n-ary
  Or,   // n-ary
  Implies,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Ite,
  Let,  // kids = {bound, body}; name is the bound symbol
};

struct Expr {
  Op op;
  Sort sort;
  long long ival = 0;
  bool bval = false;
  std::string name;       // Var and Let
  std::vector<Ref> kids;
};

Ref int_const(long long v);
Ref bool_const(bool b);
Ref var(std::string name, Sort sort);

Ref add(Ref a, Ref b);
Ref sub(Ref a, Ref b);
Ref mul(Ref a, Ref b);
Ref ediv(Ref a, Ref b);
Ref emod(Ref a, Ref b);
Ref neg(Ref a);

Ref not_of(Ref a);
Ref and_of(std::vector<Ref> kids);  // flattens to true/kid when trivial
Ref or_of(std::vector<Ref> kids);
Ref implies(Ref a, Ref b);

Ref eq(Ref a, Ref b);
Ref ne(Ref a, Ref b);
Ref lt(Ref a, Ref b);
Ref le(Ref a, Ref b);
Ref gt(Ref a, Ref b);
Ref ge(Ref a, Ref b);

Ref ite(Ref c, Ref t, Ref e);
Ref let_in(std::string name, Ref bound, Ref body);

// Comparison by relation tag shared with the comparison-contact steps.
Ref compare(int rel_tag, Ref a, Ref b);

struct Value {
  Sort sort = Sort::Int;
  long long i = 0;
  bool b = false;

  static Value of_int(long long v) { return {Sort::Int, v, false}; }
  static Value of_bool(bool v) { return {Sort::Bool, 0, v}; }

  friend bool operator==(const Value&, const Value&) = default;
};

/// Environment giving values to free variables, by SMT name.
using VarLookup = std::function<std::optional<Value>(const std::string&)>;

// Evaluates with SMT-LIB semantics: Euclidean div/mod, short-circuit and/or,
// lazy ite branches, lazily bound lets. Throws EvalError on unbound variables
// or on a division by zero that is actually reached.
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Value eval(const Ref& e, const VarLookup& lookup);

// Free variables (name -> sort), honoring let scoping.
std::map<std::string, Sort> free_vars(const Ref& e);

// True if the formula needs QF_NIA: a multiplication of two non-constant
// terms, or div/mod with a non-constant divisor.
bool needs_nonlinear(const Ref& e);

void print_smt(std::ostream& os, const Ref& e);
std::string to_smt(const Ref& e);

}  // namespace ladver::sym
