#include "ladver/symexpr.hpp"

#include <cassert>
#include <set>
#include <sstream>

namespace ladver::sym {

namespace {

Ref make(Op op, Sort sort, std::vector<Ref> kids) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->sort = sort;
  e->kids = std::move(kids);
  return e;
}

}  // namespace

Ref int_const(long long v) {
  auto e = std::make_shared<Expr>();
  e->op = Op::IntConst;
  e->sort = Sort::Int;
  e->ival = v;
  return e;
}

Ref bool_const(bool b) {
  auto e = std::make_shared<Expr>();
  e->op = Op::BoolConst;
  e->sort = Sort::Bool;
  e->bval = b;
  return e;
}

Ref var(std::string name, Sort sort) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Var;
  e->sort = sort;
  e->name = std::move(name);
  return e;
}

Ref add(Ref a, Ref b) { return make(Op::Add, Sort::Int, {std::move(a), std::move(b)}); }
Ref sub(Ref a, Ref b) { return make(Op::Sub, Sort::Int, {std::move(a), std::move(b)}); }
Ref mul(Ref a, Ref b) { return make(Op::Mul, Sort::Int, {std::move(a), std::move(b)}); }
Ref ediv(Ref a, Ref b) { return make(Op::Div, Sort::Int, {std::move(a), std::move(b)}); }
Ref emod(Ref a, Ref b) { return make(Op::Mod, Sort::Int, {std::move(a), std::move(b)}); }
Ref neg(Ref a) { return make(Op::Neg, Sort::Int, {std::move(a)}); }

Ref not_of(Ref a) {
  if (a->op == Op::Not) return a->kids[0];
  return make(Op::Not, Sort::Bool, {std::move(a)});
}

Ref and_of(std::vector<Ref> kids) {
  if (kids.empty()) return bool_const(true);
  if (kids.size() == 1) return kids[0];
  return make(Op::And, Sort::Bool, std::move(kids));
}

Ref or_of(std::vector<Ref> kids) {
  if (kids.empty()) return bool_const(false);
  if (kids.size() == 1) return kids[0];
  return make(Op::Or, Sort::Bool, std::move(kids));
}

Ref implies(Ref a, Ref b) { return make(Op::Implies, Sort::Bool, {std::move(a), std::move(b)}); }

Ref eq(Ref a, Ref b) { return make(Op::Eq, Sort::Bool, {std::move(a), std::move(b)}); }
Ref ne(Ref a, Ref b) { return make(Op::Ne, Sort::Bool, {std::move(a), std::move(b)}); }
Ref lt(Ref a, Ref b) { return make(Op::Lt, Sort::Bool, {std::move(a), std::move(b)}); }
Ref le(Ref a, Ref b) { return make(Op::Le, Sort::Bool, {std::move(a), std::move(b)}); }
Ref gt(Ref a, Ref b) { return make(Op::Gt, Sort::Bool, {std::move(a), std::move(b)}); }
Ref ge(Ref a, Ref b) { return make(Op::Ge, Sort::Bool, {std::move(a), std::move(b)}); }

Ref ite(Ref c, Ref t, Ref e) {
  Sort s = t->sort;
  return make(Op::Ite, s, {std::move(c), std::move(t), std::move(e)});
}

Ref let_in(std::string name, Ref bound, Ref body) {
  auto e = std::make_shared<Expr>();
  e->op = Op::Let;
  e->sort = body->sort;
  e->name = std::move(name);
  e->kids = {std::move(bound), std::move(body)};
  return e;
}

Ref compare(int rel_tag, Ref a, Ref b) {
  switch (rel_tag) {
    case 0: return eq(std::move(a), std::move(b));
    case 1: return lt(std::move(a), std::move(b));
    case 2: return gt(std::move(a), std::move(b));
    case 3: return le(std::move(a), std::move(b));
    case 4: return ge(std::move(a), std::move(b));
    case 5: return ne(std::move(a), std::move(b));
  }
  throw std::logic_error("compare: bad relation tag");
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Scope;
using ScopePtr = std::shared_ptr<const Scope>;

struct Thunk {
  Ref expr;
  ScopePtr env;
  mutable std::optional<Value> cached;
};

struct Scope {
  std::string name;
  std::shared_ptr<Thunk> thunk;
  ScopePtr parent;
};

long long euclid_div(long long a, long long b) {
  if (b == 0) throw EvalError("division by zero reached during evaluation");
  long long q = a / b;
  long long r = a % b;
  if (r < 0) q += (b > 0) ? -1 : 1;
  return q;
}

long long euclid_mod(long long a, long long b) {
  if (b == 0) throw EvalError("modulo by zero reached during evaluation");
  long long r = a % b;
  if (r < 0) r += (b > 0) ? b : -b;
  return r;
}

Value eval_rec(const Ref& e, const ScopePtr& env, const VarLookup& lookup);

Value force(const Thunk& t, const VarLookup& lookup) {
  if (!t.cached) t.cached = eval_rec(t.expr, t.env, lookup);
  return *t.cached;
}

long long eval_int(const Ref& e, const ScopePtr& env, const VarLookup& lookup) {
  Value v = eval_rec(e, env, lookup);
  if (v.sort != Sort::Int) throw EvalError("expected Int operand");
  return v.i;
}

bool eval_bool(const Ref& e, const ScopePtr& env, const VarLookup& lookup) {
  Value v = eval_rec(e, env, lookup);
  if (v.sort != Sort::Bool) throw EvalError("expected Bool operand");
  return v.b;
}

Value eval_rec(const Ref& e, const ScopePtr& env, const VarLookup& lookup) {
  switch (e->op) {
    case Op::IntConst: return Value::of_int(e->ival);
    case Op::BoolConst: return Value::of_bool(e->bval);
    case Op::Var: {
      for (const Scope* s = env.get(); s != nullptr; s = s->parent.get()) {
        if (s->name == e->name) return force(*s->thunk, lookup);
      }
      if (auto v = lookup(e->name)) return *v;
      throw EvalError("unbound variable: " + e->name);
    }
    case Op::Add: return Value::of_int(eval_int(e->kids[0], env, lookup) + eval_int(e->kids[1], env, lookup));
    case Op::Sub: return Value::of_int(eval_int(e->kids[0], env, lookup) - eval_int(e->kids[1], env, lookup));
    case Op::Mul: return Value::of_int(eval_int(e->kids[0], env, lookup) * eval_int(e->kids[1], env, lookup));
    case Op::Div:
      return Value::of_int(euclid_div(eval_int(e->kids[0], env, lookup), eval_int(e->kids[1], env, lookup)));
    case Op::Mod:
      return Value::of_int(euclid_mod(eval_int(e->kids[0], env, lookup), eval_int(e->kids[1], env, lookup)));
    case Op::Neg: return Value::of_int(-eval_int(e->kids[0], env, lookup));
    case Op::Not: return Value::of_bool(!eval_bool(e->kids[0], env, lookup));
    case Op::And: {
      for (const Ref& k : e->kids) {
        if (!eval_bool(k, env, lookup)) return Value::of_bool(false);
      }
      return Value::of_bool(true);
    }
    case Op::Or: {
      for (const Ref& k : e->kids) {
        if (eval_bool(k, env, lookup)) return Value::of_bool(true);
      }
      return Value::of_bool(false);
    }
    case Op::Implies: {
      if (!eval_bool(e->kids[0], env, lookup)) return Value::of_bool(true);
      return Value::of_bool(eval_bool(e->kids[1], env, lookup));
    }
    case Op::Eq: {
      Value a = eval_rec(e->kids[0], env, lookup);
      Value b = eval_rec(e->kids[1], env, lookup);
      if (a.sort != b.sort) throw EvalError("sort mismatch in =");
      return Value::of_bool(a.sort == Sort::Int ? a.i == b.i : a.b == b.b);
    }
    case Op::Ne: {
      Value a = eval_rec(e->kids[0], env, lookup);
      Value b = eval_rec(e->kids[1], env, lookup);
      if (a.sort != b.sort) throw EvalError("sort mismatch in distinct");
      return Value::of_bool(a.sort == Sort::Int ? a.i != b.i : a.b != b.b);
    }
    case Op::Lt: return Value::of_bool(eval_int(e->kids[0], env, lookup) < eval_int(e->kids[1], env, lookup));
    case Op::Le: return Value::of_bool(eval_int(e->kids[0], env, lookup) <= eval_int(e->kids[1], env, lookup));
    case Op::Gt: return Value::of_bool(eval_int(e->kids[0], env, lookup) > eval_int(e->kids[1], env, lookup));
    case Op::Ge: return Value::of_bool(eval_int(e->kids[0], env, lookup) >= eval_int(e->kids[1], env, lookup));
    case Op::Ite: {
      // Lazy branches: untaken guards may contain divisions that only make
      // sense when the condition holds.
      if (eval_bool(e->kids[0], env, lookup)) return eval_rec(e->kids[1], env, lookup);
      return eval_rec(e->kids[2], env, lookup);
    }
    case Op::Let: {
      auto scope = std::make_shared<Scope>();
      scope->name = e->name;
      scope->thunk = std::make_shared<Thunk>(Thunk{e->kids[0], env, std::nullopt});
      scope->parent = env;
      return eval_rec(e->kids[1], scope, lookup);
    }
  }
  throw EvalError("unhandled expression kind");
}

}  // namespace

Value eval(const Ref& e, const VarLookup& lookup) {
  return eval_rec(e, nullptr, lookup);
}

// ---------------------------------------------------------------------------
// Free variables and classification

namespace {

void free_vars_rec(const Ref& e, std::set<std::string>& bound,
                   std::map<std::string, Sort>& out) {
  switch (e->op) {
    case Op::Var:
      if (!bound.contains(e->name)) out.emplace(e->name, e->sort);
      return;
    case Op::Let: {
      free_vars_rec(e->kids[0], bound, out);
      bool was_bound = bound.contains(e->name);
      bound.insert(e->name);
      free_vars_rec(e->kids[1], bound, out);
      if (!was_bound) bound.erase(e->name);
      return;
    }
    default:
      for (const Ref& k : e->kids) free_vars_rec(k, bound, out);
  }
}

bool is_const_int(const Ref& e) { return e->op == Op::IntConst; }

}  // namespace

std::map<std::string, Sort> free_vars(const Ref& e) {
  std::map<std::string, Sort> out;
  std::set<std::string> bound;
  free_vars_rec(e, bound, out);
  return out;
}

bool needs_nonlinear(const Ref& e) {
  if (e->op == Op::Mul && !is_const_int(e->kids[0]) && !is_const_int(e->kids[1])) return true;
  if ((e->op == Op::Div || e->op == Op::Mod) && !is_const_int(e->kids[1])) return true;
  for (const Ref& k : e->kids) {
    if (needs_nonlinear(k)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// SMT-LIB printing

namespace {

void print_int_literal(std::ostream& os, long long v) {
  if (v < 0) {
    os << "(- " << -v << ")";
  } else {
    os << v;
  }
}

const char* op_symbol(Op op) {
  switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "div";
    case Op::Mod: return "mod";
    case Op::Not: return "not";
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Implies: return "=>";
    case Op::Eq: return "=";
    case Op::Ne: return "distinct";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::Ite: return "ite";
    default: return nullptr;
  }
}

}  // namespace

void print_smt(std::ostream& os, const Ref& e) {
  switch (e->op) {
    case Op::IntConst:
      print_int_literal(os, e->ival);
      return;
    case Op::BoolConst:
      os << (e->bval ? "true" : "false");
      return;
    case Op::Var:
      os << e->name;
      return;
    case Op::Neg:
      os << "(- ";
      print_smt(os, e->kids[0]);
      os << ")";
      return;
    case Op::Let:
      os << "(let ((" << e->name << " ";
      print_smt(os, e->kids[0]);
      os << ")) ";
      print_smt(os, e->kids[1]);
      os << ")";
      return;
    default: {
      const char* sym = op_symbol(e->op);
      assert(sym != nullptr);
      os << "(" << sym;
      for (const Ref& k : e->kids) {
        os << " ";
        print_smt(os, k);
      }
      os << ")";
      return;
    }
  }
}

std::string to_smt(const Ref& e) {
  std::ostringstream os;
  print_smt(os, e);
  return os.str();
}

}  // namespace ladver::sym
