#include "doctest.h"
#include "ladver/symexpr.hpp"

using namespace ladver::sym;

namespace {

VarLookup none() {
  return [](const std::string&) { return std::optional<Value>{}; };
}

VarLookup one_int(std::string name, long long v) {
  return [name = std::move(name), v](const std::string& q) {
    return q == name ? std::optional<Value>{Value::of_int(v)}
                     : std::optional<Value>{};
  };
}

long long ieval(const Ref& e, const VarLookup& env = none()) {
  Value v = eval(e, env);
  REQUIRE(v.sort == Sort::Int);
  return v.i;
}

bool beval(const Ref& e, const VarLookup& env = none()) {
  Value v = eval(e, env);
  REQUIRE(v.sort == Sort::Bool);
  return v.b;
}

}  // namespace

TEST_SUITE("symexpr") {

TEST_CASE("div and mod are Euclidean: remainder always in [0, |b|)") {
  auto q = [](long long a, long long b) {
    return ieval(ediv(int_const(a), int_const(b)));
  };
  auto r = [](long long a, long long b) {
    return ieval(emod(int_const(a), int_const(b)));
  };
  CHECK(q(7, 2) == 3);
  CHECK(r(7, 2) == 1);
  CHECK(q(-7, 2) == -4);  // Euclidean, not truncating
  CHECK(r(-7, 2) == 1);
  CHECK(q(7, -2) == -3);
  CHECK(r(7, -2) == 1);
  CHECK(q(-7, -2) == 4);
  CHECK(r(-7, -2) == 1);
  CHECK(q(-8, 2) == -4);
  CHECK(r(-8, 2) == 0);
  // The identity SMT-LIB promises: a = b*div(a,b) + mod(a,b).
  for (long long a : {-9, -1, 0, 5, 8}) {
    for (long long b : {-3, -2, 2, 3}) {
      CHECK(a == b * q(a, b) + r(a, b));
      CHECK(r(a, b) >= 0);
      CHECK(r(a, b) < (b < 0 ? -b : b));
    }
  }
}

TEST_CASE("reached division by zero throws; unreached does not") {
  CHECK_THROWS_AS(ieval(ediv(int_const(1), int_const(0))), EvalError);
  CHECK_THROWS_AS(ieval(emod(int_const(1), int_const(0))), EvalError);
  // ite evaluates only the taken branch.
  Ref guarded = ite(bool_const(true), int_const(7),
                    ediv(int_const(1), int_const(0)));
  CHECK(ieval(guarded) == 7);
}

TEST_CASE("and/or short-circuit over unbound variables") {
  Ref dangling = var("UNBOUND", Sort::Bool);
  CHECK_FALSE(beval(and_of({bool_const(false), dangling})));
  CHECK(beval(or_of({bool_const(true), dangling})));
  CHECK_THROWS_AS(beval(and_of({bool_const(true), dangling})), EvalError);
  CHECK_THROWS_AS(beval(var("NOPE", Sort::Bool)), EvalError);
}

TEST_CASE("n-ary builders flatten trivial cases") {
  CHECK(beval(and_of({})));
  CHECK_FALSE(beval(or_of({})));
  Ref single = eq(var("X", Sort::Int), int_const(1));
  CHECK(and_of({single}) == single);  // same node, not a wrapper
  CHECK(or_of({single}) == single);
}

TEST_CASE("lets bind lazily and shadow inner-most") {
  Ref x = var("x", Sort::Int);
  Ref shadowed = let_in("x", int_const(1), let_in("x", int_const(2), x));
  CHECK(ieval(shadowed) == 2);

  // The bound expression is only evaluated if the body uses it.
  Ref unused = let_in("dead", ediv(int_const(1), int_const(0)), int_const(9));
  CHECK(ieval(unused) == 9);

  Ref outer = let_in("a", int_const(10),
                     add(var("a", Sort::Int),
                         let_in("a", int_const(1), var("a", Sort::Int))));
  CHECK(ieval(outer) == 11);
}

TEST_CASE("free variables honor let scoping") {
  Ref x = var("x", Sort::Int);
  Ref y = var("y", Sort::Int);
  auto fv = free_vars(let_in("x", y, x));
  CHECK(fv.size() == 1);
  CHECK(fv.count("y") == 1);

  auto fv2 = free_vars(add(x, let_in("x", int_const(0), x)));
  CHECK(fv2.size() == 1);  // only the outer x
  CHECK(fv2.count("x") == 1);

  auto fv3 = free_vars(and_of({var("p", Sort::Bool), gt(x, y)}));
  CHECK(fv3.size() == 3);
  CHECK(fv3.at("p") == Sort::Bool);
  CHECK(fv3.at("x") == Sort::Int);
}

TEST_CASE("relations, implication, negation evaluate correctly") {
  CHECK(beval(implies(bool_const(false), bool_const(false))));
  CHECK_FALSE(beval(implies(bool_const(true), bool_const(false))));
  CHECK(beval(not_of(bool_const(false))));
  CHECK(beval(le(int_const(3), int_const(3))));
  CHECK_FALSE(beval(lt(int_const(3), int_const(3))));
  CHECK(beval(ne(int_const(1), int_const(2))));
  CHECK(ieval(neg(int_const(-4))) == 4);
  CHECK(ieval(sub(int_const(3), int_const(10))) == -7);
  CHECK(ieval(mul(int_const(-3), int_const(10))) == -30);
  CHECK(ieval(add(var("v", Sort::Int), int_const(1)), one_int("v", 41)) == 42);
}

TEST_CASE("needs_nonlinear spots variable products and variable divisors") {
  Ref x = var("x", Sort::Int);
  Ref y = var("y", Sort::Int);
  CHECK_FALSE(needs_nonlinear(mul(x, int_const(3))));
  CHECK_FALSE(needs_nonlinear(mul(int_const(3), x)));
  CHECK(needs_nonlinear(mul(x, y)));
  CHECK_FALSE(needs_nonlinear(ediv(x, int_const(16))));
  CHECK(needs_nonlinear(ediv(x, y)));
  CHECK(needs_nonlinear(emod(x, y)));
  CHECK(needs_nonlinear(and_of({bool_const(true), eq(mul(x, y), int_const(0))})));
  CHECK_FALSE(needs_nonlinear(let_in("t", add(x, x), var("t", Sort::Int))));
}

TEST_CASE("printing is the exact SMT-LIB2 surface syntax") {
  Ref X = var("X", Sort::Int);
  CHECK(to_smt(int_const(-5)) == "(- 5)");
  CHECK(to_smt(int_const(42)) == "42");
  CHECK(to_smt(bool_const(true)) == "true");
  CHECK(to_smt(add(X, int_const(1))) == "(+ X 1)");
  CHECK(to_smt(ne(X, int_const(0))) == "(distinct X 0)");
  CHECK(to_smt(implies(bool_const(true), bool_const(false))) == "(=> true false)");
  CHECK(to_smt(let_in("t", add(X, X), gt(var("t", Sort::Int), int_const(0)))) ==
        "(let ((t (+ X X))) (> t 0))");
  CHECK(to_smt(and_of({eq(X, int_const(1)), ne(X, int_const(2)), bool_const(true)})) ==
        "(and (= X 1) (distinct X 2) true)");
  CHECK(to_smt(neg(X)) == "(- X)");
  CHECK(to_smt(emod(ediv(X, int_const(16)), int_const(16))) ==
        "(mod (div X 16) 16)");
  CHECK(to_smt(ite(eq(X, int_const(0)), int_const(1), sub(int_const(0), X))) ==
        "(ite (= X 0) 1 (- 0 X))");
  CHECK(to_smt(not_of(lt(X, int_const(3)))) == "(not (< X 3))");
}

TEST_CASE("Value equality and helpers") {
  CHECK(Value::of_int(3) == Value::of_int(3));
  CHECK_FALSE(Value::of_int(3) == Value::of_int(4));
  CHECK_FALSE(Value::of_int(0) == Value::of_bool(false));
  CHECK(Value::of_bool(true).b);
}

}  // TEST_SUITE
