#include "doctest.h"
#include "sltrace/interp.hpp"
#include "sltrace/syntax.hpp"
#include "sltrace/wrappers.hpp"

using namespace sltrace;

namespace {

Value I(std::int64_t n) { return Value::integer(n); }
Value S(std::string_view s) { return Value::sym(s); }

RunResult run_client(LibName n, bool wrapped, std::string_view client) {
  LibraryBundle lib = make_lib(n);
  if (wrapped) lib = wrap(n, lib);
  return run(Config::initial(link(lib, {}, parse(client))), 100000);
}

}  // namespace

TEST_CASE("names") {
  for (LibName n : all_libs()) CHECK(lib_from_string(to_string(n)) == n);
  CHECK_FALSE(lib_from_string("heap").has_value());
  CHECK(lib_op_names(LibName::coll) == std::vector<std::string>{"size", "add", "remove", "iterator", "next"});
  CHECK(lib_op_names(LibName::str) == std::vector<std::string>{"input", "constant", "sanitize", "concat", "sink"});
}

TEST_CASE("bundles are closed with the expected arities") {
  const std::pair<LibName, std::size_t> arity[] = {{LibName::file, 3},  {LibName::coll, 5},         {LibName::brac, 2},
                                                   {LibName::stack, 3}, {LibName::stack_simple, 2}, {LibName::str, 5}};
  for (auto [n, k] : arity) {
    LibraryBundle raw = make_lib(n);
    LibraryBundle w = wrap(n, raw);
    CHECK(raw.ops.size() == k);
    CHECK(w.ops.size() == k);
    CHECK(is_closed(raw.init));
    CHECK(is_closed(w.init));
    CHECK_FALSE(contains_emit(raw.init));
    CHECK(contains_emit(w.init));
    CHECK(w.wrapped);
    auto r = run(Config::initial(w.init), 10000);
    CHECK(r.status == RunStatus::value);
    CHECK(r.trace.empty());
  }
}

TEST_CASE("wrap rejects arity mismatch") {
  CHECK_THROWS_AS(wrap(LibName::file, make_lib(LibName::brac)), std::invalid_argument);
  CHECK_THROWS_AS(link(make_lib(LibName::file), {"a", "b"}, parse("()")), std::invalid_argument);
}

TEST_CASE("tuples") {
  Expr t = tuple_expr({Expr::val(I(1)), Expr::val(I(2)), Expr::val(I(3))});
  for (std::size_t i = 0; i < 3; ++i) {
    auto r = run(Config::initial(tuple_proj(t, i, 3)), 100);
    CHECK(r.final.expr == Expr::val(I(static_cast<std::int64_t>(i) + 1)));
  }
}

TEST_CASE("stack reference library") {
  auto r = run_client(LibName::stack, false,
                      "(seq (app push 1) (app push 2) (pair (app pop ()) (pair (app pop ()) (app pop ()))))");
  REQUIRE(r.status == RunStatus::value);
  CHECK(r.final.expr.value() == Value::tuple({I(2), I(1), Value::unit()}));

  // foreach visits top first
  r = run_client(LibName::stack, false,
                 "(let acc (ref ()) (seq (app push 1) (app push 2) (app push 3)"
                 " (app foreach (lam v (op := acc (pair v (get acc))))) (get acc)))");
  REQUIRE(r.status == RunStatus::value);
  CHECK(r.final.expr.value() == Value::tuple({I(1), I(2), I(3), Value::unit()}));
}

TEST_CASE("coll reference library") {
  auto r = run_client(LibName::coll, false, "(pair (app iterator ()) (app iterator ()))");
  REQUIRE(r.status == RunStatus::value);
  Value v = r.final.expr.value();
  CHECK(v.first().is_loc());
  CHECK(v.second().is_loc());
  CHECK(v.first() != v.second());

  r = run_client(LibName::coll, false,
                 "(seq (app add 1) (app add 2) (app add 1) (app remove 1) (app remove 9)"
                 " (let it (app iterator ()) (pair (app size ()) (pair (app next it) (pair (app next it) (app next it))))))");
  REQUIRE(r.status == RunStatus::value);
  CHECK(r.final.expr.value() == Value::tuple({I(2), I(2), I(1), Value::unit()}));
}

TEST_CASE("file reference library is permissive") {
  auto r = run_client(LibName::file, false, "(app read ())");
  CHECK(r.status == RunStatus::value);
  CHECK(r.final.expr.value() == Value::unit());
  r = run_client(LibName::file, false, "(seq (app open ()) (app read ()))");
  CHECK(r.final.expr.value() == Value::unit());
}

TEST_CASE("wrapped file") {
  auto r = run_client(LibName::file, true, "(seq (app open ()) (app read ()) (app close ()))");
  REQUIRE(r.status == RunStatus::value);
  CHECK(r.trace == Trace{S("open"), S("read"), S("close")});
}

TEST_CASE("wrapped stack-simple") {
  auto r = run_client(LibName::stack_simple, true, "(seq (app push 1) (app pop ()))");
  REQUIRE(r.status == RunStatus::value);
  CHECK(r.trace == Trace{Value::tuple({S("push"), I(1)}), Value::tuple({S("pop"), I(1)})});
  CHECK(r.final.expr.value() == I(1));
}

TEST_CASE("wrapped brac") {
  auto r = run_client(LibName::brac, true, "(app withRes (lam x (app op x)))");
  REQUIRE(r.status == RunStatus::value);
  REQUIRE(r.trace.size() == 6);
  Value f = r.trace[0].second().second();
  REQUIRE(f.is_fun());
  // the callback is the client's own lambda, not the wrapper's
  CHECK(r.final.fenv.at(f.as_fun()).param == "x");
  CHECK_FALSE(contains_emit(r.final.fenv.at(f.as_fun()).body));
  CHECK(r.trace == Trace{Value::tuple({S("call"), S("withRes"), f}), Value::tuple({S("call"), f}),
                         Value::tuple({S("call"), S("op")}), Value::tuple({S("ret"), S("op")}),
                         Value::tuple({S("ret"), f}), Value::tuple({S("ret"), S("withRes"), f})});
}

TEST_CASE("wrapped str") {
  auto r = run_client(LibName::str, true,
                      "(let a (app input ()) (let b (app constant 'k) (seq (app sanitize a)"
                      " (let c (app concat (pair a b)) (app sink c)))))");
  REQUIRE(r.status == RunStatus::value);
  REQUIRE(r.trace.size() == 5);
  Value a = r.trace[0].second(), b = r.trace[1].second(), c = r.trace[3].second().first();
  CHECK(a.is_loc());
  CHECK(b.is_loc());
  CHECK(c.is_loc());
  CHECK(r.trace[2] == Value::tuple({S("sanitize"), a}));
  CHECK(r.trace[3] == Value::tuple({S("concat"), c, a, b}));
  CHECK(r.trace[4] == Value::tuple({S("sink"), c}));
}

TEST_CASE("wrapping only adds events") {
  const char* clients[] = {
      "(seq (app push 5) (app push 6) (app foreach (lam v (op + v 1))) (app pop ()))",
  };
  for (const char* c : clients) {
    auto raw = run_client(LibName::stack, false, c);
    auto w = run_client(LibName::stack, true, c);
    CHECK(raw.trace.empty());
    CHECK(w.final.expr == raw.final.expr);
  }
}
