#include <chrono>

#include "doctest.h"
#include "sltrace/model.hpp"

using namespace sltrace;

namespace {

const Value a = Value::sym("a"), b = Value::sym("b");

TraceRes H(Trace t) { return {Flag::hist, std::move(t)}; }
TraceRes F(Trace t) { return {Flag::full, std::move(t)}; }

Universe U() { return *universe_preset("default"); }

World world(Invariant i) { return World{FEnv{}, std::move(i)}; }

}  // namespace

TEST_CASE("trace monoid table") {
  CHECK(trace_mul(H({a}), H({a, b})) == H({a, b}));
  CHECK(trace_mul(H({a, b}), H({a})) == H({a, b}));
  CHECK_FALSE(trace_mul(H({a}), H({b})).has_value());
  CHECK_FALSE(trace_mul(F({a}), F({a})).has_value());
  CHECK_FALSE(trace_mul(F({}), F({})).has_value());
  CHECK(trace_mul(F({a, b}), H({a})) == F({a, b}));
  CHECK(trace_mul(H({a}), F({a, b})) == F({a, b}));
  CHECK_FALSE(trace_mul(F({a}), H({a, b})).has_value());
  for (const TraceRes& x : U().trace_resources()) {
    CHECK(trace_mul(x, trace_unit()) == x);
    CHECK(trace_mul(trace_unit(), x) == x);
  }
}

TEST_CASE("resource multiplication") {
  const Resource l0{{{0, Value::integer(1)}}, trace_unit()};
  CHECK_FALSE(res_mul(l0, l0).has_value());
  for (const Resource& m : U().resources()) CHECK(res_mul(res_unit(), m) == m);
  const Resource x{{{0, Value::integer(1)}}, F({a})}, y{{{1, Value::integer(0)}}, H({a})};
  const Resource xy{{{0, Value::integer(1)}, {1, Value::integer(0)}}, F({a})};
  CHECK(res_mul(x, y) == xy);
}

TEST_CASE("resource ordering") {
  const Universe u = U();
  for (const Resource& m : u.resources()) CHECK(res_leq(m, m, u));
  CHECK(res_leq({{}, H({a})}, {{}, F({a, b})}, u));
  CHECK_FALSE(res_leq({{}, F({a})}, {{}, F({a, b})}, u));
  CHECK_FALSE(res_leq({{}, H({a})}, {{}, H({b})}, u));
  CHECK(res_leq({{}, H({})}, {{{0, Value()}}, H({b})}, u));
  CHECK(trace_leq(H({}), F({a}), u));
  CHECK_FALSE(trace_leq(F({a}), H({a}), u));
}

TEST_CASE("worlds") {
  const FEnv g{{0, Lambda{"x", Expr::var("x")}}};
  const Invariant i = std::set<Trace>{{}};
  CHECK(world_leq({FEnv{}, i}, {g, i}));
  CHECK_FALSE(world_leq({g, i}, {FEnv{}, i}));
  CHECK_FALSE(world_leq({FEnv{}, i}, {FEnv{}, std::set<Trace>{}}));
  CHECK(inv_holds(LangId::file, {Value::sym("open")}));
  CHECK_FALSE(inv_holds(LangId::file, {Value::sym("read")}));
}

TEST_CASE("erasure relation") {
  const Heap h{{0, Value::integer(1)}};
  const FEnv g;
  const World w{g, std::set<Trace>{{}, {a}}};
  CHECK(erasure_sat({a}, h, g, w, {h, F({a})}));
  CHECK_FALSE(erasure_sat({a}, h, g, World{g, std::set<Trace>{{}}}, {h, F({a})}));
  CHECK(erasure_sat({a}, h, g, w, {h, H({})}));
  CHECK(erasure_sat({}, h, g, w, {h, H({})}));
  CHECK(erasure_sat({a}, h, g, w, {h, H({a})}));
  CHECK_FALSE(erasure_sat({a}, h, g, w, {h, F({})}));   // full demands equality
  CHECK_FALSE(erasure_sat({a}, h, g, w, {Heap{}, H({})}));  // heaps must agree
  CHECK_FALSE(erasure_sat({a}, h, FEnv{{0, Lambda{"x", Expr::var("x")}}}, w, {h, H({})}));
}

TEST_CASE("denotations") {
  const Universe u = U();
  const auto all = u.resources();
  const World w = world(std::set<Trace>{{}});
  CHECK(denote(*Assertion::emp(), w, u).size() == all.size());
  CHECK(denote(*Assertion::hist({}), w, u).size() == all.size());
  for (const Trace& t : u.traces()) {
    auto tr = Assertion::trace(t);
    CHECK(denote(*Assertion::star(tr, tr), w, u).empty());
    // closed forms: trace(t) is exactly the full resource, hist(t) any extension
    std::set<Resource> full, ext;
    for (const Resource& m : all) {
      if (m.tr == F(t)) full.insert(m);
      if (is_prefix(t, m.tr.t)) ext.insert(m);
    }
    CHECK(denote(*tr, w, u) == full);
    CHECK(denote(*Assertion::hist(t), w, u) == ext);
  }
  std::set<Resource> pt;
  for (const Resource& m : all)
    if (m.h.contains(1) && m.h.at(1) == Value::integer(0)) pt.insert(m);
  CHECK(denote(*Assertion::points_to(1, Value::integer(0)), w, u) == pt);
  CHECK(denote(*Assertion::inv_of(std::set<Trace>{{}}), w, u).size() == all.size());
  CHECK(denote(*Assertion::inv_of(std::set<Trace>{}), w, u).empty());
  auto p0 = Assertion::points_to(0, Value());
  CHECK(denote(*Assertion::star(p0, p0), w, u).empty());
}

TEST_CASE("axioms over the default universe") {
  const Universe u = U();
  auto t0 = std::chrono::steady_clock::now();
  for (const CheckResult& r : check_all(u)) {
    INFO(r.name << ": " << r.counterexample);
    CHECK(r.ok);
    CHECK(r.instances > 0);
    CHECK(r.counterexample.empty());
  }
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(10));
}

TEST_CASE("axioms over the tiny universe") {
  for (const std::string& n : axiom_names()) CHECK(check_axiom(n, *universe_preset("tiny")).ok);
}

TEST_CASE("failures carry a report") {
  CheckResult r = check_axiom("PNotAnAxiom", U());
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.counterexample.empty());
  Universe eps = U();
  eps.alphabet.clear();
  eps.max_len = 0;
  CHECK(check_axiom("assoc", eps).ok);
  CHECK_FALSE(universe_preset("huge").has_value());
}

TEST_CASE("universe sizes") {
  const Universe u = U();
  CHECK(u.heaps().size() == 16);
  CHECK(u.traces().size() == 15);
  CHECK(u.resources().size() == 16 * 30);
}
