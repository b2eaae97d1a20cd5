#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sltrace/interp.hpp"
#include "sltrace/monitors.hpp"
#include "sltrace/value.hpp"

namespace sltrace {

bool is_prefix(const Trace& a, const Trace& b);  // a ≤pref b

// ---- resources ----

enum class Flag { hist, full };  // ⊥ < ⊤

struct TraceRes {
  Flag flag = Flag::hist;
  Trace t;
  friend bool operator==(const TraceRes&, const TraceRes&) = default;
  friend auto operator<=>(const TraceRes&, const TraceRes&) = default;
};

struct Resource {
  Heap h;
  TraceRes tr;
  friend bool operator==(const Resource&, const Resource&) = default;
  friend auto operator<=>(const Resource&, const Resource&) = default;
};

inline TraceRes trace_unit() { return {}; }
inline Resource res_unit() { return {}; }

// nullopt is "undefined".
std::optional<TraceRes> trace_mul(const TraceRes& a, const TraceRes& b);
std::optional<Heap> heap_mul(const Heap& a, const Heap& b);
std::optional<Resource> res_mul(const Resource& a, const Resource& b);

std::string to_string(const TraceRes& r);
std::string to_string(const Resource& r);

// ---- worlds ----

// A trace invariant: an explicit finite set of traces, or a trace language.
using Invariant = std::variant<std::set<Trace>, LangId>;

bool inv_holds(const Invariant& inv, const Trace& t);

struct World {
  FEnv gamma;
  Invariant inv;
};

// (γ1, I1) ≤ (γ2, I2) iff γ1 ⊆ γ2 and I1 = I2.
bool world_leq(const World& a, const World& b);

// ---- finite universes ----

struct Universe {
  std::vector<std::uint64_t> locs;
  std::vector<Value> values;
  std::vector<Value> alphabet;
  std::size_t max_len = 0;

  std::vector<Heap> heaps() const;
  std::vector<Trace> traces() const;  // shortest first
  std::vector<TraceRes> trace_resources() const;
  std::vector<Resource> resources() const;
};

// "default": locations {0, 1}, values {(), 0, 1}, symbols {a, b}, traces ≤ 3.
// "tiny": location {0}, values {(), 0}, symbol {a}, traces ≤ 2.
std::optional<Universe> universe_preset(std::string_view name);

// m1 ≤ m2 iff some m in U has m1 • m = m2.
bool res_leq(const Resource& m1, const Resource& m2, const Universe& u);
bool trace_leq(const TraceRes& a, const TraceRes& b, const Universe& u);

// t, (h, γ) ⊨_w m
bool erasure_sat(const Trace& t, const Heap& h, const FEnv& gamma, const World& w, const Resource& m);

// ---- assertions ----

struct Assertion;
using AssertionPtr = std::shared_ptr<const Assertion>;

struct Assertion {
  enum class Kind { emp, trace, hist, inv, points_to, star } kind = Kind::emp;
  Trace t;                      // trace, hist
  Invariant inv;                // inv
  std::uint64_t loc = 0;        // points_to
  Value value;                  // points_to
  AssertionPtr left, right;     // star

  static AssertionPtr emp();
  static AssertionPtr trace(Trace t);
  static AssertionPtr hist(Trace t);
  static AssertionPtr inv_of(Invariant i);
  static AssertionPtr points_to(std::uint64_t l, Value v);
  static AssertionPtr star(AssertionPtr a, AssertionPtr b);
};

std::string to_string(const Assertion& a);

std::set<Resource> denote(const Assertion& a, const World& w, const Universe& u);

// ---- checks ----

struct CheckResult {
  std::string name;
  bool ok = true;
  std::uint64_t instances = 0;
  std::string counterexample;  // empty when ok
};

// assoc, comm, unit, PInvDupl, PHistDupl, PAllocHist, PUseHist.
const std::vector<std::string>& axiom_names();
CheckResult check_axiom(std::string_view name, const Universe& u);

// Every denotation of a small assertion catalogue is upward closed.
CheckResult check_upward_closure(const Universe& u);
// Denotations do not change when γ grows with the invariant fixed.
CheckResult check_world_monotone(const Universe& u);
// Emitting preserves every frame of the full trace resource.
CheckResult check_emit_frame(const Universe& u);

// Everything the `axioms` command reports, in order.
std::vector<CheckResult> check_all(const Universe& u);

}  // namespace sltrace
