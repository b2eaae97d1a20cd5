#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "sltrace/expr.hpp"
#include "sltrace/value.hpp"

namespace sltrace {

struct Lambda {
  std::string param;
  Expr body;
  friend bool operator==(const Lambda&, const Lambda&) = default;
};

using Heap = std::map<std::uint64_t, Value>;
using FEnv = std::map<std::uint64_t, Lambda>;

// Machine state. Fresh locations and function names are drawn from the
// counters, so runs are reproducible: l0, l1, ... and f0, f1, ...
struct Config {
  Expr expr;
  Heap heap;
  FEnv fenv;
  std::uint64_t next_loc = 0;
  std::uint64_t next_fun = 0;

  static Config initial(Expr e) { return Config{std::move(e), {}, {}, 0, 0}; }
};

struct Terminal {
  Value value;
};
struct Stuck {
  std::string reason;
};
struct Next {
  std::optional<Value> label;  // nullopt is the silent label
  Config config;
};
using StepResult = std::variant<Terminal, Stuck, Next>;

// One reduction step under the leftmost-innermost evaluation-context order.
StepResult step(const Config& c);

// In-place variant used by run(); avoids copying the heap and environment.
struct StepOutcome {
  enum class Kind { terminal, stuck, stepped } kind;
  std::optional<Value> label;
  std::string reason;
};
StepOutcome step_in_place(Config& c);

enum class RunStatus { value, stuck, fuel_exhausted, halted };

std::string_view to_string(RunStatus s);

struct RunResult {
  Trace trace;
  Config final;
  RunStatus status = RunStatus::value;
  std::uint64_t steps = 0;
  std::string stuck_reason;
};

// Called after every emitted event with the trace so far; returning false
// halts the run with status `halted`.
using EventObserver = std::function<bool(const Trace&)>;

RunResult run(Config c, std::uint64_t fuel, const EventObserver& observer = {});

// Replace every emit subterm by unit.
Expr erase(const Expr& e);
FEnv erase_env(const FEnv& env);

}  // namespace sltrace
