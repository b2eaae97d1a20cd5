#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sltrace/interp.hpp"
#include "sltrace/monitors.hpp"
#include "sltrace/wrappers.hpp"

namespace sltrace {

// ---- scenarios ----

struct Scenario {
  std::string id;
  LibName lib;
  std::string client;  // program text, (with-lib ...) form; empty for trace-only scenarios
  LangId lang;
  bool expect_final = true;
  std::optional<std::size_t> expect_reject_at;  // 1-based event index of the first false verdict
};

const std::vector<Scenario>& scenarios();
const Scenario* find_scenario(std::string_view id);

// Default location of golden/*.jsonl: ./golden when present, else the
// source tree's copy.
std::filesystem::path default_golden_dir();
std::filesystem::path golden_path(const std::filesystem::path& dir, const Scenario& s);

struct ScenarioReport {
  std::string id;
  Trace trace;
  std::vector<bool> verdicts;  // |trace| + 1 entries, ε first
  bool final_verdict = false;
  std::optional<Value> final_value;
  RunStatus status = RunStatus::value;
  bool ok = true;
  std::vector<std::string> failures;
  std::filesystem::path trace_path;  // the golden file compared against, if any
};

// Runs the client (wrapped library, fuel 10^6) feeding each event to the
// monitor, then checks the expectations. Trace-only scenarios replay their
// golden file. When the golden file exists, the trace must match it
// byte-for-byte.
ScenarioReport run_scenario(const Scenario& s, const std::filesystem::path& golden_dir);

std::string report_text(const ScenarioReport& r);
std::string report_json(const ScenarioReport& r);  // {id, verdicts, final, trace_path}

// Runs a linked program, feeding every event to a monitor. With `enforce`,
// the run halts at the first event whose verdict is false.
struct MonitoredRun {
  RunResult run;
  std::vector<bool> verdicts;
};
MonitoredRun run_monitored(const Expr& program, std::uint64_t fuel, std::optional<LangId> lang, bool enforce);

// ---- random programs ----

struct GenConfig {
  std::uint64_t seed = 0;
  int max_depth = 5;
  double emit_prob = 0.18;
  std::vector<Value> pool = {Value(), Value::integer(0), Value::integer(1), Value::integer(2), Value::sym("a")};
};

// Closed, depth-bounded expression over the whole grammar. It may get stuck
// or diverge. Emit arguments are values, variables, or pairs of those.
Expr gen_program(const GenConfig& cfg);

struct FuzzReport {
  std::uint64_t checked = 0;
  std::uint64_t skipped_fuel = 0;
  std::uint64_t failures = 0;
  std::uint64_t with_emit = 0;     // checked programs containing an emit
  std::vector<std::string> failed_programs;
};

// Erasure differential test: a terminating instrumented run and the run of
// the erased program must agree on the final expression (up to erasure),
// heap, and environment, and the erased run must emit nothing.
FuzzReport erasure_fuzz(std::uint64_t seed, std::uint64_t count, std::uint64_t fuel);

// One program of the above; nullopt when it did not terminate within fuel,
// otherwise the list of mismatches (empty when the runs agree).
std::optional<std::vector<std::string>> erasure_compare(const Expr& e, std::uint64_t fuel);

}  // namespace sltrace
