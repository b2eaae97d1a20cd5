#include "sltrace/cli.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "sltrace/harness.hpp"
#include "sltrace/model.hpp"
#include "sltrace/syntax.hpp"
#include "sltrace/trace_io.hpp"

namespace sltrace {

namespace {

struct RunOpts {
  std::string program;
  std::string lib;
  bool raw = false;
  std::string monitor;
  bool enforce = false;
  std::uint64_t fuel = 1'000'000;
  std::string trace_out;
};

struct CheckOpts {
  std::string trace;
  std::string lang;
};

struct ScenarioOpts {
  std::string pattern = "*";
  std::string golden_dir;
  bool json = false;
  bool update_golden = false;
};

struct FuzzOpts {
  std::uint64_t seed = 42;
  std::uint64_t count = 500;
  std::uint64_t fuel = 10'000;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

LangId parse_lang(const std::string& s) {
  auto l = lang_from_string(s);
  if (!l) throw InputError("unknown language '" + s + "'");
  return *l;
}

int cmd_run(const RunOpts& o, std::ostream& out, std::ostream& err) {
  Program prog;
  try {
    prog = parse_program(read_file(o.program));
  } catch (const SyntaxError& e) {
    err << o.program << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return kExitInput;
  }
  Expr program = prog.body;
  if (!o.lib.empty()) {
    auto name = lib_from_string(o.lib);
    if (!name) throw InputError("unknown library '" + o.lib + "'");
    LibraryBundle lib = make_lib(*name);
    if (!o.raw) lib = wrap(*name, lib);
    program = link(lib, prog.op_names, prog.body);
  } else if (prog.with_lib) {
    throw InputError("program uses with-lib; pass --lib");
  }
  std::optional<LangId> lang;
  if (!o.monitor.empty()) lang = parse_lang(o.monitor);

  std::ofstream trace_out;
  if (!o.trace_out.empty()) {
    trace_out.open(o.trace_out, std::ios::binary);
    if (!trace_out) throw InputError("cannot write " + o.trace_out);
  }

  std::optional<MonitorState> st;
  if (lang) st = mon_init(*lang);
  std::size_t rejected_at = 0;
  auto observe = [&](const Trace& t) {
    const Value& ev = t.back();
    if (trace_out.is_open()) trace_out << encode_value(ev) << '\n' << std::flush;
    out << "event " << t.size() << ": " << to_string(ev);
    bool ok = true;
    if (lang) {
      st = mon_step(*lang, *st, ev);
      ok = mon_verdict(*lang, *st);
      out << "  " << (ok ? "accept" : "reject");
      if (!ok && rejected_at == 0) rejected_at = t.size();
    }
    out << "\n";
    return ok || !o.enforce;
  };
  RunResult r = run(Config::initial(program), o.fuel, observe);

  out << "status: " << to_string(r.status) << "  steps: " << r.steps << "  events: " << r.trace.size() << "\n";
  if (r.status == RunStatus::value) out << "value: " << to_string(r.final.expr.value()) << "\n";
  if (lang) out << "verdict: " << (mon_verdict(*lang, *st) ? "accept" : "reject") << "\n";
  switch (r.status) {
    case RunStatus::value: return kExitOk;
    case RunStatus::halted:
      err << "monitor " << to_string(*lang) << " rejected at event " << rejected_at << ": "
          << to_string(r.trace.back()) << "\n";
      return kExitReject;
    case RunStatus::stuck: err << "stuck: " << r.stuck_reason << "\n"; return kExitRun;
    case RunStatus::fuel_exhausted: err << "fuel exhausted after " << r.steps << " steps\n"; return kExitRun;
  }
  return kExitRun;
}

int cmd_check(const CheckOpts& o, std::ostream& out) {
  const LangId lang = parse_lang(o.lang);
  const Trace t = read_trace_file(o.trace);
  const auto v = prefix_verdicts(lang, t);
  out << "prefix 0: " << (v[0] ? "accept" : "reject") << "\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    out << "prefix " << i + 1 << ": " << (v[i + 1] ? "accept" : "reject") << "  " << to_string(t[i]) << "\n";
  out << "final: " << (v.back() ? "accept" : "reject") << "\n";
  return v.back() ? kExitOk : kExitReject;
}

int cmd_scenarios(const ScenarioOpts& o, std::ostream& out, std::ostream& err) {
  const std::filesystem::path dir = o.golden_dir.empty() ? default_golden_dir() : std::filesystem::path(o.golden_dir);
  bool any = false, all_ok = true;
  for (const Scenario& s : scenarios()) {
    if (fnmatch(o.pattern.c_str(), s.id.c_str(), 0) != 0) continue;
    any = true;
    if (o.update_golden && !s.client.empty()) {
      const Program prog = parse_program(s.client);
      MonitoredRun mr = run_monitored(link(wrap(s.lib, make_lib(s.lib)), prog.op_names, prog.body), 1'000'000,
                                      std::nullopt, false);
      std::filesystem::create_directories(dir);
      write_trace_file(golden_path(dir, s), mr.run.trace);
    }
    ScenarioReport r = run_scenario(s, dir);
    all_ok = all_ok && r.ok;
    out << (o.json ? report_json(r) + "\n" : report_text(r));
  }
  if (!any) {
    err << "no scenario matches '" << o.pattern << "'\n";
    return kExitInput;
  }
  return all_ok ? kExitOk : kExitFailure;
}

int cmd_fuzz(const FuzzOpts& o, std::ostream& out) {
  FuzzReport r = erasure_fuzz(o.seed, o.count, o.fuel);
  for (const std::string& p : r.failed_programs) out << "FAIL " << p;
  out << "checked: " << r.checked << "  skipped-fuel: " << r.skipped_fuel << "  with-emit: " << r.with_emit
      << "  failures: " << r.failures << "\n";
  return r.failures == 0 ? kExitOk : kExitFailure;
}

int cmd_axioms(const std::string& preset, std::ostream& out) {
  auto u = universe_preset(preset);
  if (!u) throw InputError("unknown universe '" + preset + "'");
  bool all_ok = true;
  for (const CheckResult& r : check_all(*u)) {
    all_ok = all_ok && r.ok;
    out << (r.ok ? "pass  " : "FAIL  ") << r.name << std::string(r.name.size() < 16 ? 16 - r.name.size() : 1, ' ')
        << r.instances << " instances\n";
    if (!r.ok) out << "      counterexample: " << r.counterexample << "\n";
  }
  return all_ok ? kExitOk : kExitFailure;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trace-property workbench: interpreter, library wrappers, monitors, semantic model", "sltrace"};
  app.require_subcommand(1);

  RunOpts run_o;
  auto* run_c = app.add_subcommand("run", "run a program, optionally under a monitor");
  run_c->add_option("program", run_o.program, "program file (.sx)")->required();
  run_c->add_option("--lib", run_o.lib, "library bundle bound by with-lib");
  auto* wrapped_f = run_c->add_flag("--wrapped", "use the instrumented library (default)");
  run_c->add_flag("--raw", run_o.raw, "use the library without emits")->excludes(wrapped_f);
  run_c->add_option("--monitor", run_o.monitor, "trace language to monitor, e.g. L-file");
  run_c->add_flag("--enforce", run_o.enforce, "halt at the first rejected event (exit 3)");
  run_c->add_option("--fuel", run_o.fuel, "step budget");
  run_c->add_option("--trace-out", run_o.trace_out, "write events as JSONL");

  CheckOpts check_o;
  auto* check_c = app.add_subcommand("check", "replay a JSONL trace through a monitor");
  check_c->add_option("trace", check_o.trace, "trace file")->required();
  check_c->add_option("--lang", check_o.lang, "trace language")->required();

  ScenarioOpts sc_o;
  auto* sc_c = app.add_subcommand("scenarios", "run the scenario catalogue");
  sc_c->add_option("--id", sc_o.pattern, "glob over scenario ids");
  sc_c->add_option("--golden-dir", sc_o.golden_dir, "directory of golden traces");
  sc_c->add_flag("--json", sc_o.json, "one JSON report per line");
  sc_c->add_flag("--update-golden", sc_o.update_golden, "rewrite golden traces from fresh runs first");

  FuzzOpts fz_o;
  auto* fz_c = app.add_subcommand("fuzz-erasure", "differential test of erasure on random programs");
  fz_c->add_option("--seed", fz_o.seed);
  fz_c->add_option("--count", fz_o.count);
  fz_c->add_option("--fuel", fz_o.fuel);

  std::string preset = "default";
  auto* ax_c = app.add_subcommand("axioms", "check the resource-model laws and trace axioms");
  ax_c->add_option("--universe", preset, "universe preset: default or tiny");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*run_c) return cmd_run(run_o, out, err);
    if (*check_c) return cmd_check(check_o, out);
    if (*sc_c) return cmd_scenarios(sc_o, out, err);
    if (*fz_c) return cmd_fuzz(fz_o, out);
    if (*ax_c) return cmd_axioms(preset, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const TraceFormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace sltrace
