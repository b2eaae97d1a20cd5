#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sltrace/harness.hpp"
#include "sltrace/syntax.hpp"
#include "sltrace/trace_io.hpp"

namespace sltrace {

const std::vector<Scenario>& scenarios() {
  using L = LibName;
  using G = LangId;
  static const std::vector<Scenario> all = {
      {"file-good", L::file, "(with-lib (seq (app open ()) (app read ()) (app close ())))", G::file, true, {}},
      {"file-bad", L::file, "(with-lib (seq (app open ()) (app close ()) (app read ())))", G::file, false, 3},
      {"coll-good", L::coll,
       "(with-lib (seq (app add 1) (app add 2)\n"
       "  (let it (app iterator ()) (seq (app next it) (app next it)))\n"
       "  (app size ())))",
       G::coll, true, {}},
      {"coll-bad", L::coll, "(with-lib (seq (app add 1) (let it (app iterator ()) (seq (app add 2) (app next it)))))",
       G::coll, false, 4},
      {"brac-good", L::brac, "(with-lib (seq (app withRes (lam x (seq (app op x) (app op x)))) (app withRes (lam y y))))",
       G::brac, true, {}},
      {"brac-bad-outside", L::brac, "(with-lib (app op ()))", G::brac, false, 1},
      {"brac-bad-nested", L::brac, "(with-lib (app withRes (lam x (app withRes (lam y (app op y))))))", G::brac, false,
       3},
      {"stack-good", L::stack, "(with-lib (seq (app push 1) (app push 2) (app pop ()) (app pop ()) (app pop ())))",
       G::stack, true, {}},
      {"stack-foreach", L::stack, "(with-lib (seq (app push 1) (app push 2) (app foreach (lam v v))))", G::stack, true,
       {}},
      // the callback modifies the stack while it is being traversed
      {"stack-bad", L::stack, "(with-lib (seq (app push 1) (app foreach (lam v (app push v)))))", G::stack, false, 5},
      {"stack-simple-good", L::stack_simple, "(with-lib (seq (app push 1) (app pop ()) (app pop ()) (app push 2)))",
       G::stack_simple, true, {}},
      // the reference library never pops an unpushed value, so the client forges the event
      {"stack-simple-bad", L::stack_simple, "(with-lib (seq (app push 1) (emit (pair 'pop 2))))", G::stack_simple, false,
       2},
      {"str-good", L::str,
       "(with-lib (let a (app input ()) (let b (app constant 'k)\n"
       "  (seq (app sanitize a) (let c (app concat (pair a b)) (app sink c))))))",
       G::str, true, {}},
      {"str-bad", L::str, "(with-lib (let a (app input ()) (app sink a)))", G::str, false, 2},
      // a later sanitize justifies the earlier sink
      {"str-retro", L::str, "(with-lib (let a (app input ()) (seq (app sink a) (app sanitize a))))", G::str, true, 2},
      // the library never reuses a location, so this one is a hand-written trace
      {"str-notfresh", L::str, "", G::str, true, 2},
  };
  return all;
}

const Scenario* find_scenario(std::string_view id) {
  for (const Scenario& s : scenarios())
    if (s.id == id) return &s;
  return nullptr;
}

std::filesystem::path default_golden_dir() {
  if (std::filesystem::is_directory("golden")) return "golden";
  return std::filesystem::path(SLTRACE_SOURCE_DIR) / "golden";
}

std::filesystem::path golden_path(const std::filesystem::path& dir, const Scenario& s) {
  return dir / (s.id + ".jsonl");
}

MonitoredRun run_monitored(const Expr& program, std::uint64_t fuel, std::optional<LangId> lang, bool enforce) {
  MonitoredRun out;
  std::optional<MonitorState> st;
  if (lang) {
    st = mon_init(*lang);
    out.verdicts.push_back(mon_verdict(*lang, *st));
  }
  auto observe = [&](const Trace& t) {
    if (!lang) return true;
    st = mon_step(*lang, *st, t.back());
    const bool ok = mon_verdict(*lang, *st);
    out.verdicts.push_back(ok);
    return ok || !enforce;
  };
  out.run = run(Config::initial(program), fuel, observe);
  return out;
}

namespace {

std::string encoded(const Trace& t) {
  std::ostringstream os;
  write_trace(os, t);
  return os.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

ScenarioReport run_scenario(const Scenario& s, const std::filesystem::path& golden_dir) {
  ScenarioReport r;
  r.id = s.id;
  const auto golden = golden_path(golden_dir, s);
  const bool have_golden = std::filesystem::exists(golden);
  auto fail = [&](std::string why) {
    r.ok = false;
    r.failures.push_back(std::move(why));
  };

  if (s.client.empty()) {
    if (!have_golden) {
      fail("missing trace file " + golden.string());
      return r;
    }
    r.trace = read_trace_file(golden);
    r.verdicts = prefix_verdicts(s.lang, r.trace);
    r.trace_path = golden;
  } else {
    const Program prog = parse_program(s.client);
    const Expr linked = link(wrap(s.lib, make_lib(s.lib)), prog.op_names, prog.body);
    MonitoredRun mr = run_monitored(linked, 1'000'000, s.lang, false);
    r.trace = std::move(mr.run.trace);
    r.verdicts = std::move(mr.verdicts);
    r.status = mr.run.status;
    if (r.status == RunStatus::value) r.final_value = mr.run.final.expr.value();
    if (r.status != RunStatus::value)
      fail(std::string("client did not finish: ") + std::string(to_string(r.status)) +
           (mr.run.stuck_reason.empty() ? "" : " (" + mr.run.stuck_reason + ")"));
    if (have_golden) {
      r.trace_path = golden;
      if (slurp(golden) != encoded(r.trace)) fail("trace differs from " + golden.string());
    }
  }

  r.final_verdict = r.verdicts.back();
  if (r.final_verdict != s.expect_final)
    fail(std::string("final verdict ") + (r.final_verdict ? "accept" : "reject") + ", expected " +
         (s.expect_final ? "accept" : "reject"));
  std::optional<std::size_t> first_false;
  for (std::size_t i = 0; i < r.verdicts.size(); ++i)
    if (!r.verdicts[i]) {
      first_false = i;
      break;
    }
  if (first_false != s.expect_reject_at) {
    auto show = [](std::optional<std::size_t> n) { return n ? "event " + std::to_string(*n) : std::string("none"); };
    fail("first rejection at " + show(first_false) + ", expected " + show(s.expect_reject_at));
  }
  if (s.lang != LangId::str && first_false) {
    for (std::size_t i = *first_false; i < r.verdicts.size(); ++i)
      if (r.verdicts[i]) {
        fail("verdict recovered at event " + std::to_string(i));
        break;
      }
  }
  return r;
}

std::string report_text(const ScenarioReport& r) {
  std::string v;
  for (bool b : r.verdicts) v += b ? 'T' : 'F';
  std::string s = r.id + "  events=" + std::to_string(r.trace.size()) + "  verdicts=" + v +
                  "  final=" + (r.final_verdict ? "accept" : "reject") + "  " + (r.ok ? "ok" : "FAILED") + "\n";
  for (const std::string& f : r.failures) s += "    " + f + "\n";
  return s;
}

std::string report_json(const ScenarioReport& r) {
  nlohmann::json j;
  j["id"] = r.id;
  j["verdicts"] = r.verdicts;
  j["final"] = r.final_verdict;
  j["trace_path"] = r.trace_path.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.trace_path.generic_string());
  return j.dump();
}

}  // namespace sltrace
