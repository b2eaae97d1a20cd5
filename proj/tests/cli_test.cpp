#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sltrace/cli.hpp"
#include "sltrace/harness.hpp"
#include "sltrace/trace_io.hpp"

using namespace sltrace;

namespace {

const std::string kSource = SLTRACE_SOURCE_DIR;

struct Out {
  int code;
  std::string out, err;
};

Out cli(std::vector<std::string> args) {
  std::ostringstream o, e;
  int code = dispatch(args, o, e);
  return {code, o.str(), e.str()};
}

std::filesystem::path tmp(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "sltrace_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_tmp(const std::string& name, const std::string& text) {
  auto p = tmp(name);
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

}  // namespace

TEST_CASE("check") {
  auto r = cli({"check", kSource + "/golden/file-good.jsonl", "--lang", "L-file"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("final: accept") != std::string::npos);
  r = cli({"check", kSource + "/golden/file-bad.jsonl", "--lang", "L-file"});
  CHECK(r.code == kExitReject);
  CHECK(r.out.find("prefix 3: reject") != std::string::npos);
  r = cli({"check", kSource + "/golden/str-notfresh.jsonl", "--lang", "L-str"});
  CHECK(r.code == kExitOk);
  CHECK(cli({"check", kSource + "/golden/file-good.jsonl", "--lang", "L-heap"}).code == kExitInput);
  CHECK(cli({"check", "/nonexistent.jsonl", "--lang", "L-file"}).code == kExitInput);
  CHECK(cli({"check", write_tmp("bad.jsonl", "{oops\n"), "--lang", "L-file"}).code == kExitInput);
}

TEST_CASE("run under enforcement") {
  auto r = cli({"run", kSource + "/clients/file-bad.sx", "--lib", "file", "--wrapped", "--monitor", "L-file", "--enforce"});
  CHECK(r.code == kExitReject);
  CHECK(r.err.find("rejected at event 3: 'read") != std::string::npos);
  r = cli({"run", kSource + "/clients/file-good.sx", "--lib", "file", "--monitor", "L-file", "--enforce"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("verdict: accept") != std::string::npos);
  // without --enforce a rejected run still completes
  r = cli({"run", kSource + "/clients/file-bad.sx", "--lib", "file", "--monitor", "L-file"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("verdict: reject") != std::string::npos);
}

TEST_CASE("run streams the trace") {
  const auto out = tmp("file-good.jsonl");
  auto r = cli({"run", kSource + "/clients/file-good.sx", "--lib", "file", "--trace-out", out.string()});
  CHECK(r.code == kExitOk);
  CHECK(slurp(out) == slurp(kSource + "/golden/file-good.jsonl"));
  // the raw library emits nothing
  r = cli({"run", kSource + "/clients/file-bad.sx", "--lib", "file", "--raw", "--monitor", "L-file", "--enforce",
           "--trace-out", out.string()});
  CHECK(r.code == kExitOk);
  CHECK(slurp(out).empty());
  CHECK(cli({"run", kSource + "/clients/file-good.sx", "--lib", "file", "--raw", "--wrapped"}).code == kExitInput);
}

TEST_CASE("run exit codes") {
  CHECK(cli({"run", write_tmp("stuck.sx", "(op + 1 ())")}).code == kExitRun);
  const std::string loop = write_tmp("loop.sx", "(let r (ref 0) (seq (op := r (lam x (app (get r) x))) (app (get r) 0)))");
  auto r = cli({"run", loop, "--fuel", "1000"});
  CHECK(r.code == kExitRun);
  CHECK(r.err.find("fuel") != std::string::npos);
  r = cli({"run", write_tmp("syntax.sx", "(lam x\n  (app x")});
  CHECK(r.code == kExitInput);
  CHECK(r.err.find("syntax.sx:") != std::string::npos);
  CHECK(cli({"run", "/nonexistent.sx"}).code == kExitInput);
  CHECK(cli({"run", kSource + "/clients/file-good.sx"}).code == kExitInput);  // with-lib needs --lib
  CHECK(cli({"run", kSource + "/clients/file-good.sx", "--lib", "heap"}).code == kExitInput);
  CHECK(cli({"run", write_tmp("value.sx", "(op + 2 3)")}).out.find("value: 5") != std::string::npos);
}

TEST_CASE("replaying a run's trace gives the run's verdict") {
  for (const Scenario& s : scenarios()) {
    if (s.client.empty()) continue;
    const auto out = tmp(s.id + ".jsonl");
    const std::string lang(to_string(s.lang));
    auto r = cli({"run", kSource + "/clients/" + s.id + ".sx", "--lib", std::string(to_string(s.lib)), "--monitor", lang,
                  "--trace-out", out.string()});
    REQUIRE(r.code == kExitOk);
    const bool run_accept = r.out.find("verdict: accept") != std::string::npos;
    auto c = cli({"check", out.string(), "--lang", lang});
    CHECK(run_accept == (c.code == kExitOk));
    CHECK(slurp(out) == slurp(kSource + "/golden/" + s.id + ".jsonl"));
  }
}

TEST_CASE("scenarios") {
  auto r = cli({"scenarios", "--golden-dir", kSource + "/golden"});
  CHECK(r.code == kExitOk);
  CHECK(static_cast<std::size_t>(std::count(r.out.begin(), r.out.end(), '\n')) == scenarios().size());
  r = cli({"scenarios", "--id", "file-*", "--json", "--golden-dir", kSource + "/golden"});
  CHECK(r.code == kExitOk);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2);
  CHECK(r.out.find(R"("id":"file-bad")") != std::string::npos);
  CHECK(cli({"scenarios", "--id", "nothing*"}).code == kExitInput);
  // an empty golden directory: runs still pass, str-notfresh has no trace to replay
  auto empty = tmp("empty-golden");
  std::filesystem::create_directories(empty);
  CHECK(cli({"scenarios", "--id", "file-*", "--golden-dir", empty.string()}).code == kExitOk);
  CHECK(cli({"scenarios", "--id", "str-notfresh", "--golden-dir", empty.string()}).code == kExitFailure);
}

TEST_CASE("fuzz and axioms") {
  auto r = cli({"fuzz-erasure", "--seed", "42", "--count", "50", "--fuel", "10000"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("failures: 0") != std::string::npos);
  r = cli({"axioms", "--universe", "tiny"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("pass  PUseHist") != std::string::npos);
  CHECK(cli({"axioms", "--universe", "galaxy"}).code == kExitInput);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == kExitInput);
  CHECK(cli({"frobnicate"}).code == kExitInput);
  CHECK(cli({"check", "x.jsonl"}).code == kExitInput);
  CHECK(cli({"--help"}).code == kExitOk);
}
