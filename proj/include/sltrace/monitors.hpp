#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string_view>
#include <variant>
#include <vector>

#include "sltrace/value.hpp"

namespace sltrace {

enum class LangId { file, coll, brac, stack, stack_simple, str };

std::string_view to_string(LangId l);
std::optional<LangId> lang_from_string(std::string_view s);  // "L-file", ...
const std::vector<LangId>& all_langs();

// ---- declarative definitions -------------------------------------------
// Traces are indexed from 1 in these helpers, as t[1] .. t[|t|].

// ∀k. n < k < m ⇒ t[k] ≠ close
bool noclose(const Trace& t, std::size_t n, std::size_t m);
// ∃m < n. t[m] = open ∧ noclose(t, m, n). Requires 1 ≤ n ≤ |t| + 1.
bool isopen_check(const Trace& t, std::size_t n);
bool file_trace(const Trace& t);

// esafe(s, ε) = false; esafe(s, t·h) = esafe(s, t) ∨ h = <constant, s> ∨
// h = <sanitize, s> ∨ (h = <concat, s, s1, s2> ∧ esafe(s1, t) ∧ esafe(s2, t)).
bool esafe(const Value& s, const Trace& t);
bool allocs(const Value& s, const Trace& t, std::size_t n);
bool notfresh(const Trace& t);

// α is the abstract stack, head first.
bool stk_tr_check(const Trace& t, const std::vector<Value>& alpha);
bool trav(const Trace& t, const std::vector<Value>& alpha, const Value& f);

bool member(LangId lang, const Trace& t);

// Declarative membership over a trace that grows and shrinks at the end.
// Per-prefix tables (the stack contents derived by stk_tr, the esafe sets)
// are kept per position, so a depth-first enumeration pays for each prefix
// once. member(lang, t) is this cursor fed with t.
class Oracle {
 public:
  explicit Oracle(LangId lang);

  void push(const Value& ev);
  void pop();
  bool member() const;
  const Trace& trace() const { return t_; }
  LangId lang() const { return lang_; }

  // Every α with stk_tr(t, α) for the current trace (L-stack only).
  const std::vector<std::vector<Value>>& stacks() const { return stacks_.back(); }

 private:
  bool stack_member() const;
  bool str_member() const;

  LangId lang_;
  Trace t_;
  std::vector<std::vector<std::vector<Value>>> stacks_;  // per prefix length
  std::vector<std::set<Value>> safe_;                     // per prefix length
  std::vector<bool> str_alphabet_ok_;                     // per prefix length
};

// ---- incremental monitors ----------------------------------------------

struct FileMon {
  bool open = false;
};
struct CollMon {
  std::set<Value> valid;  // iterators created since the last add/remove
};
struct BracMon {
  enum class Phase { balanced, after_call_with_res, in_body, in_op, after_ret_f };
  Phase phase = Phase::balanced;
  Value f;  // register
};
struct StackMon {
  enum class Mode { idle, in_push, in_pop, in_foreach };
  Mode mode = Mode::idle;
  Value arg;                   // in_push: the pushed value; in_foreach: f
  std::vector<Value> pending;  // in_foreach: values still to visit, top first
  bool in_call = false;        // in_foreach: saw <call, f, a>, waiting for <ret, f>
  std::vector<Value> stack;    // top first
};
struct SimpleMon {
  std::set<Value> pushed;
};
struct StrMon {
  std::set<Value> safe;
  std::set<Value> sunk;
  std::set<Value> allocated;
  bool notfresh = false;
};

struct MonitorState {
  LangId lang;
  bool rejected = false;  // latch; L-str only sets it on foreign events
  std::variant<FileMon, CollMon, BracMon, StackMon, SimpleMon, StrMon> data;
};

MonitorState mon_init(LangId lang);
MonitorState mon_step(LangId lang, const MonitorState& st, const Value& ev);
bool mon_verdict(LangId lang, const MonitorState& st);

// Verdict after each prefix, from ε to t: |t| + 1 entries.
std::vector<bool> prefix_verdicts(LangId lang, const Trace& t);

}  // namespace sltrace
