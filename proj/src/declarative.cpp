#include <algorithm>
#include <stdexcept>
#include <string>

#include "events.hpp"
#include "sltrace/monitors.hpp"

namespace sltrace {

using detail::after;
using detail::after2;
using detail::is2;
using detail::is3;
using detail::tags;

std::string_view to_string(LangId l) {
  switch (l) {
    case LangId::file: return "L-file";
    case LangId::coll: return "L-coll";
    case LangId::brac: return "L-brac";
    case LangId::stack: return "L-stack";
    case LangId::stack_simple: return "L-stack-simple";
    case LangId::str: return "L-str";
  }
  return "?";
}

const std::vector<LangId>& all_langs() {
  static const std::vector<LangId> all = {LangId::file,  LangId::coll,         LangId::brac,
                                          LangId::stack, LangId::stack_simple, LangId::str};
  return all;
}

std::optional<LangId> lang_from_string(std::string_view s) {
  for (LangId l : all_langs())
    if (to_string(l) == s) return l;
  return std::nullopt;
}

namespace {

// 1-based access.
const Value& at(const Trace& t, std::size_t n) { return t[n - 1]; }

// ---- L-file ----

bool in_file_alphabet(const Value& v) {
  const auto& k = tags();
  return v == k.open || v == k.close || v == k.read;
}

bool file_member(const Trace& t) { return std::all_of(t.begin(), t.end(), in_file_alphabet) && file_trace(t); }

// ---- L-coll ----

bool in_coll_alphabet(const Value& v) {
  const auto& k = tags();
  if (v == k.size || v == k.add || v == k.remove) return true;
  const Value* l = after(v, k.iterator);
  if (!l) l = after(v, k.next);
  return l && l->is_loc();
}

bool coll_member(const Trace& t) {
  const auto& k = tags();
  if (!std::all_of(t.begin(), t.end(), in_coll_alphabet)) return false;
  for (std::size_t i = 1; i <= t.size(); ++i) {
    const Value* l = after(at(t, i), k.next);
    if (!l) continue;
    bool justified = false;
    for (std::size_t j = 1; j < i && !justified; ++j) {
      const Value* it = after(at(t, j), k.iterator);
      if (!it || *it != *l) continue;
      bool clean = true;
      for (std::size_t m = j + 1; m < i; ++m)
        if (at(t, m) == k.add || at(t, m) == k.remove) clean = false;
      justified = clean;
    }
    if (!justified) return false;
  }
  return true;
}

// ---- L-brac ----
// s ::= ε | <call,withRes,f> <call,f> (<call,op> <ret,op>)* <ret,f> <ret,withRes,f> s

enum class Parse { complete, partial, fail };

// Matches t against the grammar from the left. `partial` means the input
// ended inside an episode with no mismatch so far.
Parse brac_parse(const Trace& t) {
  const auto& k = tags();
  std::size_t i = 0;
  const std::size_t n = t.size();
  while (i < n) {
    const Value* f = after2(t[i], k.call, k.with_res);
    if (!f || !f->is_fun()) return Parse::fail;
    if (++i == n) return Parse::partial;
    if (!is2(t[i], k.call, *f)) return Parse::fail;
    if (++i == n) return Parse::partial;
    while (is2(t[i], k.call, k.op)) {
      if (++i == n) return Parse::partial;
      if (!is2(t[i], k.ret, k.op)) return Parse::fail;
      if (++i == n) return Parse::partial;
    }
    if (!is2(t[i], k.ret, *f)) return Parse::fail;
    if (++i == n) return Parse::partial;
    if (!is3(t[i], k.ret, k.with_res, *f)) return Parse::fail;
    ++i;
  }
  return Parse::complete;
}

bool brac_complete(const Trace& t) { return brac_parse(t) == Parse::complete; }

// Prefix closure taken explicitly: t is accepted iff some completion c with
// |c| ≤ 3 makes t·c a complete string. Three events suffice: the longest
// tail of an open episode is <ret,op> <ret,f> <ret,withRes,f>. A mismatch
// inside t can never be repaired by appending, so those are cut off early.
bool brac_member(const Trace& t) {
  Parse p = brac_parse(t);
  if (p == Parse::complete) return true;
  if (p == Parse::fail) return false;
  const auto& k = tags();
  std::vector<Value> candidates = {Value::pair(k.call, k.op), Value::pair(k.ret, k.op)};
  std::set<Value> funs;
  for (const Value& v : t) {
    if (const Value* f = after2(v, k.call, k.with_res); f && f->is_fun()) funs.insert(*f);
  }
  for (const Value& f : funs) {
    candidates.push_back(Value::pair(k.call, f));
    candidates.push_back(Value::pair(k.ret, f));
    candidates.push_back(Value::tuple({k.ret, k.with_res, f}));
  }
  Trace ext = t;
  auto search = [&](auto&& self, int depth) -> bool {
    if (brac_complete(ext)) return true;
    if (depth == 0) return false;
    for (const Value& c : candidates) {
      ext.push_back(c);
      bool ok = self(self, depth - 1);
      ext.pop_back();
      if (ok) return true;
    }
    return false;
  };
  return search(search, 3);
}

// ---- L-stack-simple ----

bool simple_member(const Trace& t) {
  const auto& k = tags();
  for (std::size_t i = 1; i <= t.size(); ++i) {
    const Value& e = at(t, i);
    if (after(e, k.push)) continue;
    const Value* v = after(e, k.pop);
    if (!v) return false;
    if (v->is_unit()) continue;
    bool pushed = false;
    for (std::size_t j = 1; j < i && !pushed; ++j) pushed = at(t, j) == Value::pair(k.push, *v);
    if (!pushed) return false;
  }
  return true;
}

// ---- L-stack ----

// Foreach callbacks are function identifiers; this keeps <call, f, a> apart
// from <call, push, a> and friends.
const Value* foreach_fun(const Value& v) {
  const Value* f = after2(v, tags().call, tags().foreach);
  return f && f->is_fun() ? f : nullptr;
}

bool trav_range(const Trace& t, std::size_t from, std::size_t to, const std::vector<Value>& alpha, std::size_t ai,
                const Value& f) {
  // t[from..to) against alpha[ai..]
  const auto& k = tags();
  if (from == to) return ai == alpha.size();
  if (to - from < 2 || ai == alpha.size()) return false;
  if (!is3(t[from], k.call, f, alpha[ai])) return false;
  if (!is2(t[from + 1], k.ret, f)) return false;
  return trav_range(t, from + 2, to, alpha, ai + 1, f);
}

bool stk_prefix(const Trace& t, std::size_t n, const std::vector<Value>& alpha) {
  const auto& k = tags();
  if (n == 0) return alpha.empty();
  if (n >= 2) {
    const Value& last = at(t, n);
    const Value& prev = at(t, n - 1);
    // t'·<call,push,a>·<ret,push>, α = a::α'
    if (is2(last, k.ret, k.push)) {
      const Value* a = after2(prev, k.call, k.push);
      if (a && !alpha.empty() && alpha.front() == *a &&
          stk_prefix(t, n - 2, std::vector<Value>(alpha.begin() + 1, alpha.end())))
        return true;
    }
    if (is2(prev, k.call, k.pop)) {
      if (const Value* x = after2(last, k.ret, k.pop)) {
        // <ret,pop,()> with α = ε
        if (x->is_unit() && alpha.empty() && stk_prefix(t, n - 2, alpha)) return true;
        // <ret,pop,a> with stk_tr(t', a::α)
        std::vector<Value> longer{*x};
        longer.insert(longer.end(), alpha.begin(), alpha.end());
        if (stk_prefix(t, n - 2, longer)) return true;
      }
    }
  }
  // t'·<call,foreach,f>·t''·<ret,foreach>
  if (is2(at(t, n), k.ret, k.foreach)) {
    for (std::size_t m = n - 1; m >= 1; --m) {
      const Value* f = foreach_fun(at(t, m));
      if (f && stk_prefix(t, m - 1, alpha) && trav_range(t, m, n - 1, alpha, 0, *f)) return true;
    }
  }
  return false;
}

// p = t[from..] is a proper prefix of one episode starting with stack α.
bool episode_prefix(const Trace& t, std::size_t from, const std::vector<Value>& alpha) {
  const auto& k = tags();
  const std::size_t len = t.size() - from;
  if (len == 0) return true;
  const Value& head = t[from];
  if (after2(head, k.call, k.push) || is2(head, k.call, k.pop)) return len == 1;
  const Value* f = foreach_fun(head);
  if (!f) return false;
  if (len - 1 > 2 * alpha.size()) return false;
  for (std::size_t i = from + 1, ai = 0; i < t.size(); ++i) {
    const bool ok = (i - from - 1) % 2 == 0 ? is3(t[i], k.call, *f, alpha[ai]) : is2(t[i], k.ret, *f);
    if (!ok) return false;
    if ((i - from - 1) % 2 == 1) ++ai;
  }
  return true;
}

// ---- L-str ----

bool in_str_alphabet(const Value& v) {
  const auto& k = tags();
  for (const Value* tag : {&k.constant, &k.input, &k.sanitize, &k.sink}) {
    if (const Value* s = after(v, *tag)) return s->is_loc();
  }
  const Value* rest = after(v, k.concat);
  if (!rest || !rest->is_pair() || !rest->second().is_pair()) return false;
  return rest->first().is_loc() && rest->second().first().is_loc() && rest->second().second().is_loc();
}

bool esafe_len(const Value& s, const Trace& t, std::size_t n) {
  const auto& k = tags();
  if (n == 0) return false;
  const Value& h = at(t, n);
  if (esafe_len(s, t, n - 1)) return true;
  if (h == Value::pair(k.constant, s) || h == Value::pair(k.sanitize, s)) return true;
  const Value* rest = after(h, k.concat);
  if (rest && rest->is_pair() && rest->first() == s && rest->second().is_pair())
    return esafe_len(rest->second().first(), t, n - 1) && esafe_len(rest->second().second(), t, n - 1);
  return false;
}

// The string allocated by t[n], if any.
const Value* alloc_target(const Value& e) {
  const auto& k = tags();
  if (const Value* s = after(e, k.constant)) return s;
  if (const Value* s = after(e, k.input)) return s;
  const Value* rest = after(e, k.concat);
  if (rest && rest->is_pair() && rest->second().is_pair()) return &rest->first();
  return nullptr;
}

}  // namespace

bool noclose(const Trace& t, std::size_t n, std::size_t m) {
  for (std::size_t k = n + 1; k < m && k <= t.size(); ++k)
    if (at(t, k) == tags().close) return false;
  return true;
}

bool isopen_check(const Trace& t, std::size_t n) {
  if (n < 1 || n > t.size() + 1)
    throw std::out_of_range("isopen: index " + std::to_string(n) + " outside 1.." + std::to_string(t.size() + 1));
  for (std::size_t m = 1; m < n; ++m)
    if (at(t, m) == tags().open && noclose(t, m, n)) return true;
  return false;
}

bool file_trace(const Trace& t) {
  for (std::size_t n = 1; n <= t.size(); ++n) {
    const Value& e = at(t, n);
    if ((e == tags().read || e == tags().close) && !isopen_check(t, n)) return false;
  }
  return true;
}

bool esafe(const Value& s, const Trace& t) { return esafe_len(s, t, t.size()); }

bool allocs(const Value& s, const Trace& t, std::size_t n) {
  const Value* target = alloc_target(at(t, n));
  return target && *target == s;
}

bool notfresh(const Trace& t) {
  for (std::size_t n = 1; n <= t.size(); ++n) {
    const Value* s = alloc_target(at(t, n));
    if (!s) continue;
    for (std::size_t m = n + 1; m <= t.size(); ++m)
      if (allocs(*s, t, m)) return true;
  }
  return false;
}

bool stk_tr_check(const Trace& t, const std::vector<Value>& alpha) { return stk_prefix(t, t.size(), alpha); }

bool trav(const Trace& t, const std::vector<Value>& alpha, const Value& f) {
  return trav_range(t, 0, t.size(), alpha, 0, f);
}

bool member(LangId lang, const Trace& t) {
  Oracle o(lang);
  for (const Value& v : t) o.push(v);
  return o.member();
}

// ---- Oracle ----

Oracle::Oracle(LangId lang) : lang_(lang) {
  stacks_.push_back({{}});  // stk_tr(ε, ε)
  safe_.emplace_back();
  str_alphabet_ok_.push_back(true);
}

void Oracle::push(const Value& ev) {
  t_.push_back(ev);
  const std::size_t n = t_.size();
  if (lang_ == LangId::stack) {
    // Each stk_tr clause, reading the earlier prefixes' results.
    const auto& k = tags();
    std::vector<std::vector<Value>> out;
    auto add = [&](std::vector<Value> a) {
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
    };
    if (n >= 2) {
      const Value& last = t_[n - 1];
      const Value& prev = t_[n - 2];
      if (is2(last, k.ret, k.push)) {
        if (const Value* a = after2(prev, k.call, k.push)) {
          for (const auto& alpha : stacks_[n - 2]) {
            std::vector<Value> grown{*a};
            grown.insert(grown.end(), alpha.begin(), alpha.end());
            add(std::move(grown));
          }
        }
      }
      if (is2(prev, k.call, k.pop)) {
        if (const Value* x = after2(last, k.ret, k.pop)) {
          for (const auto& alpha : stacks_[n - 2]) {
            if (x->is_unit() && alpha.empty()) add({});
            if (!alpha.empty() && alpha.front() == *x) add(std::vector<Value>(alpha.begin() + 1, alpha.end()));
          }
        }
      }
    }
    if (is2(t_[n - 1], k.ret, k.foreach)) {
      for (std::size_t m = n - 1; m >= 1; --m) {
        const Value* f = foreach_fun(t_[m - 1]);
        if (!f) continue;
        for (const auto& alpha : stacks_[m - 1])
          if (trav_range(t_, m, n - 1, alpha, 0, *f)) add(alpha);
      }
    }
    stacks_.push_back(std::move(out));
  } else if (lang_ == LangId::str) {
    // esafe(s, t·h) for every s, from esafe(·, t).
    const auto& k = tags();
    std::set<Value> safe = safe_.back();
    if (const Value* s = after(ev, k.constant)) safe.insert(*s);
    if (const Value* s = after(ev, k.sanitize)) safe.insert(*s);
    const Value* rest = after(ev, k.concat);
    if (rest && rest->is_pair() && rest->second().is_pair()) {
      const auto& before = safe_.back();
      if (before.contains(rest->second().first()) && before.contains(rest->second().second()))
        safe.insert(rest->first());
    }
    safe_.push_back(std::move(safe));
    str_alphabet_ok_.push_back(str_alphabet_ok_.back() && in_str_alphabet(ev));
  }
}

void Oracle::pop() {
  if (t_.empty()) throw std::logic_error("Oracle::pop on empty trace");
  t_.pop_back();
  if (lang_ == LangId::stack) stacks_.pop_back();
  if (lang_ == LangId::str) {
    safe_.pop_back();
    str_alphabet_ok_.pop_back();
  }
}

bool Oracle::stack_member() const {
  // L-stack is the prefix closure of {t | stk_tr(t, ε)}. Any complete t with
  // stk_tr(t, α) extends to stk_tr(·, ε) by popping α, and stk_tr splits a
  // trace into whole episodes, so t is in the closure iff t = t1·p where
  // stk_tr(t1, α) and p is a proper prefix of one episode run from α.
  for (std::size_t j = t_.size() + 1; j-- > 0;) {
    for (const auto& alpha : stacks_[j])
      if (episode_prefix(t_, j, alpha)) return true;
  }
  return false;
}

bool Oracle::str_member() const {
  if (!str_alphabet_ok_.back()) return false;
  const auto& safe = safe_.back();
  bool sinks_ok = true;
  for (const Value& e : t_) {
    const Value* s = after(e, tags().sink);
    if (s && !safe.contains(*s)) {
      sinks_ok = false;
      break;
    }
  }
  return sinks_ok || notfresh(t_);
}

bool Oracle::member() const {
  switch (lang_) {
    case LangId::file: return file_member(t_);
    case LangId::coll: return coll_member(t_);
    case LangId::brac: return brac_member(t_);
    case LangId::stack: return stack_member();
    case LangId::stack_simple: return simple_member(t_);
    case LangId::str: return str_member();
  }
  return false;
}

}  // namespace sltrace
