#include "sltrace/enumerate.hpp"

#include "events.hpp"

using sltrace::detail::tags;

namespace sltrace {

Trace small_alphabet(LangId lang) {
  const auto& k = tags();
  const Value f1 = Value::fun(1), f2 = Value::fun(2);
  const Value l1 = Value::loc(1), l2 = Value::loc(2);
  const Value one = Value::integer(1), two = Value::integer(2);
  switch (lang) {
    case LangId::file: return {k.open, k.close, k.read};
    case LangId::coll:
      return {k.size, k.add, k.remove, Value::pair(k.iterator, l1), Value::pair(k.iterator, l2),
              Value::pair(k.next, l1), Value::pair(k.next, l2)};
    case LangId::brac: {
      Trace a = {Value::pair(k.call, k.op), Value::pair(k.ret, k.op)};
      for (const Value& f : {f1, f2}) {
        a.push_back(Value::tuple({k.call, k.with_res, f}));
        a.push_back(Value::pair(k.call, f));
        a.push_back(Value::pair(k.ret, f));
        a.push_back(Value::tuple({k.ret, k.with_res, f}));
      }
      return a;
    }
    case LangId::stack:
      return {Value::tuple({k.call, k.push, one}),
              Value::pair(k.ret, k.push),
              Value::pair(k.call, k.pop),
              Value::tuple({k.ret, k.pop, Value::unit()}),
              Value::tuple({k.ret, k.pop, one}),
              Value::tuple({k.call, k.foreach, f1}),
              Value::tuple({k.call, f1, one}),
              Value::pair(k.ret, f1),
              Value::pair(k.ret, k.foreach)};
    case LangId::stack_simple: {
      Trace a;
      for (const Value& tag : {k.push, k.pop})
        for (const Value& v : {Value::unit(), one, two}) a.push_back(Value::pair(tag, v));
      return a;
    }
    case LangId::str: {
      Trace a;
      for (const Value& tag : {k.constant, k.input, k.sanitize, k.sink})
        for (const Value& s : {l1, l2}) a.push_back(Value::pair(tag, s));
      for (const Value& s : {l1, l2})
        for (const Value& s1 : {l1, l2})
          for (const Value& s2 : {l1, l2}) a.push_back(Value::tuple({k.concat, s, s1, s2}));
      return a;
    }
  }
  return {};
}

std::size_t small_max_len(LangId lang) { return lang == LangId::stack ? 8 : 6; }

namespace {

struct Walker {
  LangId lang;
  const Trace& alphabet;
  std::size_t max_len;
  const TraceVisitor& visit;
  Oracle oracle;
  std::vector<MonitorState> states;  // states[d] after d events
  EnumReport report;

  void node(bool prefixes_ok) {
    const Trace& t = oracle.trace();
    const bool mem = oracle.member();
    const bool mon = mon_verdict(lang, states[t.size()]);
    ++report.traces;
    if (mem) ++report.accepted;
    if (mem != mon) {
      ++report.disagreements;
      if (!report.first_disagreement) report.first_disagreement = t;
    }
    if (mem && !prefixes_ok) {
      ++report.closure_violations;
      if (!report.first_closure_violation) report.first_closure_violation = t;
    }
    if (visit) visit(t, mem);
    if (t.size() == max_len) return;
    for (const Value& ev : alphabet) {
      states[t.size() + 1] = mon_step(lang, states[t.size()], ev);
      oracle.push(ev);
      node(prefixes_ok && mem);
      oracle.pop();
    }
  }
};

}  // namespace

EnumReport enumerate_check(LangId lang, const Trace& alphabet, std::size_t max_len, const TraceVisitor& visit) {
  Walker w{lang, alphabet, max_len, visit, Oracle(lang), std::vector<MonitorState>(max_len + 1, mon_init(lang)), {}};
  w.report.lang = lang;
  w.report.max_len = max_len;
  w.node(true);
  return w.report;
}

}  // namespace sltrace
