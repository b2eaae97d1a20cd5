#include <algorithm>

#include "events.hpp"
#include "sltrace/monitors.hpp"

namespace sltrace {

using detail::after;
using detail::after2;
using detail::is2;
using detail::is3;
using detail::tags;

namespace {

// Each step returns false to reject (the caller latches).

bool step_file(FileMon& m, const Value& ev) {
  const auto& k = tags();
  if (ev == k.open) {
    m.open = true;
    return true;
  }
  if (ev == k.read) return m.open;
  if (ev == k.close) {
    if (!m.open) return false;
    m.open = false;
    return true;
  }
  return false;
}

bool step_coll(CollMon& m, const Value& ev) {
  const auto& k = tags();
  if (ev == k.size) return true;
  if (ev == k.add || ev == k.remove) {
    m.valid.clear();
    return true;
  }
  if (const Value* l = after(ev, k.iterator)) {
    if (!l->is_loc()) return false;
    m.valid.insert(*l);
    return true;
  }
  if (const Value* l = after(ev, k.next)) return l->is_loc() && m.valid.contains(*l);
  return false;
}

bool step_brac(BracMon& m, const Value& ev) {
  const auto& k = tags();
  using P = BracMon::Phase;
  switch (m.phase) {
    case P::balanced: {
      const Value* f = after2(ev, k.call, k.with_res);
      if (!f || !f->is_fun()) return false;
      m.f = *f;
      m.phase = P::after_call_with_res;
      return true;
    }
    case P::after_call_with_res:
      if (!is2(ev, k.call, m.f)) return false;
      m.phase = P::in_body;
      return true;
    case P::in_body:
      if (is2(ev, k.call, k.op)) {
        m.phase = P::in_op;
        return true;
      }
      if (is2(ev, k.ret, m.f)) {
        m.phase = P::after_ret_f;
        return true;
      }
      return false;
    case P::in_op:
      if (!is2(ev, k.ret, k.op)) return false;
      m.phase = P::in_body;
      return true;
    case P::after_ret_f:
      if (!is3(ev, k.ret, k.with_res, m.f)) return false;
      m.phase = P::balanced;
      m.f = Value();
      return true;
  }
  return false;
}

bool step_stack(StackMon& m, const Value& ev) {
  const auto& k = tags();
  using M = StackMon::Mode;
  switch (m.mode) {
    case M::idle:
      if (const Value* a = after2(ev, k.call, k.push)) {
        m.mode = M::in_push;
        m.arg = *a;
        return true;
      }
      if (is2(ev, k.call, k.pop)) {
        m.mode = M::in_pop;
        return true;
      }
      if (const Value* f = after2(ev, k.call, k.foreach); f && f->is_fun()) {
        m.mode = M::in_foreach;
        m.arg = *f;
        m.pending = m.stack;
        m.in_call = false;
        return true;
      }
      return false;
    case M::in_push:
      if (!is2(ev, k.ret, k.push)) return false;
      m.stack.insert(m.stack.begin(), m.arg);
      m.arg = Value();
      m.mode = M::idle;
      return true;
    case M::in_pop: {
      const Value* x = after2(ev, k.ret, k.pop);
      if (!x) return false;
      if (m.stack.empty()) {
        if (!x->is_unit()) return false;
      } else {
        if (*x != m.stack.front()) return false;
        m.stack.erase(m.stack.begin());
      }
      m.mode = M::idle;
      return true;
    }
    case M::in_foreach:
      if (m.in_call) {
        if (!is2(ev, k.ret, m.arg)) return false;
        m.pending.erase(m.pending.begin());
        m.in_call = false;
        return true;
      }
      if (m.pending.empty()) {
        if (!is2(ev, k.ret, k.foreach)) return false;
        m.mode = M::idle;
        m.arg = Value();
        return true;
      }
      if (!is3(ev, k.call, m.arg, m.pending.front())) return false;
      m.in_call = true;
      return true;
  }
  return false;
}

bool step_simple(SimpleMon& m, const Value& ev) {
  const auto& k = tags();
  if (const Value* v = after(ev, k.push)) {
    m.pushed.insert(*v);
    return true;
  }
  if (const Value* v = after(ev, k.pop)) return v->is_unit() || m.pushed.contains(*v);
  return false;
}

bool step_str(StrMon& m, const Value& ev) {
  const auto& k = tags();
  auto allocate = [&](const Value& s) {
    if (!m.allocated.insert(s).second) m.notfresh = true;
  };
  if (const Value* s = after(ev, k.constant)) {
    if (!s->is_loc()) return false;
    allocate(*s);
    m.safe.insert(*s);
    return true;
  }
  if (const Value* s = after(ev, k.input)) {
    if (!s->is_loc()) return false;
    allocate(*s);
    return true;
  }
  if (const Value* s = after(ev, k.sanitize)) {
    if (!s->is_loc()) return false;
    m.safe.insert(*s);
    return true;
  }
  if (const Value* s = after(ev, k.sink)) {
    if (!s->is_loc()) return false;
    m.sunk.insert(*s);
    return true;
  }
  if (const Value* rest = after(ev, k.concat)) {
    if (!rest->is_pair() || !rest->second().is_pair()) return false;
    const Value& s = rest->first();
    const Value& s1 = rest->second().first();
    const Value& s2 = rest->second().second();
    if (!s.is_loc() || !s1.is_loc() || !s2.is_loc()) return false;
    // s1, s2 judged against the trace before this event
    bool safe = m.safe.contains(s1) && m.safe.contains(s2);
    allocate(s);
    if (safe) m.safe.insert(s);
    return true;
  }
  return false;
}

}  // namespace

MonitorState mon_init(LangId lang) {
  switch (lang) {
    case LangId::file: return {lang, false, FileMon{}};
    case LangId::coll: return {lang, false, CollMon{}};
    case LangId::brac: return {lang, false, BracMon{}};
    case LangId::stack: return {lang, false, StackMon{}};
    case LangId::stack_simple: return {lang, false, SimpleMon{}};
    case LangId::str: return {lang, false, StrMon{}};
  }
  return {lang, false, FileMon{}};
}

MonitorState mon_step(LangId lang, const MonitorState& st, const Value& ev) {
  if (st.rejected) return st;
  MonitorState next = st;
  bool ok = false;
  switch (lang) {
    case LangId::file: ok = step_file(std::get<FileMon>(next.data), ev); break;
    case LangId::coll: ok = step_coll(std::get<CollMon>(next.data), ev); break;
    case LangId::brac: ok = step_brac(std::get<BracMon>(next.data), ev); break;
    case LangId::stack: ok = step_stack(std::get<StackMon>(next.data), ev); break;
    case LangId::stack_simple: ok = step_simple(std::get<SimpleMon>(next.data), ev); break;
    case LangId::str: ok = step_str(std::get<StrMon>(next.data), ev); break;
  }
  if (!ok) next.rejected = true;
  return next;
}

bool mon_verdict(LangId lang, const MonitorState& st) {
  if (st.rejected) return false;
  if (lang == LangId::str) {
    const auto& m = std::get<StrMon>(st.data);
    return m.notfresh || std::includes(m.safe.begin(), m.safe.end(), m.sunk.begin(), m.sunk.end());
  }
  return true;
}

std::vector<bool> prefix_verdicts(LangId lang, const Trace& t) {
  std::vector<bool> out;
  MonitorState st = mon_init(lang);
  out.push_back(mon_verdict(lang, st));
  for (const Value& ev : t) {
    st = mon_step(lang, st, ev);
    out.push_back(mon_verdict(lang, st));
  }
  return out;
}

}  // namespace sltrace
