#pragma once

#include "sltrace/value.hpp"

namespace sltrace::detail {

// Interned event tags, so matching is an integer compare.
struct Tags {
  Value open = Value::sym("open"), close = Value::sym("close"), read = Value::sym("read");
  Value size = Value::sym("size"), add = Value::sym("add"), remove = Value::sym("remove");
  Value iterator = Value::sym("iterator"), next = Value::sym("next");
  Value call = Value::sym("call"), ret = Value::sym("ret");
  Value with_res = Value::sym("withRes"), op = Value::sym("op");
  Value push = Value::sym("push"), pop = Value::sym("pop"), foreach = Value::sym("foreach");
  Value input = Value::sym("input"), constant = Value::sym("constant"), sanitize = Value::sym("sanitize");
  Value concat = Value::sym("concat"), sink = Value::sym("sink");
};

inline const Tags& tags() {
  static const Tags t;
  return t;
}

// If v = <tag, rest...>, the rest; otherwise null.
inline const Value* after(const Value& v, const Value& tag) {
  if (!v.is_pair() || v.first() != tag) return nullptr;
  return &v.second();
}

// v = <t1, t2, x> gives x.
inline const Value* after2(const Value& v, const Value& t1, const Value& t2) {
  const Value* r = after(v, t1);
  return r ? after(*r, t2) : nullptr;
}

// v = <t1, t2> exactly.
inline bool is2(const Value& v, const Value& t1, const Value& t2) {
  const Value* r = after(v, t1);
  return r && *r == t2;
}

// v = <t1, t2, x> exactly.
inline bool is3(const Value& v, const Value& t1, const Value& t2, const Value& x) {
  const Value* r = after2(v, t1, t2);
  return r && *r == x;
}

}  // namespace sltrace::detail
