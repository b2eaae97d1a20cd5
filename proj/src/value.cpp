#include "sltrace/value.hpp"

#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace sltrace {

namespace {

// Symbol names are interned so that equality is an integer compare.
class SymbolTable {
 public:
  std::int64_t intern(std::string_view name) {
    std::lock_guard lock(mu_);
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    auto id = static_cast<std::int64_t>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
  }

  const std::string& name(std::int64_t id) {
    std::lock_guard lock(mu_);
    return names_[static_cast<std::size_t>(id)];
  }

 private:
  std::mutex mu_;
  std::deque<std::string> names_;  // stable references
  std::unordered_map<std::string, std::int64_t> ids_;
};

SymbolTable& symbols() {
  static SymbolTable table;
  return table;
}

}  // namespace

Value Value::integer(std::int64_t n) {
  Value v;
  v.kind_ = Kind::integer;
  v.payload_ = n;
  return v;
}

Value Value::loc(std::uint64_t id) {
  Value v;
  v.kind_ = Kind::loc;
  v.payload_ = static_cast<std::int64_t>(id);
  return v;
}

Value Value::fun(std::uint64_t id) {
  Value v;
  v.kind_ = Kind::fun;
  v.payload_ = static_cast<std::int64_t>(id);
  return v;
}

Value Value::sym(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("symbol name must be non-empty");
  Value v;
  v.kind_ = Kind::sym;
  v.payload_ = symbols().intern(name);
  return v;
}

Value Value::pair(Value left, Value right) {
  Value v;
  v.kind_ = Kind::pair;
  v.pair_ = std::make_shared<const PairNode>(PairNode{std::move(left), std::move(right)});
  return v;
}

Value Value::tuple(std::initializer_list<Value> items) {
  return tuple(std::vector<Value>(items));
}

Value Value::tuple(const std::vector<Value>& items) {
  if (items.empty()) return unit();
  Value acc = items.back();
  for (auto it = items.rbegin() + 1; it != items.rend(); ++it) acc = pair(*it, std::move(acc));
  return acc;
}

const std::string& Value::sym_name() const { return symbols().name(payload_); }

const Value& Value::first() const { return pair_->left; }
const Value& Value::second() const { return pair_->right; }

bool Value::is_sym(std::string_view name) const {
  return kind_ == Kind::sym && sym_name() == name;
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != Value::Kind::pair) return a.payload_ == b.payload_;
  if (a.pair_ == b.pair_) return true;
  return a.pair_->left == b.pair_->left && a.pair_->right == b.pair_->right;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  switch (a.kind_) {
    case Value::Kind::unit:
      return std::strong_ordering::equal;
    case Value::Kind::sym:
      if (a.payload_ == b.payload_) return std::strong_ordering::equal;
      return a.sym_name() <=> b.sym_name();
    case Value::Kind::pair: {
      if (a.pair_ == b.pair_) return std::strong_ordering::equal;
      if (auto c = a.pair_->left <=> b.pair_->left; c != 0) return c;
      return a.pair_->right <=> b.pair_->right;
    }
    default:
      return a.payload_ <=> b.payload_;
  }
}

namespace {

void append(std::string& out, const Value& v) {
  switch (v.kind()) {
    case Value::Kind::unit:
      out += "()";
      break;
    case Value::Kind::integer:
      out += std::to_string(v.as_int());
      break;
    case Value::Kind::loc:
      out += "#l" + std::to_string(v.as_loc());
      break;
    case Value::Kind::fun:
      out += "#f" + std::to_string(v.as_fun());
      break;
    case Value::Kind::sym:
      out += '\'';
      out += v.sym_name();
      break;
    case Value::Kind::pair: {
      out += '<';
      const Value* cur = &v;
      while (true) {
        append(out, cur->first());
        out += ", ";
        if (!cur->second().is_pair()) break;
        cur = &cur->second();
      }
      append(out, cur->second());
      out += '>';
      break;
    }
  }
}

}  // namespace

std::string to_string(const Value& v) {
  std::string out;
  append(out, v);
  return out;
}

std::optional<std::vector<Value>> untuple(const Value& v, std::size_t n) {
  if (n == 0) return std::nullopt;
  std::vector<Value> parts;
  parts.reserve(n);
  const Value* cur = &v;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!cur->is_pair()) return std::nullopt;
    parts.push_back(cur->first());
    cur = &cur->second();
  }
  parts.push_back(*cur);
  return parts;
}

std::string to_string(const Trace& t) {
  std::string out = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += to_string(t[i]);
  }
  out += ']';
  return out;
}

}  // namespace sltrace
