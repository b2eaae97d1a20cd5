#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sltrace {

// Object-language values. Pairs share their children, so copying a Value is
// cheap and values are immutable once built.
class Value {
 public:
  enum class Kind : std::uint8_t { unit, integer, loc, fun, sym, pair };

  Value() = default;  // unit

  static Value unit() { return Value(); }
  static Value integer(std::int64_t n);
  static Value loc(std::uint64_t id);
  static Value fun(std::uint64_t id);
  static Value sym(std::string_view name);
  static Value pair(Value left, Value right);

  // Right-nested tuple: tuple({a, b, c}) == pair(a, pair(b, c)).
  static Value tuple(std::initializer_list<Value> items);
  static Value tuple(const std::vector<Value>& items);

  Kind kind() const { return kind_; }
  bool is_unit() const { return kind_ == Kind::unit; }
  bool is_int() const { return kind_ == Kind::integer; }
  bool is_loc() const { return kind_ == Kind::loc; }
  bool is_fun() const { return kind_ == Kind::fun; }
  bool is_sym() const { return kind_ == Kind::sym; }
  bool is_pair() const { return kind_ == Kind::pair; }

  // Accessors assume the matching kind.
  std::int64_t as_int() const { return payload_; }
  std::uint64_t as_loc() const { return static_cast<std::uint64_t>(payload_); }
  std::uint64_t as_fun() const { return static_cast<std::uint64_t>(payload_); }
  const std::string& sym_name() const;
  const Value& first() const;
  const Value& second() const;

  bool is_sym(std::string_view name) const;

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  struct PairNode;

  Kind kind_ = Kind::unit;
  std::int64_t payload_ = 0;  // int value, loc/fun id, or interned symbol id
  std::shared_ptr<const PairNode> pair_;
};

struct Value::PairNode {
  Value left;
  Value right;
};

// Flattens right-nested pairs: <a, b, c>. Symbols print as 'name, ids as #l3
// and #f3.
std::string to_string(const Value& v);

// Splits a right-nested tuple into exactly n components, or nullopt.
std::optional<std::vector<Value>> untuple(const Value& v, std::size_t n);

using Trace = std::vector<Value>;

std::string to_string(const Trace& t);

}  // namespace sltrace
