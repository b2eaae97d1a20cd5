#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>

#include "sltrace/value.hpp"

namespace sltrace {

enum class BinOp { eq, assign, add, sub, mul, lt };

std::string_view op_name(BinOp op);

struct ExprNode;

// Immutable expression tree handle. Children are shared, so rebuilding one
// path through a large term costs only the nodes on that path.
class Expr {
 public:
  Expr();  // Val(())

  static Expr val(Value v);
  static Expr var(std::string name);
  static Expr lam(std::string param, Expr body);
  static Expr app(Expr fn, Expr arg);
  static Expr if_(Expr cond, Expr then_branch, Expr else_branch);
  static Expr mk_pair(Expr left, Expr right);
  static Expr proj(int index, Expr e);  // index is 1 or 2
  static Expr ref(Expr e);
  static Expr deref(Expr e);
  static Expr binop(BinOp op, Expr lhs, Expr rhs);
  static Expr emit(Expr e);

  // Derived forms.
  static Expr let(std::string x, Expr bound, Expr body);
  static Expr seq(Expr first, Expr rest);

  const ExprNode& node() const { return *node_; }
  bool is_value() const;
  // Only valid when is_value().
  const Value& value() const;

  bool same_node(const Expr& other) const { return node_ == other.node_; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

// Binder name that never occurs as a variable reference; the derived
// sequencing form uses it.
inline constexpr std::string_view kWildcard = "_";

struct ValE {
  Value v;
};
struct VarE {
  std::string name;
};
struct LamE {
  std::string param;
  Expr body;
};
struct AppE {
  Expr fn;
  Expr arg;
};
struct IfE {
  Expr cond;
  Expr then_branch;
  Expr else_branch;
};
struct PairE {
  Expr left;
  Expr right;
};
struct ProjE {
  int index;
  Expr e;
};
struct RefE {
  Expr e;
};
struct DerefE {
  Expr e;
};
struct BinOpE {
  BinOp op;
  Expr lhs;
  Expr rhs;
};
struct EmitE {
  Expr e;
};

struct ExprNode {
  std::variant<ValE, VarE, LamE, AppE, IfE, PairE, ProjE, RefE, DerefE, BinOpE, EmitE> v;
};

std::set<std::string> free_vars(const Expr& e);
bool is_closed(const Expr& e);

// Capture-avoiding substitution of a closed value for free occurrences of x.
Expr subst(const Expr& e, const std::string& x, const Value& v);

bool contains_emit(const Expr& e);

// Number of nodes; used by the generator and reports.
std::size_t expr_size(const Expr& e);

}  // namespace sltrace
