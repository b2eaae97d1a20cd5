#include "sltrace/expr.hpp"

#include <stdexcept>

#include "overloaded.hpp"

namespace sltrace {

using detail::overloaded;

std::string_view op_name(BinOp op) {
  switch (op) {
    case BinOp::eq: return "=";
    case BinOp::assign: return ":=";
    case BinOp::add: return "+";
    case BinOp::sub: return "-";
    case BinOp::mul: return "*";
    case BinOp::lt: return "<";
  }
  return "?";
}

Expr::Expr() : node_(std::make_shared<const ExprNode>(ExprNode{ValE{Value::unit()}})) {}

Expr Expr::val(Value v) { return Expr(std::make_shared<const ExprNode>(ExprNode{ValE{std::move(v)}})); }
Expr Expr::var(std::string name) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{VarE{std::move(name)}}));
}
Expr Expr::lam(std::string param, Expr body) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{LamE{std::move(param), std::move(body)}}));
}
Expr Expr::app(Expr fn, Expr arg) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{AppE{std::move(fn), std::move(arg)}}));
}
Expr Expr::if_(Expr cond, Expr then_branch, Expr else_branch) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{IfE{std::move(cond), std::move(then_branch), std::move(else_branch)}}));
}
Expr Expr::mk_pair(Expr left, Expr right) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{PairE{std::move(left), std::move(right)}}));
}
Expr Expr::proj(int index, Expr e) {
  if (index != 1 && index != 2) throw std::invalid_argument("projection index must be 1 or 2");
  return Expr(std::make_shared<const ExprNode>(ExprNode{ProjE{index, std::move(e)}}));
}
Expr Expr::ref(Expr e) { return Expr(std::make_shared<const ExprNode>(ExprNode{RefE{std::move(e)}})); }
Expr Expr::deref(Expr e) { return Expr(std::make_shared<const ExprNode>(ExprNode{DerefE{std::move(e)}})); }
Expr Expr::binop(BinOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{BinOpE{op, std::move(lhs), std::move(rhs)}}));
}
Expr Expr::emit(Expr e) { return Expr(std::make_shared<const ExprNode>(ExprNode{EmitE{std::move(e)}})); }

Expr Expr::let(std::string x, Expr bound, Expr body) {
  return app(lam(std::move(x), std::move(body)), std::move(bound));
}

Expr Expr::seq(Expr first, Expr rest) {
  return app(lam(std::string(kWildcard), std::move(rest)), std::move(first));
}

bool Expr::is_value() const { return std::holds_alternative<ValE>(node_->v); }

const Value& Expr::value() const { return std::get<ValE>(node_->v).v; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = a.node_->v;
  const auto& y = b.node_->v;
  if (x.index() != y.index()) return false;
  return std::visit(
      overloaded{
          [&](const ValE& n) { return n.v == std::get<ValE>(y).v; },
          [&](const VarE& n) { return n.name == std::get<VarE>(y).name; },
          [&](const LamE& n) {
            const auto& m = std::get<LamE>(y);
            return n.param == m.param && n.body == m.body;
          },
          [&](const AppE& n) {
            const auto& m = std::get<AppE>(y);
            return n.fn == m.fn && n.arg == m.arg;
          },
          [&](const IfE& n) {
            const auto& m = std::get<IfE>(y);
            return n.cond == m.cond && n.then_branch == m.then_branch && n.else_branch == m.else_branch;
          },
          [&](const PairE& n) {
            const auto& m = std::get<PairE>(y);
            return n.left == m.left && n.right == m.right;
          },
          [&](const ProjE& n) {
            const auto& m = std::get<ProjE>(y);
            return n.index == m.index && n.e == m.e;
          },
          [&](const RefE& n) { return n.e == std::get<RefE>(y).e; },
          [&](const DerefE& n) { return n.e == std::get<DerefE>(y).e; },
          [&](const BinOpE& n) {
            const auto& m = std::get<BinOpE>(y);
            return n.op == m.op && n.lhs == m.lhs && n.rhs == m.rhs;
          },
          [&](const EmitE& n) { return n.e == std::get<EmitE>(y).e; },
      },
      x);
}

namespace {

void collect_free(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const ValE&) {},
                 [&](const VarE& n) {
                   if (!bound.contains(n.name)) out.insert(n.name);
                 },
                 [&](const LamE& n) {
                   bool fresh = bound.insert(n.param).second;
                   collect_free(n.body, bound, out);
                   if (fresh) bound.erase(n.param);
                 },
                 [&](const AppE& n) {
                   collect_free(n.fn, bound, out);
                   collect_free(n.arg, bound, out);
                 },
                 [&](const IfE& n) {
                   collect_free(n.cond, bound, out);
                   collect_free(n.then_branch, bound, out);
                   collect_free(n.else_branch, bound, out);
                 },
                 [&](const PairE& n) {
                   collect_free(n.left, bound, out);
                   collect_free(n.right, bound, out);
                 },
                 [&](const ProjE& n) { collect_free(n.e, bound, out); },
                 [&](const RefE& n) { collect_free(n.e, bound, out); },
                 [&](const DerefE& n) { collect_free(n.e, bound, out); },
                 [&](const BinOpE& n) {
                   collect_free(n.lhs, bound, out);
                   collect_free(n.rhs, bound, out);
                 },
                 [&](const EmitE& n) { collect_free(n.e, bound, out); },
             },
             e.node().v);
}

}  // namespace

std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_free(e, bound, out);
  return out;
}

bool is_closed(const Expr& e) { return free_vars(e).empty(); }

Expr subst(const Expr& e, const std::string& x, const Value& v) {
  // Values are closed, so no binder can capture anything in v; the only
  // work is stopping at binders that shadow x. Unchanged subtrees are shared.
  auto sub = [&](const Expr& c) { return subst(c, x, v); };
  auto same = [](const Expr& a, const Expr& b) { return a.same_node(b); };
  return std::visit(
      overloaded{
          [&](const ValE&) { return e; },
          [&](const VarE& n) { return n.name == x ? Expr::val(v) : e; },
          [&](const LamE& n) {
            if (n.param == x) return e;
            Expr b = sub(n.body);
            return same(b, n.body) ? e : Expr::lam(n.param, std::move(b));
          },
          [&](const AppE& n) {
            Expr f = sub(n.fn), a = sub(n.arg);
            return same(f, n.fn) && same(a, n.arg) ? e : Expr::app(std::move(f), std::move(a));
          },
          [&](const IfE& n) {
            Expr c = sub(n.cond), t = sub(n.then_branch), f = sub(n.else_branch);
            if (same(c, n.cond) && same(t, n.then_branch) && same(f, n.else_branch)) return e;
            return Expr::if_(std::move(c), std::move(t), std::move(f));
          },
          [&](const PairE& n) {
            Expr l = sub(n.left), r = sub(n.right);
            return same(l, n.left) && same(r, n.right) ? e : Expr::mk_pair(std::move(l), std::move(r));
          },
          [&](const ProjE& n) {
            Expr c = sub(n.e);
            return same(c, n.e) ? e : Expr::proj(n.index, std::move(c));
          },
          [&](const RefE& n) {
            Expr c = sub(n.e);
            return same(c, n.e) ? e : Expr::ref(std::move(c));
          },
          [&](const DerefE& n) {
            Expr c = sub(n.e);
            return same(c, n.e) ? e : Expr::deref(std::move(c));
          },
          [&](const BinOpE& n) {
            Expr l = sub(n.lhs), r = sub(n.rhs);
            return same(l, n.lhs) && same(r, n.rhs) ? e : Expr::binop(n.op, std::move(l), std::move(r));
          },
          [&](const EmitE& n) {
            Expr c = sub(n.e);
            return same(c, n.e) ? e : Expr::emit(std::move(c));
          },
      },
      e.node().v);
}

bool contains_emit(const Expr& e) {
  return std::visit(overloaded{
                        [](const ValE&) { return false; },
                        [](const VarE&) { return false; },
                        [](const LamE& n) { return contains_emit(n.body); },
                        [](const AppE& n) { return contains_emit(n.fn) || contains_emit(n.arg); },
                        [](const IfE& n) {
                          return contains_emit(n.cond) || contains_emit(n.then_branch) ||
                                 contains_emit(n.else_branch);
                        },
                        [](const PairE& n) { return contains_emit(n.left) || contains_emit(n.right); },
                        [](const ProjE& n) { return contains_emit(n.e); },
                        [](const RefE& n) { return contains_emit(n.e); },
                        [](const DerefE& n) { return contains_emit(n.e); },
                        [](const BinOpE& n) { return contains_emit(n.lhs) || contains_emit(n.rhs); },
                        [](const EmitE&) { return true; },
                    },
                    e.node().v);
}

std::size_t expr_size(const Expr& e) {
  return 1 + std::visit(overloaded{
                            [](const ValE&) -> std::size_t { return 0; },
                            [](const VarE&) -> std::size_t { return 0; },
                            [](const LamE& n) { return expr_size(n.body); },
                            [](const AppE& n) { return expr_size(n.fn) + expr_size(n.arg); },
                            [](const IfE& n) {
                              return expr_size(n.cond) + expr_size(n.then_branch) + expr_size(n.else_branch);
                            },
                            [](const PairE& n) { return expr_size(n.left) + expr_size(n.right); },
                            [](const ProjE& n) { return expr_size(n.e); },
                            [](const RefE& n) { return expr_size(n.e); },
                            [](const DerefE& n) { return expr_size(n.e); },
                            [](const BinOpE& n) { return expr_size(n.lhs) + expr_size(n.rhs); },
                            [](const EmitE& n) { return expr_size(n.e); },
                        },
                        e.node().v);
}

}  // namespace sltrace
