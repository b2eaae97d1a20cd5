#include "sltrace/interp.hpp"

#include <vector>

#include "overloaded.hpp"
#include "sltrace/syntax.hpp"

namespace sltrace {

using detail::overloaded;

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::value: return "value";
    case RunStatus::stuck: return "stuck";
    case RunStatus::fuel_exhausted: return "fuel-exhausted";
    case RunStatus::halted: return "halted";
  }
  return "?";
}

namespace {

struct Frame {
  Expr parent;
  int slot;
};

Expr replace_child(const Expr& parent, int slot, Expr child) {
  return std::visit(
      overloaded{
          [&](const AppE& n) { return slot == 0 ? Expr::app(std::move(child), n.arg) : Expr::app(n.fn, std::move(child)); },
          [&](const IfE& n) { return Expr::if_(std::move(child), n.then_branch, n.else_branch); },
          [&](const PairE& n) {
            return slot == 0 ? Expr::mk_pair(std::move(child), n.right) : Expr::mk_pair(n.left, std::move(child));
          },
          [&](const ProjE& n) { return Expr::proj(n.index, std::move(child)); },
          [&](const RefE&) { return Expr::ref(std::move(child)); },
          [&](const DerefE&) { return Expr::deref(std::move(child)); },
          [&](const BinOpE& n) {
            return slot == 0 ? Expr::binop(n.op, std::move(child), n.rhs) : Expr::binop(n.op, n.lhs, std::move(child));
          },
          [&](const EmitE&) { return Expr::emit(std::move(child)); },
          [&](const auto&) -> Expr { return parent; },  // values, variables and lambdas have no holes
      },
      parent.node().v);
}

struct Contracted {
  std::optional<Expr> result;  // nullopt: stuck
  std::optional<Value> label;
  std::string reason;
};

Contracted stuck(std::string why) { return Contracted{std::nullopt, std::nullopt, std::move(why)}; }
Contracted to(Expr e) { return Contracted{std::move(e), std::nullopt, {}}; }
Contracted to(Value v) { return to(Expr::val(std::move(v))); }

Value truth(bool b) { return Value::integer(b ? 1 : 0); }

Contracted binop(BinOp op, const Value& a, const Value& b, Config& c) {
  if (op == BinOp::eq) return to(truth(a == b));
  if (op == BinOp::assign) {
    if (!a.is_loc()) return stuck("assignment to non-location " + to_string(a));
    auto it = c.heap.find(a.as_loc());
    if (it == c.heap.end()) return stuck("assignment to unallocated " + to_string(a));
    it->second = b;
    return to(Value::unit());
  }
  if (!a.is_int() || !b.is_int())
    return stuck(std::string("operator ") + std::string(op_name(op)) + " on non-integers " + to_string(a) + ", " +
                 to_string(b));
  std::int64_t x = a.as_int(), y = b.as_int(), r = 0;
  bool overflow = false;
  switch (op) {
    case BinOp::add: overflow = __builtin_add_overflow(x, y, &r); break;
    case BinOp::sub: overflow = __builtin_sub_overflow(x, y, &r); break;
    case BinOp::mul: overflow = __builtin_mul_overflow(x, y, &r); break;
    case BinOp::lt: return to(truth(x < y));
    default: break;
  }
  if (overflow) return stuck("integer overflow");
  return to(Value::integer(r));
}

// Contract a redex: every immediate subterm in an evaluation position is
// already a value.
Contracted contract(const Expr& redex, Config& c) {
  return std::visit(
      overloaded{
          [&](const LamE& n) {
            std::uint64_t f = c.next_fun++;
            c.fenv.emplace(f, Lambda{n.param, n.body});
            return to(Value::fun(f));
          },
          [&](const AppE& n) {
            const Value& f = n.fn.value();
            if (!f.is_fun()) return stuck("application of non-function " + to_string(f));
            auto it = c.fenv.find(f.as_fun());
            if (it == c.fenv.end()) return stuck("application of unknown function " + to_string(f));
            return to(subst(it->second.body, it->second.param, n.arg.value()));
          },
          [&](const IfE& n) {
            const Value& v = n.cond.value();
            if (!v.is_int()) return stuck("if on non-integer " + to_string(v));
            if (v.as_int() > 0) return to(n.then_branch);
            if (v.as_int() == 0) return to(n.else_branch);
            return stuck("if on negative integer " + to_string(v));
          },
          [&](const PairE& n) { return to(Value::pair(n.left.value(), n.right.value())); },
          [&](const ProjE& n) {
            const Value& v = n.e.value();
            if (!v.is_pair()) return stuck("projection of non-pair " + to_string(v));
            return to(n.index == 1 ? v.first() : v.second());
          },
          [&](const RefE& n) {
            std::uint64_t l = c.next_loc++;
            c.heap.emplace(l, n.e.value());
            return to(Value::loc(l));
          },
          [&](const DerefE& n) {
            const Value& v = n.e.value();
            if (!v.is_loc()) return stuck("dereference of non-location " + to_string(v));
            auto it = c.heap.find(v.as_loc());
            if (it == c.heap.end()) return stuck("dereference of unallocated " + to_string(v));
            return to(it->second);
          },
          [&](const BinOpE& n) { return binop(n.op, n.lhs.value(), n.rhs.value(), c); },
          [&](const EmitE& n) {
            Contracted r = to(Value::unit());
            r.label = n.e.value();
            return r;
          },
          [&](const VarE& n) { return stuck("free variable " + n.name); },
          [&](const ValE&) { return stuck("internal: value is not a redex"); },
      },
      redex.node().v);
}

}  // namespace

StepOutcome step_in_place(Config& c) {
  std::vector<Frame> frames;
  Expr cur = c.expr;
  while (true) {
    int descend = -1;  // child slot to descend into, or -1 for "cur is the redex"
    const Expr* child = nullptr;
    auto first_nonvalue = [&](std::initializer_list<const Expr*> kids) {
      int slot = 0;
      for (const Expr* k : kids) {
        if (!k->is_value()) {
          descend = slot;
          child = k;
          return;
        }
        ++slot;
      }
    };
    bool done = std::visit(overloaded{
                               [&](const ValE&) { return true; },
                               [&](const VarE&) { return false; },
                               [&](const LamE&) { return false; },
                               [&](const AppE& n) { return first_nonvalue({&n.fn, &n.arg}), false; },
                               [&](const IfE& n) { return first_nonvalue({&n.cond}), false; },
                               [&](const PairE& n) { return first_nonvalue({&n.left, &n.right}), false; },
                               [&](const ProjE& n) { return first_nonvalue({&n.e}), false; },
                               [&](const RefE& n) { return first_nonvalue({&n.e}), false; },
                               [&](const DerefE& n) { return first_nonvalue({&n.e}), false; },
                               [&](const BinOpE& n) { return first_nonvalue({&n.lhs, &n.rhs}), false; },
                               [&](const EmitE& n) { return first_nonvalue({&n.e}), false; },
                           },
                           cur.node().v);
    if (done) return StepOutcome{StepOutcome::Kind::terminal, std::nullopt, {}};
    if (descend >= 0) {
      Expr next = *child;
      frames.push_back(Frame{std::move(cur), descend});
      cur = std::move(next);
      continue;
    }
    Contracted r = contract(cur, c);
    if (!r.result) return StepOutcome{StepOutcome::Kind::stuck, std::nullopt, std::move(r.reason)};
    Expr rebuilt = std::move(*r.result);
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) rebuilt = replace_child(it->parent, it->slot, std::move(rebuilt));
    c.expr = std::move(rebuilt);
    return StepOutcome{StepOutcome::Kind::stepped, std::move(r.label), {}};
  }
}

StepResult step(const Config& c) {
  if (c.expr.is_value()) return Terminal{c.expr.value()};
  Config next = c;
  StepOutcome o = step_in_place(next);
  switch (o.kind) {
    case StepOutcome::Kind::terminal: return Terminal{c.expr.value()};
    case StepOutcome::Kind::stuck: return Stuck{std::move(o.reason)};
    case StepOutcome::Kind::stepped: break;
  }
  return Next{std::move(o.label), std::move(next)};
}

RunResult run(Config c, std::uint64_t fuel, const EventObserver& observer) {
  RunResult r;
  r.final = std::move(c);
  while (true) {
    if (r.final.expr.is_value()) {
      r.status = RunStatus::value;
      return r;
    }
    if (r.steps == fuel) {
      // Out of fuel unless the next step would be stuck anyway.
      Config probe = r.final;
      StepOutcome o = step_in_place(probe);
      if (o.kind == StepOutcome::Kind::stuck) {
        r.status = RunStatus::stuck;
        r.stuck_reason = std::move(o.reason);
      } else {
        r.status = RunStatus::fuel_exhausted;
      }
      return r;
    }
    StepOutcome o = step_in_place(r.final);
    if (o.kind == StepOutcome::Kind::stuck) {
      r.status = RunStatus::stuck;
      r.stuck_reason = std::move(o.reason);
      return r;
    }
    ++r.steps;
    if (o.label) {
      r.trace.push_back(std::move(*o.label));
      if (observer && !observer(r.trace)) {
        r.status = RunStatus::halted;
        return r;
      }
    }
  }
}

Expr erase(const Expr& e) {
  auto er = [](const Expr& x) { return erase(x); };
  return std::visit(overloaded{
                        [&](const ValE&) { return e; },
                        [&](const VarE&) { return e; },
                        [&](const LamE& n) { return Expr::lam(n.param, er(n.body)); },
                        [&](const AppE& n) { return Expr::app(er(n.fn), er(n.arg)); },
                        [&](const IfE& n) { return Expr::if_(er(n.cond), er(n.then_branch), er(n.else_branch)); },
                        [&](const PairE& n) { return Expr::mk_pair(er(n.left), er(n.right)); },
                        [&](const ProjE& n) { return Expr::proj(n.index, er(n.e)); },
                        [&](const RefE& n) { return Expr::ref(er(n.e)); },
                        [&](const DerefE& n) { return Expr::deref(er(n.e)); },
                        [&](const BinOpE& n) { return Expr::binop(n.op, er(n.lhs), er(n.rhs)); },
                        [&](const EmitE&) { return Expr::val(Value::unit()); },
                    },
                    e.node().v);
}

FEnv erase_env(const FEnv& env) {
  FEnv out;
  for (const auto& [id, lam] : env) out.emplace(id, Lambda{lam.param, erase(lam.body)});
  return out;
}

}  // namespace sltrace
