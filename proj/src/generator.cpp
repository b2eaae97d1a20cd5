#include <random>

#include "sltrace/harness.hpp"
#include "sltrace/syntax.hpp"

namespace sltrace {

namespace {

class Gen {
 public:
  explicit Gen(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  Expr expr(int depth) {
    if (depth <= 0) return leaf();
    if (chance(cfg_.emit_prob)) return Expr::seq(Expr::emit(emit_arg()), expr(depth - 1));
    switch (pick(12)) {
      case 0: return leaf();
      case 1: {
        std::string x = fresh();
        Expr bound = expr(depth - 1);
        return Expr::let(x, bound, scoped(x, depth - 1));
      }
      case 2: {
        std::string x = fresh();
        Expr arg = expr(depth - 1);
        return Expr::app(Expr::lam(x, scoped(x, depth - 1)), arg);
      }
      case 3: {
        // a named function applied later, so the environment is exercised
        std::string f = fresh(), x = fresh();
        Expr fn = Expr::lam(x, scoped(x, depth - 2));
        Expr arg = expr(depth - 2);
        scope_.push_back(f);
        Expr call = Expr::app(Expr::var(f), arg);
        scope_.pop_back();
        return Expr::let(f, fn, call);
      }
      case 4: return Expr::if_(condition(depth - 1), expr(depth - 1), expr(depth - 1));
      case 5: return Expr::mk_pair(expr(depth - 1), expr(depth - 1));
      case 6: return Expr::proj(1 + pick(2), expr(depth - 1));
      case 7: return Expr::ref(expr(depth - 1));
      case 8: {
        // allocate, update, read back
        std::string r = fresh();
        Expr init = expr(depth - 1);
        scope_.push_back(r);
        Expr body = Expr::seq(Expr::binop(BinOp::assign, Expr::var(r), expr(depth - 2)),
                              Expr::deref(Expr::var(r)));
        scope_.pop_back();
        return Expr::let(r, Expr::ref(init), body);
      }
      case 9: return Expr::deref(expr(depth - 1));
      case 10: return Expr::seq(expr(depth - 1), expr(depth - 1));
      default: {
        static constexpr BinOp ops[] = {BinOp::eq, BinOp::add, BinOp::sub, BinOp::mul, BinOp::lt, BinOp::assign};
        const BinOp op = ops[pick(6)];
        if (op == BinOp::assign) return Expr::binop(op, expr(depth - 1), expr(depth - 1));
        return Expr::binop(op, number(depth - 1), number(depth - 1));
      }
    }
  }

 private:
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::string fresh() { return "x" + std::to_string(next_var_++); }

  Expr scoped(const std::string& x, int depth) {
    scope_.push_back(x);
    Expr e = expr(depth);
    scope_.pop_back();
    return e;
  }

  Expr leaf() {
    if (!scope_.empty() && chance(0.4)) return Expr::var(scope_[static_cast<std::size_t>(pick(static_cast<int>(scope_.size())))]);
    return Expr::val(cfg_.pool[static_cast<std::size_t>(pick(static_cast<int>(cfg_.pool.size())))]);
  }

  // Arithmetic is stuck on non-integers, so lean towards integer operands.
  Expr number(int depth) {
    if (chance(0.5)) return Expr::val(Value::integer(pick(3)));
    return expr(depth);
  }

  Expr condition(int depth) {
    if (chance(0.6)) return Expr::binop(chance(0.5) ? BinOp::lt : BinOp::eq, number(depth - 1), number(depth - 1));
    return expr(depth);
  }

  // Erasure drops the argument unevaluated, so it must not allocate, name
  // a function, or get stuck: values, variables, and pairs of those.
  Expr emit_arg() {
    if (chance(0.3)) return Expr::mk_pair(leaf(), leaf());
    return leaf();
  }

  const GenConfig& cfg_;
  std::mt19937_64 rng_;
  std::vector<std::string> scope_;
  int next_var_ = 0;
};

}  // namespace

Expr gen_program(const GenConfig& cfg) { return Gen(cfg).expr(cfg.max_depth); }

std::optional<std::vector<std::string>> erasure_compare(const Expr& e, std::uint64_t fuel) {
  RunResult full = run(Config::initial(e), fuel);
  if (full.status == RunStatus::fuel_exhausted) return std::nullopt;
  RunResult erased = run(Config::initial(erase(e)), fuel);
  std::vector<std::string> bad;
  if (!erased.trace.empty()) bad.push_back("erased run emitted " + to_string(erased.trace));
  if (erased.status != full.status)
    bad.push_back(std::string("status ") + std::string(to_string(erased.status)) + " vs " +
                  std::string(to_string(full.status)));
  if (!(erased.final.expr == erase(full.final.expr)))
    bad.push_back("final expression " + print(erased.final.expr) + " vs erased " + print(erase(full.final.expr)));
  if (erased.final.heap != full.final.heap) bad.push_back("heaps differ");
  if (!(erased.final.fenv == erase_env(full.final.fenv))) bad.push_back("function environments differ");
  return bad;
}

FuzzReport erasure_fuzz(std::uint64_t seed, std::uint64_t count, std::uint64_t fuel) {
  FuzzReport rep;
  std::mt19937_64 seeds(seed);
  for (std::uint64_t i = 0; i < count; ++i) {
    GenConfig cfg;
    cfg.seed = seeds();
    const Expr e = gen_program(cfg);
    auto result = erasure_compare(e, fuel);
    if (!result) {
      ++rep.skipped_fuel;
      continue;
    }
    ++rep.checked;
    if (contains_emit(e)) ++rep.with_emit;
    if (!result->empty()) {
      ++rep.failures;
      std::string msg = print(e) + "\n";
      for (const std::string& m : *result) msg += "    " + m + "\n";
      rep.failed_programs.push_back(std::move(msg));
    }
  }
  return rep;
}

}  // namespace sltrace
