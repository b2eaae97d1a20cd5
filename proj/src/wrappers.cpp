#include "sltrace/wrappers.hpp"

#include <stdexcept>

#include "sltrace/syntax.hpp"

namespace sltrace {

namespace {

struct OpText {
  const char* name;
  const char* body;
};

struct LibText {
  LibName name;
  const char* label;
  // Wraps the op tuple; `%` marks where the tuple goes.
  const char* state;
  std::vector<OpText> ops;
  std::vector<OpText> wrapped;
};

// Lists in library state are () or (pair head tail).
const LibText& lib_text(LibName n) {
  static const std::vector<LibText> libs = {
      {LibName::file,
       "file",
       "(let st (ref 0) %)",
       {
           {"open", "(lam _ (op := st 1))"},
           {"close", "(lam _ (op := st 0))"},
           {"read", "(lam _ (seq (get st) ()))"},
       },
       {
           {"open", "(lam _ (seq (app open ()) (emit 'open)))"},
           {"close", "(lam _ (seq (app close ()) (emit 'close)))"},
           {"read", "(lam _ (seq (app read ()) (emit 'read)))"},
       }},
      {LibName::coll,
       "coll",
       "(let st (ref ())"
       " (let count (ref ())"
       " (let drop (ref ())"
       " (seq (op := count (lam l (if (op = l ()) 0 (op + 1 (app (get count) (snd l))))))"
       "      (op := drop (lam p (let y (fst p) (let l (snd p)"
       "        (if (op = l ()) ()"
       "          (if (op = (fst l) y) (snd l)"
       "            (pair (fst l) (app (get drop) (pair y (snd l))))))))))"
       "      %))))",
       {
           {"size", "(lam _ (app (get count) (get st)))"},
           {"add", "(lam y (op := st (pair y (get st))))"},
           {"remove", "(lam y (op := st (app (get drop) (pair y (get st)))))"},
           {"iterator", "(lam _ (ref (get st)))"},
           {"next", "(lam it (let l (get it) (if (op = l ()) () (seq (op := it (snd l)) (fst l)))))"},
       },
       {
           {"size", "(lam y (let r (app size y) (seq (emit 'size) r)))"},
           {"add", "(lam y (seq (app add y) (emit 'add)))"},
           {"remove", "(lam y (seq (app remove y) (emit 'remove)))"},
           {"iterator", "(lam _ (let r (app iterator ()) (seq (emit (pair 'iterator r)) r)))"},
           {"next", "(lam y (let r (app next y) (seq (emit (pair 'next y)) r)))"},
       }},
      {LibName::brac,
       "brac",
       "%",
       {
           {"withRes", "(lam f (app f ()))"},
           {"op", "(lam x ())"},
       },
       {
           {"withRes",
            "(lam f (seq (emit (pair 'call (pair 'withRes f)))"
            "            (app withRes (lam x (seq (emit (pair 'call f)) (app f x) (emit (pair 'ret f)))))"
            "            (emit (pair 'ret (pair 'withRes f)))))"},
           {"op", "(lam x (seq (emit (pair 'call 'op)) (app op x) (emit (pair 'ret 'op))))"},
       }},
      {LibName::stack,
       "stack",
       "(let st (ref ())"
       " (let loop (ref ())"
       " (seq (op := loop (lam p (let g (fst p) (let l (snd p)"
       "        (if (op = l ()) ()"
       "          (seq (app g (fst l)) (app (get loop) (pair g (snd l)))))))))"
       "      %)))",
       {
           {"push", "(lam a (op := st (pair a (get st))))"},
           {"pop", "(lam _ (let l (get st) (if (op = l ()) () (seq (op := st (snd l)) (fst l)))))"},
           {"foreach", "(lam f (app (get loop) (pair f (get st))))"},
       },
       {
           {"push", "(lam a (seq (emit (pair 'call (pair 'push a))) (app push a) (emit (pair 'ret 'push))))"},
           {"pop",
            "(lam _ (seq (emit (pair 'call 'pop))"
            "            (let x (app pop ()) (seq (emit (pair 'ret (pair 'pop x))) x))))"},
           {"foreach",
            "(lam f (seq (emit (pair 'call (pair 'foreach f)))"
            "            (app foreach (lam a (seq (emit (pair 'call (pair f a))) (app f a) (emit (pair 'ret f)))))"
            "            (emit (pair 'ret 'foreach))))"},
       }},
      {LibName::stack_simple,
       "stack-simple",
       "(let st (ref ()) %)",
       {
           {"push", "(lam a (op := st (pair a (get st))))"},
           {"pop", "(lam _ (let l (get st) (if (op = l ()) () (seq (op := st (snd l)) (fst l)))))"},
       },
       {
           {"push", "(lam v (seq (app push v) (emit (pair 'push v))))"},
           {"pop", "(lam _ (let r (app pop ()) (seq (emit (pair 'pop r)) r)))"},
       }},
      {LibName::str,
       "str",
       "%",
       {
           {"input", "(lam _ (ref 0))"},
           {"constant", "(lam y (ref 0))"},
           {"sanitize", "(lam y ())"},
           {"concat", "(lam p (ref 0))"},
           {"sink", "(lam y ())"},
       },
       {
           {"input", "(lam _ (let r (app input ()) (seq (emit (pair 'input r)) r)))"},
           {"constant", "(lam y (let r (app constant y) (seq (emit (pair 'constant r)) r)))"},
           {"sanitize", "(lam y (seq (app sanitize y) (emit (pair 'sanitize y))))"},
           {"concat",
            "(lam p (let y1 (fst p) (let y2 (snd p)"
            "  (let r (app concat (pair y1 y2)) (seq (emit (pair 'concat (pair r (pair y1 y2)))) r)))))"},
           {"sink", "(lam y (seq (app sink y) (emit (pair 'sink y))))"},
       }},
  };
  for (const auto& l : libs)
    if (l.name == n) return l;
  throw std::invalid_argument("unknown library");
}

constexpr std::string_view kLibVar = "__lib";

}  // namespace

std::string_view to_string(LibName n) { return lib_text(n).label; }

std::optional<LibName> lib_from_string(std::string_view s) {
  for (LibName n : all_libs())
    if (to_string(n) == s) return n;
  return std::nullopt;
}

const std::vector<LibName>& all_libs() {
  static const std::vector<LibName> all = {LibName::file,  LibName::coll,         LibName::brac,
                                           LibName::stack, LibName::stack_simple, LibName::str};
  return all;
}

const std::vector<std::string>& lib_op_names(LibName n) {
  static const auto table = [] {
    std::vector<std::pair<LibName, std::vector<std::string>>> t;
    for (LibName l : all_libs()) {
      std::vector<std::string> names;
      for (const auto& op : lib_text(l).ops) names.emplace_back(op.name);
      t.emplace_back(l, std::move(names));
    }
    return t;
  }();
  for (const auto& [l, names] : table)
    if (l == n) return names;
  throw std::invalid_argument("unknown library");
}

Expr tuple_expr(const std::vector<Expr>& items) {
  if (items.empty()) return Expr::val(Value::unit());
  Expr out = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) out = Expr::mk_pair(items[i], out);
  return out;
}

Expr tuple_proj(const Expr& e, std::size_t index, std::size_t arity) {
  if (index >= arity) throw std::out_of_range("tuple projection");
  if (arity == 1) return e;
  Expr cur = e;
  for (std::size_t i = 0; i < index; ++i) cur = Expr::proj(2, cur);
  return index + 1 == arity ? cur : Expr::proj(1, cur);
}

LibraryBundle make_lib(LibName n) {
  const LibText& text = lib_text(n);
  LibraryBundle b{n, {}, Expr(), false};
  std::vector<Expr> bodies;
  for (const auto& op : text.ops) {
    Expr body = parse(op.body);
    b.ops.emplace_back(op.name, body);
    bodies.push_back(body);
  }
  // Splice the tuple into the state skeleton at the `%` marker.
  std::string state = text.state;
  std::size_t hole = state.find('%');
  state.replace(hole, 1, print(tuple_expr(bodies)));
  b.init = parse(state);
  return b;
}

LibraryBundle wrap(LibName n, const LibraryBundle& lib) {
  const LibText& text = lib_text(n);
  if (lib.ops.size() != text.wrapped.size())
    throw std::invalid_argument("library arity " + std::to_string(lib.ops.size()) + " does not match " +
                                std::string(text.label) + " (" + std::to_string(text.wrapped.size()) + ")");
  LibraryBundle out{n, {}, Expr(), true};
  std::vector<Expr> bodies;
  for (const auto& op : text.wrapped) {
    Expr body = parse(op.body);
    out.ops.emplace_back(op.name, body);
    bodies.push_back(body);
  }
  // λ__lib. let open = π1 __lib in ... (open', close', read')
  const std::size_t k = text.wrapped.size();
  Expr inner = tuple_expr(bodies);
  for (std::size_t i = k; i-- > 0;)
    inner = Expr::let(text.wrapped[i].name, tuple_proj(Expr::var(std::string(kLibVar)), i, k), inner);
  Expr wrapper = Expr::lam(std::string(kLibVar), inner);
  out.init = Expr::app(wrapper, lib.init);
  return out;
}

Expr link(const LibraryBundle& lib, const std::vector<std::string>& names, const Expr& body) {
  const std::size_t k = lib.ops.size();
  std::vector<std::string> bound = names;
  if (bound.empty())
    for (const auto& op : lib.ops) bound.push_back(op.first);
  if (bound.size() != k)
    throw std::invalid_argument("with-lib lists " + std::to_string(bound.size()) + " names but " +
                                std::string(to_string(lib.name)) + " has " + std::to_string(k) + " operations");
  Expr inner = body;
  for (std::size_t i = k; i-- > 0;)
    inner = Expr::let(bound[i], tuple_proj(Expr::var(std::string(kLibVar)), i, k), inner);
  return Expr::let(std::string(kLibVar), lib.init, inner);
}

}  // namespace sltrace
