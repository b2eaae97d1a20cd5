#include "sltrace/model.hpp"

#include <algorithm>
#include <map>

namespace sltrace {

bool is_prefix(const Trace& a, const Trace& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

std::optional<TraceRes> trace_mul(const TraceRes& a, const TraceRes& b) {
  if (a.flag == Flag::full && b.flag == Flag::full) return std::nullopt;
  if (a.flag == Flag::hist && b.flag == Flag::hist) {
    if (is_prefix(b.t, a.t)) return a;
    if (is_prefix(a.t, b.t)) return b;
    return std::nullopt;
  }
  const TraceRes& full = a.flag == Flag::full ? a : b;
  const TraceRes& hist = a.flag == Flag::full ? b : a;
  if (is_prefix(hist.t, full.t)) return full;
  return std::nullopt;
}

std::optional<Heap> heap_mul(const Heap& a, const Heap& b) {
  Heap out = a;
  for (const auto& [l, v] : b)
    if (!out.emplace(l, v).second) return std::nullopt;
  return out;
}

std::optional<Resource> res_mul(const Resource& a, const Resource& b) {
  auto tr = trace_mul(a.tr, b.tr);
  if (!tr) return std::nullopt;
  auto h = heap_mul(a.h, b.h);
  if (!h) return std::nullopt;
  return Resource{std::move(*h), std::move(*tr)};
}

std::string to_string(const TraceRes& r) {
  return std::string("(") + (r.flag == Flag::full ? "full" : "hist") + ", " + to_string(r.t) + ")";
}

std::string to_string(const Resource& r) {
  std::string s = "({";
  bool first = true;
  for (const auto& [l, v] : r.h) {
    if (!first) s += ", ";
    first = false;
    s += "l" + std::to_string(l) + " -> " + to_string(v);
  }
  return s + "}, " + to_string(r.tr) + ")";
}

bool inv_holds(const Invariant& inv, const Trace& t) {
  if (const auto* set = std::get_if<std::set<Trace>>(&inv)) return set->contains(t);
  return member(std::get<LangId>(inv), t);
}

bool world_leq(const World& a, const World& b) {
  if (a.inv != b.inv) return false;
  for (const auto& [f, lam] : a.gamma) {
    auto it = b.gamma.find(f);
    if (it == b.gamma.end() || !(it->second == lam)) return false;
  }
  return true;
}

// ---- universes ----

std::vector<Heap> Universe::heaps() const {
  std::vector<Heap> out = {Heap{}};
  for (std::uint64_t l : locs) {
    std::vector<Heap> next;
    for (const Heap& h : out) {
      next.push_back(h);
      for (const Value& v : values) {
        Heap g = h;
        g[l] = v;
        next.push_back(std::move(g));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<Trace> Universe::traces() const {
  std::vector<Trace> out = {Trace{}};
  std::size_t from = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t to = out.size();
    for (std::size_t i = from; i < to; ++i)
      for (const Value& a : alphabet) {
        Trace t = out[i];
        t.push_back(a);
        out.push_back(std::move(t));
      }
    from = to;
  }
  return out;
}

std::vector<TraceRes> Universe::trace_resources() const {
  std::vector<TraceRes> out;
  for (Flag f : {Flag::hist, Flag::full})
    for (const Trace& t : traces()) out.push_back({f, t});
  return out;
}

std::vector<Resource> Universe::resources() const {
  std::vector<Resource> out;
  const auto trs = trace_resources();
  for (const Heap& h : heaps())
    for (const TraceRes& tr : trs) out.push_back({h, tr});
  return out;
}

std::optional<Universe> universe_preset(std::string_view name) {
  if (name == "default")
    return Universe{{0, 1}, {Value(), Value::integer(0), Value::integer(1)}, {Value::sym("a"), Value::sym("b")}, 3};
  if (name == "tiny") return Universe{{0}, {Value(), Value::integer(0)}, {Value::sym("a")}, 2};
  return std::nullopt;
}

bool trace_leq(const TraceRes& a, const TraceRes& b, const Universe& u) {
  for (const TraceRes& c : u.trace_resources()) {
    auto p = trace_mul(a, c);
    if (p && *p == b) return true;
  }
  return false;
}

bool res_leq(const Resource& m1, const Resource& m2, const Universe& u) {
  for (const Resource& m : u.resources()) {
    auto p = res_mul(m1, m);
    if (p && *p == m2) return true;
  }
  return false;
}

bool erasure_sat(const Trace& t, const Heap& h, const FEnv& gamma, const World& w, const Resource& m) {
  if (h != m.h || gamma != w.gamma || !inv_holds(w.inv, t)) return false;
  return m.tr.flag == Flag::full ? t == m.tr.t : is_prefix(m.tr.t, t);
}

// ---- assertions ----

namespace {

AssertionPtr make(Assertion a) { return std::make_shared<const Assertion>(std::move(a)); }

std::string inv_string(const Invariant& inv) {
  if (const auto* l = std::get_if<LangId>(&inv)) return std::string(to_string(*l));
  const auto& set = std::get<std::set<Trace>>(inv);
  std::string s = "{";
  bool first = true;
  for (const Trace& t : set) {
    if (!first) s += ", ";
    first = false;
    s += to_string(t);
  }
  return s + "}";
}

}  // namespace

AssertionPtr Assertion::emp() { return make({}); }
AssertionPtr Assertion::trace(Trace t) {
  Assertion a;
  a.kind = Kind::trace;
  a.t = std::move(t);
  return make(std::move(a));
}
AssertionPtr Assertion::hist(Trace t) {
  Assertion a;
  a.kind = Kind::hist;
  a.t = std::move(t);
  return make(std::move(a));
}
AssertionPtr Assertion::inv_of(Invariant i) {
  Assertion a;
  a.kind = Kind::inv;
  a.inv = std::move(i);
  return make(std::move(a));
}
AssertionPtr Assertion::points_to(std::uint64_t l, Value v) {
  Assertion a;
  a.kind = Kind::points_to;
  a.loc = l;
  a.value = std::move(v);
  return make(std::move(a));
}
AssertionPtr Assertion::star(AssertionPtr x, AssertionPtr y) {
  Assertion a;
  a.kind = Kind::star;
  a.left = std::move(x);
  a.right = std::move(y);
  return make(std::move(a));
}

std::string to_string(const Assertion& a) {
  switch (a.kind) {
    case Assertion::Kind::emp: return "emp";
    case Assertion::Kind::trace: return "trace(" + to_string(a.t) + ")";
    case Assertion::Kind::hist: return "hist(" + to_string(a.t) + ")";
    case Assertion::Kind::inv: return "inv(" + inv_string(a.inv) + ")";
    case Assertion::Kind::points_to: return "l" + std::to_string(a.loc) + " |-> " + to_string(a.value);
    case Assertion::Kind::star: return to_string(*a.left) + " * " + to_string(*a.right);
  }
  return "?";
}

namespace {

// The universe's resources by index, with the multiplication table
// precomputed from res_mul so the exhaustive checks are table lookups.
struct Indexed {
  const Universe& u;
  std::vector<Resource> res;
  std::vector<TraceRes> trs;
  std::map<Resource, int> index;
  std::vector<int> mul;  // n*n, -1 undefined
  std::optional<std::string> escape;  // a defined product outside U, if any

  explicit Indexed(const Universe& uu) : u(uu), res(uu.resources()), trs(uu.trace_resources()) {
    for (std::size_t i = 0; i < res.size(); ++i) index.emplace(res[i], static_cast<int>(i));
    const std::size_t n = res.size();
    mul.assign(n * n, -1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (auto p = res_mul(res[i], res[j])) {
          auto it = index.find(*p);
          if (it != index.end())
            mul[i * n + j] = it->second;
          else if (!escape)
            escape = to_string(res[i]) + " * " + to_string(res[j]) + " = " + to_string(*p);
        }
  }

  std::size_t size() const { return res.size(); }
  int times(int i, int j) const { return mul[static_cast<std::size_t>(i) * res.size() + static_cast<std::size_t>(j)]; }

  using Mask = std::vector<char>;

  Mask trace_above(const TraceRes& low) const {
    std::set<TraceRes> above;
    for (const TraceRes& c : trs)
      for (const TraceRes& d : trs) {
        auto p = trace_mul(low, d);
        if (p && *p == c) above.insert(c);
      }
    Mask m(size(), 0);
    for (std::size_t i = 0; i < size(); ++i) m[i] = above.contains(res[i].tr);
    return m;
  }

  Mask denote(const Assertion& a, const World& w) const {
    using K = Assertion::Kind;
    switch (a.kind) {
      case K::emp: return Mask(size(), 1);
      case K::trace: return trace_above({Flag::full, a.t});
      case K::hist: return trace_above({Flag::hist, a.t});
      case K::inv: return Mask(size(), w.inv == a.inv ? 1 : 0);
      case K::points_to: {
        Mask m(size(), 0);
        for (std::size_t i = 0; i < size(); ++i) {
          auto it = res[i].h.find(a.loc);
          m[i] = it != res[i].h.end() && it->second == a.value;
        }
        return m;
      }
      case K::star: {
        const Mask p = denote(*a.left, w), q = denote(*a.right, w);
        std::vector<int> ps, qs;
        for (std::size_t i = 0; i < size(); ++i) {
          if (p[i]) ps.push_back(static_cast<int>(i));
          if (q[i]) qs.push_back(static_cast<int>(i));
        }
        Mask m(size(), 0);
        for (int i : ps)
          for (int j : qs)
            if (int k = times(i, j); k >= 0) m[static_cast<std::size_t>(k)] = 1;
        return m;
      }
    }
    return Mask(size(), 0);
  }

  // First resource in `sub` missing from `super`, if any.
  std::optional<int> not_included(const Mask& sub, const Mask& super) const {
    for (std::size_t i = 0; i < size(); ++i)
      if (sub[i] && !super[i]) return static_cast<int>(i);
    return std::nullopt;
  }
};

std::vector<FEnv> sample_gammas() {
  return {FEnv{}, FEnv{{0, Lambda{"x", Expr::var("x")}}}};
}

std::vector<Invariant> sample_invariants(const Universe& u) {
  std::set<Trace> all, only_first;
  for (const Trace& t : u.traces()) {
    all.insert(t);
    if (!u.alphabet.empty() && std::all_of(t.begin(), t.end(), [&](const Value& v) { return v == u.alphabet.front(); }))
      only_first.insert(t);
  }
  std::vector<Invariant> out = {std::set<Trace>{}, std::set<Trace>{Trace{}}, all, only_first};
  if (!u.alphabet.empty()) out.push_back(std::set<Trace>{Trace{}, Trace{u.alphabet.front()}});
  out.push_back(LangId::file);
  return out;
}

std::vector<World> sample_worlds(const Universe& u) {
  std::vector<World> out;
  for (const FEnv& g : sample_gammas())
    for (const Invariant& i : sample_invariants(u)) out.push_back({g, i});
  return out;
}

std::string show(const Indexed& ix, int i) { return to_string(ix.res[static_cast<std::size_t>(i)]); }

std::string kleene(const Indexed& ix, int k) { return k < 0 ? "undefined" : show(ix, k); }

CheckResult law(const Indexed& ix, std::string_view name) {
  CheckResult r{std::string(name), true, 0, {}};
  const int n = static_cast<int>(ix.size());
  if (name == "unit") {
    auto it = ix.index.find(res_unit());
    if (it == ix.index.end()) return {r.name, false, 0, "unit resource outside the universe"};
    for (int a = 0; a < n && r.ok; ++a) {
      ++r.instances;
      if (ix.times(a, it->second) != a || ix.times(it->second, a) != a) {
        r.ok = false;
        r.counterexample = "m = " + show(ix, a) + ": m * 1 = " + kleene(ix, ix.times(a, it->second));
      }
    }
  } else if (name == "comm") {
    for (int a = 0; a < n && r.ok; ++a)
      for (int b = 0; b < n && r.ok; ++b) {
        ++r.instances;
        if (ix.times(a, b) != ix.times(b, a)) {
          r.ok = false;
          r.counterexample = "a = " + show(ix, a) + ", b = " + show(ix, b) + ": a*b = " + kleene(ix, ix.times(a, b)) +
                             ", b*a = " + kleene(ix, ix.times(b, a));
        }
      }
  } else {
    for (int a = 0; a < n && r.ok; ++a)
      for (int b = 0; b < n && r.ok; ++b) {
        const int ab = ix.times(a, b);
        for (int c = 0; c < n && r.ok; ++c) {
          ++r.instances;
          const int bc = ix.times(b, c);
          const int left = ab < 0 ? -1 : ix.times(ab, c);
          const int right = bc < 0 ? -1 : ix.times(a, bc);
          if (left != right) {
            r.ok = false;
            r.counterexample = "a = " + show(ix, a) + ", b = " + show(ix, b) + ", c = " + show(ix, c) +
                               ": (a*b)*c = " + kleene(ix, left) + ", a*(b*c) = " + kleene(ix, right);
          }
        }
      }
  }
  return r;
}

// P ⊢ Q as inclusion of denotations, for each instance.
void entails(const Indexed& ix, CheckResult& r, const Assertion& p, const Assertion& q, const World& w) {
  if (!r.ok) return;
  ++r.instances;
  auto miss = ix.not_included(ix.denote(p, w), ix.denote(q, w));
  if (miss) {
    r.ok = false;
    r.counterexample = to_string(p) + " does not entail " + to_string(q) + " at " + show(ix, *miss);
  }
}

CheckResult axiom(const Indexed& ix, std::string_view name) {
  using A = Assertion;
  CheckResult r{std::string(name), true, 0, {}};
  const auto worlds = sample_worlds(ix.u);
  const auto traces = ix.u.traces();
  if (name == "PInvDupl") {
    for (const World& w : worlds)
      for (const Invariant& i : sample_invariants(ix.u)) {
        auto a = A::inv_of(i);
        entails(ix, r, *a, *A::star(a, a), w);
      }
  } else if (name == "PHistDupl") {
    for (const World& w : worlds)
      for (const Trace& t : traces) {
        auto h = A::hist(t);
        entails(ix, r, *h, *A::star(h, h), w);
      }
  } else if (name == "PAllocHist") {
    for (const World& w : worlds)
      for (const Trace& t : traces) entails(ix, r, *A::trace(t), *A::star(A::trace(t), A::hist(t)), w);
  } else if (name == "PUseHist") {
    // trace(t1) * hist(t2) ⊢ trace(t1) * (t2 ≤pref t1): the right side is
    // trace(t1) when the pure fact holds and empty otherwise.
    for (const World& w : worlds)
      for (const Trace& t1 : traces)
        for (const Trace& t2 : traces) {
          if (!r.ok) break;
          ++r.instances;
          const auto lhs = ix.denote(*A::star(A::trace(t1), A::hist(t2)), w);
          const auto rhs = is_prefix(t2, t1) ? ix.denote(*A::trace(t1), w) : Indexed::Mask(ix.size(), 0);
          if (auto miss = ix.not_included(lhs, rhs)) {
            r.ok = false;
            r.counterexample = "trace(" + to_string(t1) + ") * hist(" + to_string(t2) + ") holds at " + show(ix, *miss) +
                               (is_prefix(t2, t1) ? "" : " although the history is not a prefix");
          }
        }
  } else {
    return {r.name, false, 0, "unknown axiom"};
  }
  return r;
}

std::vector<AssertionPtr> catalogue(const Universe& u) {
  using A = Assertion;
  std::vector<AssertionPtr> out = {A::emp()};
  const auto traces = u.traces();
  for (const Trace& t : traces) {
    out.push_back(A::trace(t));
    out.push_back(A::hist(t));
  }
  for (const Invariant& i : sample_invariants(u)) out.push_back(A::inv_of(i));
  for (std::uint64_t l : u.locs)
    for (const Value& v : u.values) {
      out.push_back(A::points_to(l, v));
      if (!traces.empty()) out.push_back(A::star(A::points_to(l, v), A::trace(traces.back())));
    }
  for (const Trace& t1 : traces)
    for (const Trace& t2 : traces) {
      out.push_back(A::star(A::trace(t1), A::hist(t2)));
      out.push_back(A::star(A::hist(t1), A::hist(t2)));
    }
  if (u.locs.size() >= 2 && !u.values.empty())
    out.push_back(A::star(A::points_to(u.locs[0], u.values[0]), A::points_to(u.locs[1], u.values.back())));
  if (!u.locs.empty() && !u.values.empty())
    out.push_back(A::star(A::points_to(u.locs[0], u.values[0]), A::points_to(u.locs[0], u.values[0])));
  return out;
}

}  // namespace

std::set<Resource> denote(const Assertion& a, const World& w, const Universe& u) {
  Indexed ix(u);
  const auto m = ix.denote(a, w);
  std::set<Resource> out;
  for (std::size_t i = 0; i < ix.size(); ++i)
    if (m[i]) out.insert(ix.res[i]);
  return out;
}

const std::vector<std::string>& axiom_names() {
  static const std::vector<std::string> names = {"assoc",     "comm",       "unit",    "PInvDupl",
                                                 "PHistDupl", "PAllocHist", "PUseHist"};
  return names;
}

namespace {

CheckResult check_axiom_ix(const Indexed& ix, std::string_view name) {
  if (ix.escape) return {std::string(name), false, 0, "universe not closed under *: " + *ix.escape};
  if (name == "assoc" || name == "comm" || name == "unit") return law(ix, name);
  return axiom(ix, name);
}

CheckResult upward_closure_ix(const Indexed& ix) {
  CheckResult r{"upward-closure", true, 0, {}};
  const int n = static_cast<int>(ix.size());
  for (const World& w : sample_worlds(ix.u)) {
    for (const auto& a : catalogue(ix.u)) {
      ++r.instances;
      const auto d = ix.denote(*a, w);
      for (int i = 0; i < n && r.ok; ++i) {
        if (!d[static_cast<std::size_t>(i)]) continue;
        for (int j = 0; j < n && r.ok; ++j) {
          const int k = ix.times(i, j);
          if (k >= 0 && !d[static_cast<std::size_t>(k)]) {
            r.ok = false;
            r.counterexample = to_string(*a) + " holds at " + show(ix, i) + " but not at the larger " + show(ix, k);
          }
        }
      }
      if (!r.ok) return r;
    }
  }
  return r;
}

CheckResult world_monotone_ix(const Indexed& ix) {
  CheckResult r{"world-monotone", true, 0, {}};
  const auto gammas = sample_gammas();
  for (const Invariant& i : sample_invariants(ix.u)) {
    const World small{gammas.front(), i}, big{gammas.back(), i};
    for (const auto& a : catalogue(ix.u)) {
      ++r.instances;
      if (ix.denote(*a, small) != ix.denote(*a, big)) {
        r.ok = false;
        r.counterexample = to_string(*a) + " changes when the function environment grows";
        return r;
      }
    }
  }
  return r;
}

CheckResult emit_frame_ix(const Indexed& ix) {
  CheckResult r{"emit-frame", true, 0, {}};
  const auto heaps = ix.u.heaps();
  for (const Trace& t : ix.u.traces()) {
    if (t.size() >= ix.u.max_len) continue;
    for (const Value& v : ix.u.alphabet) {
      Trace tv = t;
      tv.push_back(v);
      for (const World& w : sample_worlds(ix.u)) {
        if (!inv_holds(w.inv, tv)) continue;  // the Emit premise
        for (const Heap& hm : heaps) {
          const Resource m{hm, {Flag::full, t}};
          const Resource m2{hm, {Flag::full, tv}};
          for (const Resource& frame : ix.res) {
            auto before = res_mul(m, frame);
            if (!before || !erasure_sat(t, before->h, w.gamma, w, *before)) continue;
            ++r.instances;
            auto after = res_mul(m2, frame);
            if (!after || !erasure_sat(tv, after->h, w.gamma, w, *after)) {
              r.ok = false;
              r.counterexample = "emitting " + to_string(v) + " after " + to_string(t) + " breaks frame " + to_string(frame);
              return r;
            }
          }
        }
      }
    }
  }
  return r;
}

}  // namespace

CheckResult check_axiom(std::string_view name, const Universe& u) { return check_axiom_ix(Indexed(u), name); }

CheckResult check_upward_closure(const Universe& u) { return upward_closure_ix(Indexed(u)); }

CheckResult check_world_monotone(const Universe& u) { return world_monotone_ix(Indexed(u)); }

CheckResult check_emit_frame(const Universe& u) { return emit_frame_ix(Indexed(u)); }

std::vector<CheckResult> check_all(const Universe& u) {
  const Indexed ix(u);
  std::vector<CheckResult> out;
  for (const std::string& name : axiom_names()) out.push_back(check_axiom_ix(ix, name));
  out.push_back(upward_closure_ix(ix));
  out.push_back(world_monotone_ix(ix));
  out.push_back(emit_frame_ix(ix));
  return out;
}

}  // namespace sltrace
