#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lcc/admissibility.hpp"
#include "lcc/config.hpp"
#include "lcc/enumerate.hpp"
#include "lcc/selector.hpp"
#include "lcc/trace.hpp"

namespace lcc {

enum class VisAtom { None, Object, Session, Causal };
enum class ArAtom { None, Object, All };
enum class RvalAtom { Latest, AnyConcurrent, Computed, Multi, Any };

// A conjunction of standard axiom atoms over abstract executions.
struct StandardPredicate {
  std::optional<VisAtom> vis;
  std::optional<ArAtom> ar;
  std::optional<RvalAtom> rval;
  bool single = false;
  bool realTime = false;
  std::string computedFn = "max";
};

inline StandardPredicate parse_predicate(std::string_view text) {
  StandardPredicate p;
  bool seenVis = false, seenAr = false, seenRval = false;
  for (const auto& raw : detail::split(text, ',')) {
    std::string tok = detail::lower(detail::trim(raw));
    if (tok.empty()) throw ParseError("empty atom in '" + std::string(text) + "'");
    auto eq = tok.find('=');
    std::string key = eq == std::string::npos ? tok : tok.substr(0, eq);
    std::string val = eq == std::string::npos ? "" : tok.substr(eq + 1);
    auto once = [&](bool& flag) {
      if (flag) throw ParseError("duplicate atom '" + key + "'");
      flag = true;
    };
    if (key == "single" && val.empty()) {
      p.single = true;
    } else if (key == "rt" && val.empty()) {
      p.realTime = true;
    } else if (key == "vis") {
      once(seenVis);
      if (val == "none") p.vis = VisAtom::None;
      else if (val == "object") p.vis = VisAtom::Object;
      else if (val == "session") p.vis = VisAtom::Session;
      else if (val == "causal") p.vis = VisAtom::Causal;
      else throw ParseError("unknown vis atom '" + val + "'");
    } else if (key == "ar") {
      once(seenAr);
      if (val == "none") p.ar = ArAtom::None;
      else if (val == "object") p.ar = ArAtom::Object;
      else if (val == "all") p.ar = ArAtom::All;
      else throw ParseError("unknown ar atom '" + val + "'");
    } else if (key == "rval") {
      once(seenRval);
      if (val == "latest") p.rval = RvalAtom::Latest;
      else if (val == "anyconc" || val == "any-concurrent") p.rval = RvalAtom::AnyConcurrent;
      else if (val == "multi") p.rval = RvalAtom::Multi;
      else if (val == "any") p.rval = RvalAtom::Any;
      else if (val.rfind("computed", 0) == 0) {
        p.rval = RvalAtom::Computed;
        if (val.size() > 8) {
          if (val[8] != ':' || val.size() == 9) throw ParseError("bad computed atom '" + val + "'");
          p.computedFn = val.substr(9);
        }
        if (!find_merge_function(p.computedFn))
          throw ParseError("unknown merge function '" + p.computedFn + "'");
      } else {
        throw ParseError("unknown rval atom '" + val + "'");
      }
    } else {
      throw ParseError("unknown atom '" + tok + "'");
    }
  }
  return p;
}

struct PartialConfig {
  std::optional<ClosureScope> c;
  std::optional<OrderScope> o;
  std::optional<Selector> f;

  friend bool operator==(const PartialConfig&, const PartialConfig&) = default;
};

inline PartialConfig phi_atom(VisAtom a) {
  switch (a) {
    case VisAtom::None: return {ClosureScope::None, {}, {}};
    case VisAtom::Object: return {ClosureScope::Object, {}, {}};
    case VisAtom::Session: return {ClosureScope::Session, {}, {}};
    case VisAtom::Causal: return {ClosureScope::Explicit, {}, {}};
  }
  return {};
}

inline PartialConfig phi_atom(ArAtom a) {
  switch (a) {
    case ArAtom::None: return {{}, OrderScope::Trivial, {}};
    case ArAtom::Object: return {{}, OrderScope::PerObject, {}};
    case ArAtom::All: return {{}, OrderScope::All, {}};
  }
  return {};
}

inline PartialConfig phi_atom(RvalAtom a, const std::string& fn = "max") {
  switch (a) {
    case RvalAtom::Latest: return {{}, {}, Selector::latest()};
    case RvalAtom::AnyConcurrent: return {{}, {}, Selector::any_concurrent()};
    case RvalAtom::Computed: return {{}, {}, Selector::computed(fn)};
    case RvalAtom::Multi: return {{}, {}, Selector::multi()};
    case RvalAtom::Any: return {{}, {}, Selector::anything()};
  }
  return {};
}

// Single visibility of whole operations: every observed prefix is a prefix
// of the global order.
inline PartialConfig phi_single() { return {{}, OrderScope::All, {}}; }

// Coordinatewise: closures join, orders take the stronger scope.
inline PartialConfig combine(const PartialConfig& a, const PartialConfig& b) {
  PartialConfig r = a;
  if (b.c) r.c = r.c ? closure_join(*r.c, *b.c) : *b.c;
  if (b.o) r.o = r.o ? (order_leq(*r.o, *b.o) ? *b.o : *r.o) : *b.o;
  if (b.f) {
    if (r.f && !(*r.f == *b.f)) throw Error("one return-value atom", "conflicting return-value atoms");
    r.f = b.f;
  }
  return r;
}

struct Translation {
  std::optional<Configuration> config;
  std::string verdict;

  bool rejected() const { return !config.has_value(); }
};

inline const char* kRealTimeVerdict = "composite of two message-passing systems";

// Unset coordinates default to C(none), O(trivial), F latest; R is always
// unbounded waiting.
inline Translation phi(const StandardPredicate& p) {
  if (p.realTime) return {std::nullopt, kRealTimeVerdict};
  PartialConfig acc;
  if (p.vis) acc = combine(acc, phi_atom(*p.vis));
  if (p.ar) acc = combine(acc, phi_atom(*p.ar));
  if (p.single) acc = combine(acc, phi_single());
  if (p.rval) acc = combine(acc, phi_atom(*p.rval, p.computedFn));
  Configuration cfg;
  cfg.c = acc.c.value_or(ClosureScope::None);
  cfg.o = acc.o.value_or(OrderScope::Trivial);
  cfg.f = acc.f.value_or(Selector::latest());
  cfg.r = WaitingBound::infinite();
  return {cfg, "translated"};
}

// Square boolean relation over event indices.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : n_(n), bits_(n * n, false) {}
  std::size_t size() const { return n_; }
  bool operator()(std::size_t a, std::size_t b) const { return bits_[a * n_ + b]; }
  void set(std::size_t a, std::size_t b, bool v = true) { bits_[a * n_ + b] = v; }
  bool subset_of(const Relation& o) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !o.bits_[i]) return false;
    return true;
  }
  Relation unite(const Relation& o) const {
    Relation r(n_);
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] || o.bits_[i];
    return r;
  }
  Relation intersect(const Relation& o) const {
    Relation r(n_);
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] && o.bits_[i];
    return r;
  }
  Relation transitive_closure() const {
    Relation r = *this;
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i)
        if (r(i, k))
          for (std::size_t j = 0; j < n_; ++j)
            if (r(k, j)) r.set(i, j);
    return r;
  }
  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<bool> bits_;
};

// Abstract execution of write-and-read operations: each event writes its id
// to its object and returns rval.
struct AbstractExecution {
  std::vector<MessageId> events;
  std::vector<std::string> object;
  std::vector<std::string> session;
  std::vector<ValueSet> rval;
  Relation vis;
  Relation ar;
  Relation rb;

  std::size_t size() const { return events.size(); }
  Relation ss() const {
    Relation r(size());
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b)
        if (session[a] == session[b]) r.set(a, b);
    return r;
  }
  Relation so() const { return rb.intersect(ss()); }
  Relation hb() const { return so().unite(vis).transitive_closure(); }

  friend bool operator==(const AbstractExecution&, const AbstractExecution&) = default;
};

// Invocation and response time of each operation.
using Schedule = std::vector<std::pair<double, double>>;

struct LccExecution {
  Trace trace;
  ResolvedOrder order;           // the global resolution, over all messages
  std::vector<ValueSet> rvals;   // per message
  std::optional<Schedule> schedule;
};

namespace detail {

inline void check_execution(const LccExecution& x) {
  const auto& dag = x.trace.dag;
  if (!is_permutation_of(dag, x.order)) throw Error("total resolved order", "resolved order is not total");
  if (x.rvals.size() != dag.size()) throw Error("rval per message", "missing return values");
  if (x.schedule && x.schedule->size() != dag.size())
    throw Error("schedule per message", "schedule does not cover every message");
}

// What m's creator held just before creating m.
inline Cut creation_state(const VisibilityIndex& index, const CausalDag& dag, MessageIndex m) {
  Cut c = index.visible_cut(dag.meta(m).creator, dag.meta(m).createIndex);
  c.erase(m);
  return c;
}

}  // namespace detail

inline AbstractExecution theta(const LccExecution& x) {
  detail::check_execution(x);
  const auto& dag = x.trace.dag;
  std::size_t n = dag.size();
  AbstractExecution a;
  a.vis = Relation(n);
  a.ar = Relation(n);
  a.rb = Relation(n);
  VisibilityIndex index(x.trace);
  for (MessageIndex m = 0; m < n; ++m) {
    a.events.push_back(dag.id(m));
    a.object.push_back(dag.meta(m).object);
    a.session.push_back(dag.meta(m).session);
    a.rval.push_back(x.rvals[m]);
    for (auto e : detail::creation_state(index, dag, m).members()) a.vis.set(e, m);
  }
  auto pos = positions(n, x.order);
  for (MessageIndex i = 0; i < n; ++i)
    for (MessageIndex j = 0; j < n; ++j) {
      if (pos[i] < pos[j]) a.ar.set(i, j);
      if (x.schedule && (*x.schedule)[i].second < (*x.schedule)[j].first) a.rb.set(i, j);
    }
  return a;
}

// Rebuilds a trace with one observer per event: events are created in a
// topological order of vis (ties broken by ar) and each receives exactly its
// vis-predecessors on the tick before it is created.
inline LccExecution theta_inverse(const AbstractExecution& a) {
  std::size_t n = a.size();
  if (a.object.size() != n || a.session.size() != n || a.rval.size() != n || a.vis.size() != n ||
      a.ar.size() != n || a.rb.size() != n)
    throw Error("well-formed abstract execution", "relation sizes disagree");
  for (std::size_t i = 0; i < n; ++i) {
    if (a.ar(i, i) || a.vis(i, i)) throw Error("irreflexive relations", "reflexive ar or vis");
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && a.ar(i, j) == a.ar(j, i)) throw Error("total arbitration", "ar is not a total order");
  }
  if (!a.ar.transitive_closure().subset_of(a.ar)) throw Error("total arbitration", "ar is not transitive");
  std::vector<std::size_t> arPos(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.ar(j, i)) ++arPos[i];

  std::vector<std::size_t> created;
  std::vector<bool> done(n, false);
  while (created.size() < n) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      bool ready = true;
      for (std::size_t j = 0; j < n; ++j)
        if (a.vis(j, i) && !done[j]) ready = false;
      if (ready && (!pick || arPos[i] < arPos[*pick])) pick = i;
    }
    if (!pick) throw Error("acyclic visibility", "vis has a cycle");
    done[*pick] = true;
    created.push_back(*pick);
  }

  LccExecution x;
  auto& dag = x.trace.dag;
  std::vector<MessageIndex> idx(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t e = created[k];
    ObserverId obs{"n:" + a.events[e].value};
    x.trace.add_observer(obs);
    idx[e] = dag.add_message(a.events[e], {a.object[e], a.session[e], obs,
                                           static_cast<std::int64_t>(2 * k + 1)});
    for (std::size_t j = 0; j < n; ++j)
      if (a.vis(j, e)) {
        dag.add_edge(idx[j], idx[e]);
        x.trace.deliveries.push_back({static_cast<std::int64_t>(2 * k), obs, idx[j], false});
      }
  }
  x.order.resize(n);
  for (std::size_t i = 0; i < n; ++i) x.order[arPos[i]] = idx[i];
  x.rvals.resize(n);
  for (std::size_t i = 0; i < n; ++i) x.rvals[idx[i]] = a.rval[i];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.rb(i, j))
        throw Error("schedule-free abstract execution", "rebuilding a schedule from rb is not supported");
  return x;
}

// Same messages, labels, edges, resolution, return values, schedule and
// creation-time states, compared by id.
inline bool equivalent(const LccExecution& x, const LccExecution& y) {
  const auto& dx = x.trace.dag;
  const auto& dy = y.trace.dag;
  if (dx.size() != dy.size()) return false;
  VisibilityIndex ix(x.trace), iy(y.trace);
  auto ids = [&](const CausalDag& d, const Cut& c) {
    std::set<MessageId> s;
    for (auto m : c.members()) s.insert(d.id(m));
    return s;
  };
  for (MessageIndex m = 0; m < dx.size(); ++m) {
    auto other = dy.find(dx.id(m));
    if (!other) return false;
    MessageIndex k = *other;
    if (dx.meta(m).object != dy.meta(k).object || dx.meta(m).session != dy.meta(k).session) return false;
    std::set<MessageId> px, py;
    for (auto p : dx.parents(m)) px.insert(dx.id(p));
    for (auto p : dy.parents(k)) py.insert(dy.id(p));
    if (px != py) return false;
    if (x.rvals[m] != y.rvals[k]) return false;
    if (ids(dx, detail::creation_state(ix, dx, m)) != ids(dy, detail::creation_state(iy, dy, k)))
      return false;
    if (x.schedule.has_value() != y.schedule.has_value()) return false;
    if (x.schedule && (*x.schedule)[m] != (*y.schedule)[k]) return false;
  }
  if (x.order.size() != y.order.size()) return false;
  for (std::size_t i = 0; i < x.order.size(); ++i)
    if (dx.id(x.order[i]) != dy.id(y.order[i])) return false;
  return true;
}

enum class AxiomAtom {
  VisNone, VisObject, VisSession, VisCausal,
  ArNone, ArObject, ArAll, Single,
  RvalLatest, RvalAnyConcurrent, RvalComputed, RvalMulti, RvalAny,
  RealTime
};

inline std::string to_string(AxiomAtom a) {
  switch (a) {
    case AxiomAtom::VisNone: return "vis=none";
    case AxiomAtom::VisObject: return "vis=object";
    case AxiomAtom::VisSession: return "vis=session";
    case AxiomAtom::VisCausal: return "vis=causal";
    case AxiomAtom::ArNone: return "ar=none";
    case AxiomAtom::ArObject: return "ar=object";
    case AxiomAtom::ArAll: return "ar=all";
    case AxiomAtom::Single: return "single";
    case AxiomAtom::RvalLatest: return "rval=latest";
    case AxiomAtom::RvalAnyConcurrent: return "rval=anyconc";
    case AxiomAtom::RvalComputed: return "rval=computed:max";
    case AxiomAtom::RvalMulti: return "rval=multi";
    case AxiomAtom::RvalAny: return "rval=any";
    case AxiomAtom::RealTime: return "rt";
  }
  return "?";
}

inline constexpr AxiomAtom kSafetyAtoms[] = {
    AxiomAtom::VisNone,    AxiomAtom::VisObject,         AxiomAtom::VisSession,
    AxiomAtom::VisCausal,  AxiomAtom::ArNone,            AxiomAtom::ArObject,
    AxiomAtom::ArAll,      AxiomAtom::Single,            AxiomAtom::RvalLatest,
    AxiomAtom::RvalAnyConcurrent, AxiomAtom::RvalComputed, AxiomAtom::RvalMulti,
    AxiomAtom::RvalAny};

// The atom evaluated on an abstract execution. Visibility atoms are read as
// closure of what each event observes: an X-related predecessor of an
// observed event is itself observed. Arbitration atoms require visibility
// to respect ar within each class.
inline bool holds_abstract(AxiomAtom atom, const AbstractExecution& a) {
  std::size_t n = a.size();
  auto closed_under = [&](const std::function<bool(std::size_t, std::size_t)>& rel) {
    for (std::size_t e1 = 0; e1 < n; ++e1)
      for (std::size_t e = 0; e < n; ++e)
        if (rel(e1, e))
          for (std::size_t e2 = 0; e2 < n; ++e2)
            if (a.vis(e, e2) && e1 != e2 && !a.vis(e1, e2)) return false;
    return true;
  };
  auto ar_respected = [&](bool perObject) {
    for (std::size_t e1 = 0; e1 < n; ++e1)
      for (std::size_t e2 = 0; e2 < n; ++e2)
        if (a.ar(e1, e2) && (!perObject || a.object[e1] == a.object[e2]) && !a.vis(e1, e2)) return false;
    return closed_under([&](std::size_t e1, std::size_t e) {
      return a.ar(e1, e) && (!perObject || a.object[e1] == a.object[e]);
    });
  };
  auto rval_ok = [&](const std::function<bool(std::size_t, const std::vector<std::size_t>&)>& ok) {
    for (std::size_t e = 0; e < n; ++e) {
      std::vector<std::size_t> w;
      for (std::size_t v = 0; v < n; ++v)
        if (a.vis(v, e) && a.object[v] == a.object[e]) w.push_back(v);
      if (w.empty() ? !a.rval[e].empty() : !ok(e, w)) return false;
    }
    return true;
  };
  switch (atom) {
    case AxiomAtom::VisNone:
    case AxiomAtom::ArNone:
    case AxiomAtom::RvalAny: return true;
    case AxiomAtom::VisObject:
      return closed_under([&](std::size_t e1, std::size_t e) {
        return a.vis(e1, e) && a.object[e1] == a.object[e];
      });
    case AxiomAtom::VisSession:
      return a.so().subset_of(a.vis) && closed_under([&](std::size_t e1, std::size_t e) {
               return a.vis(e1, e) && a.session[e1] == a.session[e];
             });
    case AxiomAtom::VisCausal: return a.hb().subset_of(a.vis);
    case AxiomAtom::ArObject: return ar_respected(true);
    case AxiomAtom::ArAll: return ar_respected(false);
    case AxiomAtom::Single:
      for (std::size_t e1 = 0; e1 < n; ++e1)
        for (std::size_t e2 = 0; e2 < n; ++e2)
          if (a.vis(e1, e2) != a.ar(e1, e2)) return false;
      return true;
    case AxiomAtom::RvalLatest:
      return rval_ok([&](std::size_t e, const std::vector<std::size_t>& w) {
        std::size_t last = w.front();
        for (auto v : w)
          if (a.ar(last, v)) last = v;
        return a.rval[e] == ValueSet{a.events[last].value};
      });
    case AxiomAtom::RvalAnyConcurrent:
      return rval_ok([&](std::size_t e, const std::vector<std::size_t>& w) {
        for (auto v : w)
          if (a.rval[e] == ValueSet{a.events[v].value}) return true;
        return false;
      });
    case AxiomAtom::RvalComputed:
      return rval_ok([&](std::size_t e, const std::vector<std::size_t>& w) {
        std::string best = a.events[w.front()].value;
        for (auto v : w) best = std::max(best, a.events[v].value);
        return a.rval[e] == ValueSet{best};
      });
    case AxiomAtom::RvalMulti: {
      Relation hb = a.hb();
      return rval_ok([&](std::size_t e, const std::vector<std::size_t>& w) {
        ValueSet top;
        for (auto v : w) {
          bool dominated = false;
          for (auto u : w)
            if (u != v && hb(v, u)) dominated = true;
          if (!dominated) top.insert(a.events[v].value);
        }
        return a.rval[e] == top;
      });
    }
    case AxiomAtom::RealTime: break;
  }
  throw Error("checkable atom", "real-time order has no single-system image");
}

// The configuration atom evaluated on the LCC execution itself, through its
// observers' states.
inline bool holds_lcc(AxiomAtom atom, const LccExecution& x) {
  detail::check_execution(x);
  const auto& dag = x.trace.dag;
  VisibilityIndex index(x.trace);
  auto every_state = [&](const std::function<bool(const Cut&)>& ok) {
    for (const auto& n : x.trace.observers)
      for (auto t : index.change_times(n))
        if (!ok(index.visible_cut(n, t))) return false;
    return true;
  };
  auto closure = [&](ClosureScope c) {
    return every_state([&](const Cut& cut) { return closure_violations(cut, c, dag).empty(); });
  };
  auto prefix = [&](OrderScope o) {
    return every_state([&](const Cut& cut) {
      return is_admissible(cut, ClosureScope::None, o, dag, x.order, true).prefixViolations.empty();
    });
  };
  auto selects = [&](const Selector& f) {
    for (MessageIndex m = 0; m < dag.size(); ++m) {
      Cut state = detail::creation_state(index, dag, m);
      if (!reportable(f, dag, state, x.order, dag.meta(m).object).allows(x.rvals[m])) return false;
    }
    return true;
  };
  auto translated = [&](const PartialConfig& p) -> bool {
    if (p.c) return closure(*p.c);
    if (p.o) return prefix(*p.o);
    return selects(*p.f);
  };
  switch (atom) {
    case AxiomAtom::VisNone: return translated(phi_atom(VisAtom::None));
    case AxiomAtom::VisObject: return translated(phi_atom(VisAtom::Object));
    case AxiomAtom::VisSession: return translated(phi_atom(VisAtom::Session));
    case AxiomAtom::VisCausal: return translated(phi_atom(VisAtom::Causal));
    case AxiomAtom::ArNone: return translated(phi_atom(ArAtom::None));
    case AxiomAtom::ArObject: return translated(phi_atom(ArAtom::Object));
    case AxiomAtom::ArAll: return translated(phi_atom(ArAtom::All));
    case AxiomAtom::Single: return translated(phi_single());
    case AxiomAtom::RvalLatest: return translated(phi_atom(RvalAtom::Latest));
    case AxiomAtom::RvalAnyConcurrent: return translated(phi_atom(RvalAtom::AnyConcurrent));
    case AxiomAtom::RvalComputed: return translated(phi_atom(RvalAtom::Computed, "max"));
    case AxiomAtom::RvalMulti: return translated(phi_atom(RvalAtom::Multi));
    case AxiomAtom::RvalAny: return translated(phi_atom(RvalAtom::Any));
    case AxiomAtom::RealTime: break;
  }
  throw Error("checkable atom", "real-time order has no single-system image");
}

inline bool is_rval_atom(AxiomAtom a) {
  return a == AxiomAtom::RvalLatest || a == AxiomAtom::RvalAnyConcurrent ||
         a == AxiomAtom::RvalComputed || a == AxiomAtom::RvalMulti || a == AxiomAtom::RvalAny;
}

// Whatever a creator saw before creating m is a parent of m, so vis can be
// read back as the edge set.
inline bool observation_is_dependency(const Trace& trace) {
  const auto& dag = trace.dag;
  VisibilityIndex index(trace);
  for (MessageIndex m = 0; m < dag.size(); ++m)
    for (auto x : detail::creation_state(index, dag, m).members())
      if (!dag.has_edge(x, m)) return false;
  return true;
}

// Every valid execution with 1..maxEvents events: (object, session) labels
// from 2x2, forward dependency edges, every grouping of events onto
// observers, and every linear extension as the resolution. Each event
// receives the parents it has not yet seen on the tick before its creation;
// executions that then violate the axioms, or see a non-parent, are skipped.
inline void for_each_small_execution(std::size_t maxEvents,
                                     const std::function<void(const LccExecution&)>& fn) {
  if (maxEvents == 0 || maxEvents > 4) throw Error("1 <= maxEvents <= 4", "execution bound exceeded");
  for (std::size_t k = 1; k <= maxEvents; ++k) {
    for_each_labeled_dag(k, 2, 2, [&](const CausalDag& shape) {
      // Restricted growth strings assign events to observers.
      std::vector<std::size_t> rgs(k, 0);
      std::function<void(std::size_t, std::size_t)> assign = [&](std::size_t i, std::size_t used) {
        if (i == k) {
          LccExecution x;
          auto& dag = x.trace.dag;
          for (MessageIndex m = 0; m < k; ++m) {
            ObserverId obs{"n" + std::to_string(rgs[m])};
            x.trace.add_observer(obs);
            dag.add_message(MessageId{"e" + std::to_string(m)},
                            {shape.meta(m).object, shape.meta(m).session, obs,
                             static_cast<std::int64_t>(2 * m + 1)});
          }
          for (auto [p, c] : shape.edges()) dag.add_edge(p, c);
          std::map<ObserverId, std::set<MessageIndex>> held;
          for (MessageIndex m = 0; m < k; ++m) {
            auto& h = held[dag.meta(m).creator];
            for (auto p : dag.parents(m))
              if (h.insert(p).second)
                x.trace.deliveries.push_back({static_cast<std::int64_t>(2 * m), dag.meta(m).creator, p, false});
            h.insert(m);
          }
          if (!validate_axioms(x.trace).empty() || !observation_is_dependency(x.trace)) return;
          x.rvals.assign(k, {});
          for_each_linear_extension(dag, [&](const ResolvedOrder& ord) {
            x.order = ord;
            fn(x);
          });
          return;
        }
        for (std::size_t g = 0; g <= used && g < k; ++g) {
          rgs[i] = g;
          assign(i + 1, std::max(used, g + 1));
        }
      };
      rgs[0] = 0;
      assign(1, 1);
    });
  }
}

struct AxiomCheckResult {
  bool holds = true;
  std::uint64_t executions = 0;
  std::uint64_t satisfying = 0;
  std::string counterexample;
};

// Checks, on every small execution, that the atom holds of the abstract
// execution exactly when its translation holds of the LCC execution.
inline AxiomCheckResult per_axiom_check(AxiomAtom atom, std::size_t maxEvents = 3) {
  if (atom == AxiomAtom::RealTime)
    throw Error("checkable atom", std::string("rt is rejected: ") + kRealTimeVerdict);
  AxiomCheckResult res;
  auto judge = [&](const LccExecution& x) {
    ++res.executions;
    bool lhs = holds_abstract(atom, theta(x));
    bool rhs = holds_lcc(atom, x);
    if (lhs) ++res.satisfying;
    if (lhs != rhs && res.holds) {
      res.holds = false;
      std::ostringstream os;
      os << to_string(atom) << " abstract=" << lhs << " lcc=" << rhs << " on";
      for (auto [p, c] : x.trace.dag.edges())
        os << " " << x.trace.dag.id(p).value << "->" << x.trace.dag.id(c).value;
      res.counterexample = os.str();
    }
  };
  for_each_small_execution(maxEvents, [&](const LccExecution& base) {
    if (!is_rval_atom(atom)) {
      judge(base);
      return;
    }
    std::size_t k = base.trace.dag.size();
    std::vector<ValueSet> options{{}, {"junk"}};
    for (std::size_t i = 0; i < k; ++i) {
      options.push_back({"e" + std::to_string(i)});
      for (std::size_t j = i + 1; j < k; ++j)
        options.push_back({"e" + std::to_string(i), "e" + std::to_string(j)});
    }
    LccExecution x = base;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == k) {
        judge(x);
        return;
      }
      for (const auto& v : options) {
        x.rvals[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
  });
  return res;
}

}  // namespace lcc
