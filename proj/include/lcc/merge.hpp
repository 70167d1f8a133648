#pragma once

#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "lcc/admissibility.hpp"
#include "lcc/config.hpp"

namespace lcc {

// A replica's state: the messages it holds and its resolution of them.
struct View {
  Cut cut;
  ResolvedOrder order;
};

inline void validate_view(const CausalDag& dag, const View& v) {
  if (v.cut.universe() != dag.size()) throw Error("view over dag", "view cut is over a different dag");
  std::vector<bool> seen(dag.size(), false);
  for (auto m : v.order) {
    if (m >= dag.size() || !v.cut.contains(m))
      throw Error("view order within its cut", "view order covers messages outside its cut");
    if (seen[m]) throw Error("view order lists each message once", "view order repeats a message");
    seen[m] = true;
  }
  if (v.order.size() != v.cut.size())
    throw Error("view order covers its cut", "view order omits messages of its cut");
}

// A pair held by both views, in one class, ordered first-before-second by
// view A and the other way by view B.
struct MergeConflict {
  MessageIndex first;
  MessageIndex second;
  std::string orderClass;
};

inline std::optional<MergeConflict> agreement_check(const View& a, const View& b,
                                                    const Partition& classes) {
  std::vector<std::size_t> posB(classes.classOf.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < b.order.size(); ++i) posB[b.order[i]] = i;
  for (std::size_t i = 0; i < a.order.size(); ++i) {
    auto x = a.order[i];
    if (posB[x] == static_cast<std::size_t>(-1)) continue;
    for (std::size_t j = i + 1; j < a.order.size(); ++j) {
      auto y = a.order[j];
      if (posB[y] == static_cast<std::size_t>(-1) || !classes.same_class(x, y)) continue;
      if (posB[y] < posB[x]) return MergeConflict{x, y, classes.names[classes.classOf[x]]};
    }
  }
  return std::nullopt;
}

struct MergeOutcome {
  enum class Kind { Merged, Conflict, ClosureFailure };
  Kind kind = Kind::Merged;
  ResolvedOrder merged;
  std::map<std::string, ResolvedOrder> perClass;
  std::optional<MergeConflict> conflict;
  std::string failingView;
  std::vector<ClosureViolation> closureViolations;
};

inline std::string to_string(MergeOutcome::Kind k) {
  switch (k) {
    case MergeOutcome::Kind::Merged: return "merged";
    case MergeOutcome::Kind::Conflict: return "conflict";
    case MergeOutcome::Kind::ClosureFailure: return "closure-failure";
  }
  return "?";
}

namespace detail {

// Topological sort of the union of both views' within-class orders, plus
// causality between held messages when that stays acyclic; ties go to the
// smallest message id.
inline std::optional<ResolvedOrder> union_order_with(const View& a, const View& b,
                                                     const Partition& classes, const CausalDag& dag,
                                                     bool causal) {
  std::size_t n = dag.size();
  std::vector<std::vector<MessageIndex>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  std::vector<bool> member(n, false);
  auto add_chain = [&](const ResolvedOrder& ord) {
    std::map<std::size_t, MessageIndex> last;
    for (auto m : ord) {
      member[m] = true;
      auto it = last.find(classes.classOf[m]);
      if (it != last.end()) {
        succ[it->second].push_back(m);
        ++indeg[m];
      }
      last[classes.classOf[m]] = m;
    }
  };
  add_chain(a.order);
  add_chain(b.order);
  if (causal) {
    Reachability reach(dag);
    for (MessageIndex x = 0; x < n; ++x)
      for (MessageIndex y = 0; y < n; ++y)
        if (member[x] && member[y] && reach.ancestor(x, y)) {
          succ[x].push_back(y);
          ++indeg[y];
        }
  }
  auto later = [&](MessageIndex x, MessageIndex y) { return dag.id(y) < dag.id(x); };
  std::priority_queue<MessageIndex, std::vector<MessageIndex>, decltype(later)> ready(later);
  for (MessageIndex m = 0; m < n; ++m)
    if (member[m] && indeg[m] == 0) ready.push(m);
  ResolvedOrder out;
  while (!ready.empty()) {
    auto x = ready.top();
    ready.pop();
    out.push_back(x);
    for (auto y : succ[x])
      if (--indeg[y] == 0) ready.push(y);
  }
  std::size_t members = 0;
  for (bool b2 : member) members += b2 ? 1 : 0;
  if (out.size() != members) return std::nullopt;
  return out;
}

inline ResolvedOrder union_order(const View& a, const View& b, const Partition& classes,
                                 const CausalDag& dag) {
  if (auto o = union_order_with(a, b, classes, dag, true)) return *o;
  if (auto o = union_order_with(a, b, classes, dag, false)) return *o;
  throw Error("agreeing views", "union of agreeing views is cyclic");
}

}  // namespace detail

inline MergeOutcome mergeable(const View& a, const View& b, const Configuration& target,
                              const CausalDag& dag) {
  validate_view(dag, a);
  validate_view(dag, b);
  MergeOutcome out;
  for (const auto& [name, v] : {std::pair<std::string, const View*>{"a", &a}, {"b", &b}}) {
    auto viol = closure_violations(v->cut, target.c, dag);
    if (!viol.empty()) {
      out.kind = MergeOutcome::Kind::ClosureFailure;
      out.failingView = name;
      out.closureViolations = std::move(viol);
      return out;
    }
  }
  auto classes = order_partition(dag, target.o);
  if (auto c = agreement_check(a, b, classes)) {
    out.kind = MergeOutcome::Kind::Conflict;
    out.conflict = c;
    return out;
  }
  out.kind = MergeOutcome::Kind::Merged;
  out.merged = detail::union_order(a, b, classes, dag);
  for (auto m : out.merged) out.perClass[classes.names[classes.classOf[m]]].push_back(m);
  return out;
}

enum class FrontierClass { AlwaysMergeable, ConditionallyMergeable };

inline std::string to_string(FrontierClass f) {
  return f == FrontierClass::AlwaysMergeable ? "always-mergeable" : "conditionally-mergeable";
}

inline FrontierClass frontier_classify(const Configuration& target, bool resolutionConfluent) {
  if (target.o == OrderScope::Trivial || resolutionConfluent) return FrontierClass::AlwaysMergeable;
  return FrontierClass::ConditionallyMergeable;
}

inline FrontierClass frontier_classify(const Configuration& target) {
  return frontier_classify(target, is_confluent(target.f));
}

enum class PartitionPolicy { Decline, WeakenO };

struct PartitionResolution {
  bool available = false;
  std::optional<OrderScope> mergedAt;
  std::optional<MergeOutcome> outcome;
};

inline PartitionResolution partition_decision(const MergeOutcome& conflict, PartitionPolicy policy,
                                              const View& a, const View& b,
                                              const Configuration& target, const CausalDag& dag) {
  if (conflict.kind != MergeOutcome::Kind::Conflict)
    throw Error("outcome is a conflict", "partition decision needs a conflict outcome");
  PartitionResolution res;
  if (policy == PartitionPolicy::Decline) return res;
  for (auto o : {OrderScope::PerObject, OrderScope::Trivial}) {
    if (!order_leq(o, target.o) || o == target.o) continue;
    Configuration weaker = target;
    weaker.o = o;
    auto attempt = mergeable(a, b, weaker, dag);
    if (attempt.kind == MergeOutcome::Kind::Merged) {
      res.available = true;
      res.mergedAt = o;
      res.outcome = std::move(attempt);
      return res;
    }
  }
  return res;
}

}  // namespace lcc
