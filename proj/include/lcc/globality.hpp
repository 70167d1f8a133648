#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lcc/admissibility.hpp"

namespace lcc {

// One order scope with its within-class order: rank[m] orders the members
// of each class (lower first).
struct ScopeInstance {
  std::string name;
  Partition partition;
  std::vector<std::size_t> rank;

  bool orders(MessageIndex a, MessageIndex b) const {
    return partition.same_class(a, b) && rank.at(a) < rank.at(b);
  }
};

inline ScopeInstance scope_from_order(const CausalDag& dag, OrderScope o, const ResolvedOrder& ord) {
  return {to_string(o), order_partition(dag, o), positions(dag.size(), ord)};
}

// Session labels as a class structure. Sessions never act as order scopes;
// this exists to exhibit stacks that mix the two axes.
inline ScopeInstance session_scope(const CausalDag& dag, const ResolvedOrder& ord) {
  Partition p;
  p.classOf.resize(dag.size());
  std::map<std::string, std::size_t> ids;
  for (MessageIndex m = 0; m < dag.size(); ++m) {
    auto [it, fresh] = ids.emplace(dag.meta(m).session, p.names.size());
    if (fresh) p.names.push_back("ses:" + dag.meta(m).session);
    p.classOf[m] = it->second;
  }
  return {"session", p, positions(dag.size(), ord)};
}

struct CoClassGraph {
  std::size_t n = 0;
  // inducing[a][b]: scopes that put a and b in one class.
  std::vector<std::vector<std::vector<std::size_t>>> inducing;

  bool edge(MessageIndex a, MessageIndex b) const { return a != b && !inducing[a][b].empty(); }
  bool connected() const {
    if (n == 0) return true;
    std::vector<bool> seen(n, false);
    std::vector<MessageIndex> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (MessageIndex y = 0; y < n; ++y)
        if (!seen[y] && edge(x, y)) {
          seen[y] = true;
          ++count;
          stack.push_back(y);
        }
    }
    return count == n;
  }
  bool complete() const {
    for (MessageIndex a = 0; a < n; ++a)
      for (MessageIndex b = 0; b < n; ++b)
        if (a != b && !edge(a, b)) return false;
    return true;
  }
};

inline std::size_t scope_universe(const std::vector<ScopeInstance>& scopes) {
  if (scopes.empty()) throw Error("at least one scope", "empty scope stack");
  std::size_t n = scopes.front().partition.classOf.size();
  for (const auto& s : scopes)
    if (s.partition.classOf.size() != n || s.rank.size() != n)
      throw Error("scopes over one message set", "scopes disagree on the message set");
  return n;
}

inline CoClassGraph co_class_graph(const std::vector<ScopeInstance>& scopes) {
  CoClassGraph g;
  g.n = scope_universe(scopes);
  g.inducing.assign(g.n, std::vector<std::vector<std::size_t>>(g.n));
  for (std::size_t j = 0; j < scopes.size(); ++j)
    for (MessageIndex a = 0; a < g.n; ++a)
      for (MessageIndex b = 0; b < g.n; ++b)
        if (a != b && scopes[j].partition.same_class(a, b)) g.inducing[a][b].push_back(j);
  return g;
}

// Whether some scope directly orders a before b.
inline bool directly_ordered(const std::vector<ScopeInstance>& scopes, MessageIndex a, MessageIndex b) {
  for (const auto& s : scopes)
    if (s.orders(a, b)) return true;
  return false;
}

// The candidate is realized when each consecutive pair is ordered that way
// by a scope co-classing it, and no scope orders any pair against it.
inline bool realizes_total_order(const std::vector<ScopeInstance>& scopes, const ResolvedOrder& candidate) {
  std::size_t n = scope_universe(scopes);
  if (candidate.size() != n) throw Error("candidate covers the messages", "candidate order has the wrong size");
  auto pos = positions(n, candidate);
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!directly_ordered(scopes, candidate[i], candidate[i + 1])) return false;
  for (const auto& s : scopes)
    for (MessageIndex a = 0; a < n; ++a)
      for (MessageIndex b = 0; b < n; ++b)
        if (s.orders(a, b) && pos[a] > pos[b]) return false;
  return true;
}

// Search for a realized total order: a Hamiltonian path along co-class
// edges, in scope direction, that no scope contradicts.
inline std::optional<ResolvedOrder> find_realizing_order(const std::vector<ScopeInstance>& scopes) {
  std::size_t n = scope_universe(scopes);
  if (n > 10) throw Error("at most 10 messages", "Hamiltonian search bounded at 10 messages");
  ResolvedOrder path;
  std::vector<bool> used(n, false);
  std::function<bool()> extend = [&]() -> bool {
    if (path.size() == n) return true;
    for (MessageIndex next = 0; next < n; ++next) {
      if (used[next]) continue;
      if (!path.empty() && !directly_ordered(scopes, path.back(), next)) continue;
      bool contradicted = false;
      for (auto placed : path)
        if (directly_ordered(scopes, next, placed)) contradicted = true;
      if (contradicted) continue;
      used[next] = true;
      path.push_back(next);
      if (extend()) return true;
      path.pop_back();
      used[next] = false;
    }
    return false;
  };
  if (extend()) return path;
  return std::nullopt;
}

}  // namespace lcc
