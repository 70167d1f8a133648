#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lcc/causal_dag.hpp"

namespace lcc {

// A committed order that places `descendant` before its ancestor.
struct Scar {
  MessageIndex ancestor;
  MessageIndex descendant;
};

// Scars among the messages the order lists.
inline std::vector<Scar> scar_scan_partial(const CausalDag& dag, const ResolvedOrder& order) {
  positions(dag.size(), order);
  Reachability reach(dag);
  std::vector<Scar> out;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (reach.ancestor(order[j], order[i])) out.push_back({order[j], order[i]});
  return out;
}

inline std::vector<Scar> scar_scan(const CausalDag& dag, const ResolvedOrder& order) {
  if (!is_permutation_of(dag, order))
    throw Error("order covers the dag", "order does not cover exactly the dag's messages");
  return scar_scan_partial(dag, order);
}

// A scar-free order: topological, smallest id first among ready messages.
inline ResolvedOrder clean_order(const CausalDag& dag) { return topological_order(dag); }

using CommitMap = std::map<ObserverId, std::vector<MessageId>>;

// Union of every observer's committed precedences; returns a shortest cycle
// as the sequence of events along it, or nothing when the union is acyclic.
inline std::optional<std::vector<MessageId>> frozen_cycle_detect(const CommitMap& commits) {
  std::map<MessageId, std::size_t> index;
  std::vector<MessageId> names;
  for (const auto& [obs, seq] : commits) {
    std::set<MessageId> seen;
    for (const auto& e : seq) {
      if (!seen.insert(e).second)
        throw Error("commits list each event once", "observer '" + obs.value + "' commits '" +
                                                        e.value + "' twice");
      if (index.emplace(e, names.size()).second) names.push_back(e);
    }
  }
  std::size_t n = names.size();
  std::vector<std::set<std::size_t>> succ(n);
  for (const auto& [obs, seq] : commits)
    for (std::size_t i = 0; i < seq.size(); ++i)
      for (std::size_t j = i + 1; j < seq.size(); ++j) succ[index[seq[i]]].insert(index[seq[j]]);

  std::optional<std::vector<std::size_t>> best;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> parent(n, n);
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = true;
    std::optional<std::size_t> closer;
    while (!q.empty() && !closer) {
      auto x = q.front();
      q.pop();
      for (auto y : succ[x]) {
        if (y == s) {
          closer = x;
          break;
        }
        if (!seen[y]) {
          seen[y] = true;
          parent[y] = x;
          q.push(y);
        }
      }
    }
    if (!closer) continue;
    std::vector<std::size_t> cyc;
    for (std::size_t x = *closer; x != n; x = parent[x]) cyc.push_back(x);
    std::reverse(cyc.begin(), cyc.end());
    if (!best || cyc.size() < best->size()) best = cyc;
  }
  if (!best) return std::nullopt;
  std::vector<MessageId> out;
  for (auto x : *best) out.push_back(names[x]);
  return out;
}

// What a replica keeps after garbage collection: the ids it has seen and the
// dependency edges it still stores.
struct RetainedState {
  std::set<MessageId> seen;
  std::set<std::pair<MessageId, MessageId>> edges;

  friend bool operator==(const RetainedState&, const RetainedState&) = default;
};

inline RetainedState retain(const CausalDag& dag) {
  RetainedState s;
  for (MessageIndex m = 0; m < dag.size(); ++m) s.seen.insert(dag.id(m));
  for (auto [p, c] : dag.edges()) s.edges.insert({dag.id(p), dag.id(c)});
  return s;
}

inline RetainedState discard_edges_of(RetainedState s, const MessageId& m) {
  for (auto it = s.edges.begin(); it != s.edges.end();)
    it = (it->first == m || it->second == m) ? s.edges.erase(it) : std::next(it);
  return s;
}

namespace detail {

inline CausalDag chain(const std::vector<std::string>& ids) {
  CausalDag dag;
  std::vector<std::string> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    dag.add_message(MessageId{sorted[i]},
                    {"x", "s", ObserverId{"n:" + sorted[i]}, static_cast<std::int64_t>(i)});
  for (std::size_t i = 0; i + 1 < ids.size(); ++i)
    dag.add_edge(MessageId{ids[i]}, MessageId{ids[i + 1]});
  return dag;
}

}  // namespace detail

struct RetentionCounterexample {
  CausalDag g;
  CausalDag gPrime;
  RetainedState retained;
  RetainedState retainedPrime;
};

// Two histories that disagree on whether m1 precedes m2, routed through m0.
// Once m0's edges are discarded the retained states coincide.
inline RetentionCounterexample retention_counterexample(bool discard = true) {
  RetentionCounterexample x;
  x.g = detail::chain({"m1", "m0", "m2"});
  x.gPrime = detail::chain({"m2", "m0", "m1"});
  x.retained = retain(x.g);
  x.retainedPrime = retain(x.gPrime);
  if (discard) {
    x.retained = discard_edges_of(x.retained, MessageId{"m0"});
    x.retainedPrime = discard_edges_of(x.retainedPrime, MessageId{"m0"});
  }
  return x;
}

struct DetectionCounterexample {
  CausalDag g1;  // m' is an ancestor of m
  CausalDag g2;  // m and m' are concurrent
  RetainedState retained1;
  RetainedState retained2;
  std::vector<MessageId> stored;  // places m before m'
};

inline DetectionCounterexample detection_counterexample() {
  DetectionCounterexample x;
  x.g1 = detail::chain({"m'", "m"});
  x.g2 = detail::chain({"m'"});
  x.g2.add_message(MessageId{"m"}, {"x", "s", ObserverId{"n:m"}, 0});
  x.retained1 = discard_edges_of(retain(x.g1), MessageId{"m'"});
  x.retained2 = discard_edges_of(retain(x.g2), MessageId{"m'"});
  x.stored = {MessageId{"m"}, MessageId{"m'"}};
  return x;
}

inline ResolvedOrder order_of_ids(const CausalDag& dag, const std::vector<MessageId>& ids) {
  ResolvedOrder out;
  for (const auto& id : ids) out.push_back(dag.index_of(id));
  positions(dag.size(), out);
  return out;
}

}  // namespace lcc
