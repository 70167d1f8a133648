#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lcc/config.hpp"
#include "lcc/error.hpp"

namespace lcc {

struct MessageId {
  std::string value;
  auto operator<=>(const MessageId&) const = default;
};

struct ObserverId {
  std::string value;
  auto operator<=>(const ObserverId&) const = default;
};

struct MessageMeta {
  std::string object;
  std::string session;
  ObserverId creator;
  std::int64_t createIndex = 0;
};

using MessageIndex = std::size_t;

// A resolved order: a sequence of distinct message indices.
using ResolvedOrder = std::vector<MessageIndex>;

// Subset of the messages of one DAG.
class MessageSet {
 public:
  MessageSet() = default;
  explicit MessageSet(std::size_t universe) : bits_(universe, false) {}
  MessageSet(std::size_t universe, std::initializer_list<MessageIndex> members)
      : bits_(universe, false) {
    for (auto m : members) insert(m);
  }

  std::size_t universe() const { return bits_.size(); }
  bool contains(MessageIndex m) const { return m < bits_.size() && bits_[m]; }
  void insert(MessageIndex m) {
    if (m >= bits_.size()) throw Error("index in universe", "message index out of range");
    bits_[m] = true;
  }
  void erase(MessageIndex m) {
    if (m < bits_.size()) bits_[m] = false;
  }
  std::size_t size() const {
    std::size_t n = 0;
    for (bool b : bits_) n += b ? 1 : 0;
    return n;
  }
  bool empty() const { return size() == 0; }
  std::vector<MessageIndex> members() const {
    std::vector<MessageIndex> out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.push_back(i);
    return out;
  }
  bool subset_of(const MessageSet& other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !other.contains(i)) return false;
    return true;
  }
  std::uint64_t mask() const {
    if (bits_.size() > 64) throw Error("at most 64 messages", "mask needs <= 64 messages");
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) m |= std::uint64_t{1} << i;
    return m;
  }
  static MessageSet from_mask(std::size_t universe, std::uint64_t mask) {
    MessageSet s(universe);
    for (std::size_t i = 0; i < universe; ++i)
      if (mask >> i & 1u) s.insert(i);
    return s;
  }

  friend bool operator==(const MessageSet&, const MessageSet&) = default;

 private:
  std::vector<bool> bits_;
};

using Cut = MessageSet;

class CausalDag {
 public:
  MessageIndex add_message(MessageId id, MessageMeta meta) {
    if (index_.count(id)) throw Error("unique message id", "duplicate message id '" + id.value + "'");
    auto key = std::make_pair(meta.creator, meta.createIndex);
    if (creator_slots_.count(key))
      throw Error("createIndex strictly increasing per creator",
                  "creator '" + meta.creator.value + "' reuses createIndex " +
                      std::to_string(meta.createIndex));
    creator_slots_.insert(key);
    MessageIndex i = ids_.size();
    index_.emplace(id, i);
    ids_.push_back(std::move(id));
    meta_.push_back(std::move(meta));
    parents_.emplace_back();
    children_.emplace_back();
    return i;
  }

  void add_edge(MessageIndex parent, MessageIndex child) {
    check_index(parent);
    check_index(child);
    if (parent == child) throw Error("acyclic", "self edge on '" + ids_[parent].value + "'");
    for (auto p : parents_[child])
      if (p == parent) return;
    const auto& mp = meta_[parent];
    const auto& mc = meta_[child];
    if (mp.creator == mc.creator && mp.createIndex >= mc.createIndex)
      throw Error("same-creator parent precedes child",
                  "edge " + ids_[parent].value + "->" + ids_[child].value +
                      " runs against its creator's createIndex");
    if (reaches(child, parent))
      throw Error("acyclic", "edge " + ids_[parent].value + "->" + ids_[child].value +
                                 " closes a cycle");
    parents_[child].push_back(parent);
    children_[parent].push_back(child);
  }

  void add_edge(const MessageId& parent, const MessageId& child) {
    add_edge(index_of(parent), index_of(child));
  }

  std::size_t size() const { return ids_.size(); }
  const MessageId& id(MessageIndex i) const { return ids_.at(i); }
  const MessageMeta& meta(MessageIndex i) const { return meta_.at(i); }
  const std::vector<MessageIndex>& parents(MessageIndex i) const { return parents_.at(i); }
  const std::vector<MessageIndex>& children(MessageIndex i) const { return children_.at(i); }

  std::optional<MessageIndex> find(const MessageId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  MessageIndex index_of(const MessageId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw Error("known message id", "unknown message id '" + id.value + "'");
    return it->second;
  }

  std::vector<std::pair<MessageIndex, MessageIndex>> edges() const {
    std::vector<std::pair<MessageIndex, MessageIndex>> out;
    for (MessageIndex c = 0; c < size(); ++c)
      for (auto p : parents_[c]) out.emplace_back(p, c);
    return out;
  }

  bool has_edge(MessageIndex parent, MessageIndex child) const {
    for (auto p : parents_.at(child))
      if (p == parent) return true;
    return false;
  }

  // True when there is a directed path from `from` to `to` (from != to).
  bool reaches(MessageIndex from, MessageIndex to) const {
    if (from == to) return false;
    std::vector<bool> seen(size(), false);
    std::vector<MessageIndex> stack{from};
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (auto c : children_[x]) {
        if (c == to) return true;
        if (!seen[c]) {
          seen[c] = true;
          stack.push_back(c);
        }
      }
    }
    return false;
  }

  void check_index(MessageIndex i) const {
    if (i >= size()) throw Error("known message", "message index " + std::to_string(i) + " out of range");
  }

 private:
  std::vector<MessageId> ids_;
  std::vector<MessageMeta> meta_;
  std::vector<std::vector<MessageIndex>> parents_;
  std::vector<std::vector<MessageIndex>> children_;
  std::map<MessageId, MessageIndex> index_;
  std::set<std::pair<ObserverId, std::int64_t>> creator_slots_;
};

// Proper ancestors of m.
inline MessageSet deps_star(const CausalDag& dag, MessageIndex m) {
  dag.check_index(m);
  MessageSet out(dag.size());
  std::vector<MessageIndex> stack{m};
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (auto p : dag.parents(x)) {
      if (!out.contains(p)) {
        out.insert(p);
        stack.push_back(p);
      }
    }
  }
  return out;
}

inline bool concurrent(const CausalDag& dag, MessageIndex a, MessageIndex b) {
  dag.check_index(a);
  dag.check_index(b);
  if (a == b) return false;
  return !dag.reaches(a, b) && !dag.reaches(b, a);
}

// All-pairs ancestry, computed once for repeated queries.
class Reachability {
 public:
  explicit Reachability(const CausalDag& dag) : n_(dag.size()), words_((n_ + 63) / 64) {
    anc_.assign(n_ * words_, 0);
    std::vector<std::size_t> indeg(n_, 0);
    for (MessageIndex c = 0; c < n_; ++c) indeg[c] = dag.parents(c).size();
    std::vector<MessageIndex> ready;
    for (MessageIndex i = 0; i < n_; ++i)
      if (indeg[i] == 0) ready.push_back(i);
    while (!ready.empty()) {
      auto x = ready.back();
      ready.pop_back();
      for (auto p : dag.parents(x)) {
        set(x, p);
        for (std::size_t w = 0; w < words_; ++w) anc_[x * words_ + w] |= anc_[p * words_ + w];
      }
      for (auto c : dag.children(x))
        if (--indeg[c] == 0) ready.push_back(c);
    }
  }

  // True when a is a proper ancestor of b.
  bool ancestor(MessageIndex a, MessageIndex b) const {
    return (anc_[b * words_ + a / 64] >> (a % 64)) & 1u;
  }
  bool concurrent(MessageIndex a, MessageIndex b) const {
    return a != b && !ancestor(a, b) && !ancestor(b, a);
  }

 private:
  void set(MessageIndex x, MessageIndex p) { anc_[x * words_ + p / 64] |= std::uint64_t{1} << (p % 64); }

  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> anc_;
};

inline bool shares_object(const CausalDag& dag, MessageIndex a, MessageIndex b) {
  return dag.meta(a).object == dag.meta(b).object;
}

inline bool shares_session(const CausalDag& dag, MessageIndex a, MessageIndex b) {
  return dag.meta(a).session == dag.meta(b).session;
}

// Whether a closure scope requires the edge parent->child.
inline bool scope_requires_edge(const CausalDag& dag, MessageIndex parent, MessageIndex child,
                                ClosureScope scope) {
  switch (scope) {
    case ClosureScope::None: return false;
    case ClosureScope::Object: return shares_object(dag, parent, child);
    case ClosureScope::Session: return shares_session(dag, parent, child);
    case ClosureScope::ObjectSession:
      return shares_object(dag, parent, child) || shares_session(dag, parent, child);
    case ClosureScope::Explicit: return true;
  }
  return false;
}

// Immediate parents of m that the scope obliges a holder of m to hold.
inline std::vector<MessageIndex> filter_parents(const CausalDag& dag, MessageIndex m,
                                                ClosureScope scope) {
  dag.check_index(m);
  std::vector<MessageIndex> out;
  for (auto p : dag.parents(m))
    if (scope_requires_edge(dag, p, m, scope)) out.push_back(p);
  return out;
}

// Checks that `order` lists every message exactly once.
inline bool is_permutation_of(const CausalDag& dag, const ResolvedOrder& order) {
  if (order.size() != dag.size()) return false;
  std::vector<bool> seen(dag.size(), false);
  for (auto m : order) {
    if (m >= dag.size() || seen[m]) return false;
    seen[m] = true;
  }
  return true;
}

inline std::vector<std::size_t> positions(std::size_t universe, const ResolvedOrder& order) {
  std::vector<std::size_t> pos(universe, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= universe) throw Error("order over dag messages", "order names an unknown message");
    if (pos[order[i]] != static_cast<std::size_t>(-1))
      throw Error("order lists each message once", "order repeats a message");
    pos[order[i]] = i;
  }
  return pos;
}

inline bool is_linear_extension(const CausalDag& dag, const ResolvedOrder& order) {
  if (!is_permutation_of(dag, order)) return false;
  auto pos = positions(dag.size(), order);
  for (auto [p, c] : dag.edges())
    if (pos[p] > pos[c]) return false;
  return true;
}

// Kahn's algorithm; among ready messages the one with the smallest id wins.
inline ResolvedOrder topological_order(const CausalDag& dag) {
  std::vector<std::size_t> indeg(dag.size());
  auto later = [&](MessageIndex a, MessageIndex b) { return dag.id(b) < dag.id(a); };
  std::priority_queue<MessageIndex, std::vector<MessageIndex>, decltype(later)> ready(later);
  for (MessageIndex i = 0; i < dag.size(); ++i) {
    indeg[i] = dag.parents(i).size();
    if (indeg[i] == 0) ready.push(i);
  }
  ResolvedOrder out;
  while (!ready.empty()) {
    auto x = ready.top();
    ready.pop();
    out.push_back(x);
    for (auto c : dag.children(x))
      if (--indeg[c] == 0) ready.push(c);
  }
  return out;
}

inline ResolvedOrder order_from_ids(const CausalDag& dag, const std::vector<std::string>& ids) {
  ResolvedOrder out;
  out.reserve(ids.size());
  for (const auto& s : ids) out.push_back(dag.index_of(MessageId{s}));
  positions(dag.size(), out);
  return out;
}

}  // namespace lcc
