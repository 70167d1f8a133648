#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "lcc/causal_dag.hpp"

namespace lcc {

inline std::uint64_t labeled_dag_count(std::size_t n, std::size_t objects, std::size_t sessions) {
  std::uint64_t labels = 1;
  for (std::size_t i = 0; i < n; ++i) labels *= objects * sessions;
  return labels << (n * (n - 1) / 2);
}

// Every DAG on exactly n vertices m0..m(n-1) whose edges run forward in
// index order, under every (object, session) labelling. Vertex i is created
// by its own observer n<i> at createIndex i.
inline void for_each_labeled_dag(std::size_t n, std::size_t objects, std::size_t sessions,
                                 const std::function<void(const CausalDag&)>& fn) {
  if (n == 0 || objects == 0 || sessions == 0)
    throw Error("n, objects, sessions >= 1", "empty enumeration domain");
  std::size_t limit = objects * sessions > 1 ? 4 : 6;
  if (n > limit)
    throw Error("maxN <= 4 (labelled) or <= 6 (unlabelled)", "enumeration bound exceeded");
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) slots.emplace_back(i, j);
  std::uint64_t labelings = 1;
  for (std::size_t i = 0; i < n; ++i) labelings *= objects * sessions;
  for (std::uint64_t em = 0; em < (std::uint64_t{1} << slots.size()); ++em) {
    for (std::uint64_t lab = 0; lab < labelings; ++lab) {
      CausalDag dag;
      std::uint64_t rest = lab;
      for (std::size_t v = 0; v < n; ++v) {
        std::size_t digit = rest % (objects * sessions);
        rest /= objects * sessions;
        MessageMeta meta;
        meta.object = "x" + std::to_string(digit % objects);
        meta.session = "s" + std::to_string(digit / objects);
        meta.creator = ObserverId{"n" + std::to_string(v)};
        meta.createIndex = static_cast<std::int64_t>(v);
        dag.add_message(MessageId{"m" + std::to_string(v)}, meta);
      }
      for (std::size_t e = 0; e < slots.size(); ++e)
        if (em >> e & 1u) dag.add_edge(slots[e].first, slots[e].second);
      fn(dag);
    }
  }
}

inline std::vector<CausalDag> enumerate_labeled_dags(std::size_t n, std::size_t objects = 2,
                                                     std::size_t sessions = 2) {
  std::vector<CausalDag> out;
  for_each_labeled_dag(n, objects, sessions, [&](const CausalDag& d) { out.push_back(d); });
  return out;
}

inline void for_each_permutation(std::size_t n, const std::function<void(const ResolvedOrder&)>& fn) {
  ResolvedOrder ord(n);
  std::iota(ord.begin(), ord.end(), 0);
  do {
    fn(ord);
  } while (std::next_permutation(ord.begin(), ord.end()));
}

inline void for_each_linear_extension(const CausalDag& dag,
                                      const std::function<void(const ResolvedOrder&)>& fn) {
  std::vector<std::size_t> indeg(dag.size());
  for (MessageIndex i = 0; i < dag.size(); ++i) indeg[i] = dag.parents(i).size();
  std::vector<bool> used(dag.size(), false);
  ResolvedOrder prefix;
  std::function<void()> rec = [&]() {
    if (prefix.size() == dag.size()) {
      fn(prefix);
      return;
    }
    for (MessageIndex m = 0; m < dag.size(); ++m) {
      if (used[m] || indeg[m] != 0) continue;
      used[m] = true;
      prefix.push_back(m);
      for (auto c : dag.children(m)) --indeg[c];
      rec();
      for (auto c : dag.children(m)) ++indeg[c];
      prefix.pop_back();
      used[m] = false;
    }
  };
  rec();
}

}  // namespace lcc
