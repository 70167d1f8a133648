#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "lcc/causal_dag.hpp"
#include "lcc/config.hpp"

namespace lcc {

// A reported value: the ids of the writes it is drawn from. Every message
// is a write of its own id to its object.
using ValueSet = std::set<std::string>;

// The answers a selector may give from a state.
struct Reportable {
  bool anything = false;
  std::vector<ValueSet> options;

  bool allows(const ValueSet& v) const {
    return anything || std::find(options.begin(), options.end(), v) != options.end();
  }
};

inline ValueSet apply_merge_function(const std::string& fn, const std::vector<std::string>& values) {
  if (!find_merge_function(fn)) throw Error("known merge function", "unknown merge function '" + fn + "'");
  if (values.empty()) return {};
  if (fn == "max") return {*std::max_element(values.begin(), values.end())};
  if (fn == "min") return {*std::min_element(values.begin(), values.end())};
  if (fn == "union") return ValueSet(values.begin(), values.end());
  if (fn == "count") return {std::to_string(values.size())};
  return {values.back()};  // lww-arrival: values arrive in state order
}

// Answers for a read of `object` from the state (held cut, resolution
// order). With no visible write of the object every selector reports the
// empty set.
inline Reportable reportable(const Selector& f, const CausalDag& dag, const Cut& held,
                             const ResolvedOrder& order, const std::string& object) {
  Reportable r;
  if (f.kind == Selector::Kind::Anything) {
    r.anything = true;
    return r;
  }
  std::vector<MessageIndex> writes;  // in resolution order
  for (auto m : order)
    if (held.contains(m) && dag.meta(m).object == object) writes.push_back(m);
  if (writes.empty()) {
    r.options.push_back({});
    return r;
  }
  auto single = [&](MessageIndex m) { return ValueSet{dag.id(m).value}; };
  switch (f.kind) {
    case Selector::Kind::Latest: r.options.push_back(single(writes.back())); break;
    case Selector::Kind::KLatest:
      for (std::size_t i = 0; i < writes.size() && i < static_cast<std::size_t>(f.k); ++i)
        r.options.push_back(single(writes[writes.size() - 1 - i]));
      break;
    case Selector::Kind::AnyConcurrent:
      for (auto w : writes) r.options.push_back(single(w));
      break;
    case Selector::Kind::Computed: {
      std::vector<std::string> values;
      for (auto w : writes) values.push_back(dag.id(w).value);
      r.options.push_back(apply_merge_function(f.fn, values));
      break;
    }
    case Selector::Kind::Multi: {
      ValueSet maximal;
      for (auto w : writes) {
        bool dominated = false;
        for (auto v : writes)
          if (v != w && dag.reaches(w, v)) dominated = true;
        if (!dominated) maximal.insert(dag.id(w).value);
      }
      r.options.push_back(maximal);
      break;
    }
    case Selector::Kind::Anything: break;
  }
  return r;
}

}  // namespace lcc
