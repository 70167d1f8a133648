#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lcc/causal_dag.hpp"
#include "lcc/config.hpp"

namespace lcc {

// Order classes as indices, with a printable name per class.
struct Partition {
  std::vector<std::size_t> classOf;
  std::vector<std::string> names;

  bool same_class(MessageIndex a, MessageIndex b) const { return classOf.at(a) == classOf.at(b); }
};

inline Partition order_partition(const CausalDag& dag, OrderScope o) {
  Partition p;
  p.classOf.resize(dag.size());
  std::map<std::string, std::size_t> ids;
  for (MessageIndex m = 0; m < dag.size(); ++m) {
    std::string name;
    switch (o) {
      case OrderScope::Trivial: name = "msg:" + dag.id(m).value; break;
      case OrderScope::PerObject: name = "obj:" + dag.meta(m).object; break;
      case OrderScope::All: name = "all"; break;
    }
    auto [it, fresh] = ids.emplace(name, p.names.size());
    if (fresh) p.names.push_back(name);
    p.classOf[m] = it->second;
  }
  return p;
}

struct ClosureViolation {
  MessageIndex message;
  MessageIndex missingParent;
};

struct PrefixViolation {
  std::string orderClass;
  MessageIndex held;
  MessageIndex missingPredecessor;
};

struct AdmissibilityVerdict {
  bool admissible = true;
  std::vector<ClosureViolation> closureViolations;
  std::vector<PrefixViolation> prefixViolations;
};

// Closure obligations of the cut that it fails to meet.
inline std::vector<ClosureViolation> closure_violations(const Cut& cut, ClosureScope c,
                                                        const CausalDag& dag) {
  std::vector<ClosureViolation> out;
  for (auto m : cut.members())
    for (auto p : filter_parents(dag, m, c))
      if (!cut.contains(p)) out.push_back({m, p});
  return out;
}

namespace detail {

inline void check_canonical_order(const CausalDag& dag, const ResolvedOrder& ord, bool waive) {
  if (!is_permutation_of(dag, ord))
    throw Error("canonical order covers the dag", "canonical order is not a permutation of the dag");
  if (!waive && !is_linear_extension(dag, ord))
    throw Error("canonical order is a linear extension",
                "canonical order is not a linear extension of the dag");
}

// Per-message obligations as bit masks: closure parents and class
// predecessors. A mask is admissible when every member's obligations lie
// inside it.
struct AdmissibilityMasks {
  std::vector<std::uint64_t> req;
  std::vector<std::uint64_t> pred;

  bool admissible(std::uint64_t mask) const {
    for (std::size_t m = 0; m < req.size(); ++m)
      if ((mask >> m & 1u) && ((req[m] | pred[m]) & ~mask)) return false;
    return true;
  }
};

inline std::vector<std::uint64_t> closure_masks(const CausalDag& dag, ClosureScope c) {
  std::vector<std::uint64_t> req(dag.size(), 0);
  for (MessageIndex m = 0; m < dag.size(); ++m)
    for (auto p : filter_parents(dag, m, c)) req[m] |= std::uint64_t{1} << p;
  return req;
}

inline std::vector<std::uint64_t> prefix_masks(const CausalDag& dag, OrderScope o,
                                               const ResolvedOrder& ord) {
  std::vector<std::uint64_t> pred(dag.size(), 0);
  auto part = order_partition(dag, o);
  for (std::size_t i = 0; i < ord.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (part.same_class(ord[i], ord[j])) pred[ord[i]] |= std::uint64_t{1} << ord[j];
  return pred;
}

inline AdmissibilityMasks make_masks(const CausalDag& dag, ClosureScope c, OrderScope o,
                                     const ResolvedOrder& ord) {
  if (dag.size() > 64) throw Error("at most 64 messages", "mask form needs <= 64 messages");
  return {closure_masks(dag, c), prefix_masks(dag, o, ord)};
}

}  // namespace detail

inline AdmissibilityVerdict is_admissible(const Cut& cut, ClosureScope c, OrderScope o,
                                          const CausalDag& dag, const ResolvedOrder& ord,
                                          bool waiveLinearExtension = false) {
  if (cut.universe() != dag.size()) throw Error("cut over dag", "cut is over a different dag");
  detail::check_canonical_order(dag, ord, waiveLinearExtension);
  AdmissibilityVerdict v;
  for (auto m : cut.members())
    for (auto p : filter_parents(dag, m, c))
      if (!cut.contains(p)) v.closureViolations.push_back({m, p});
  auto part = order_partition(dag, o);
  if (o != OrderScope::Trivial) {
    for (std::size_t i = 0; i < ord.size(); ++i) {
      if (!cut.contains(ord[i])) continue;
      for (std::size_t j = 0; j < i; ++j)
        if (part.same_class(ord[i], ord[j]) && !cut.contains(ord[j]))
          v.prefixViolations.push_back({part.names[part.classOf[ord[i]]], ord[i], ord[j]});
    }
  }
  v.admissible = v.closureViolations.empty() && v.prefixViolations.empty();
  return v;
}

// Least (c,o)-admissible cut containing m.
inline Cut minimal_admissible_cut(MessageIndex m, ClosureScope c, OrderScope o,
                                  const CausalDag& dag, const ResolvedOrder& ord,
                                  bool waiveLinearExtension = false) {
  dag.check_index(m);
  detail::check_canonical_order(dag, ord, waiveLinearExtension);
  auto pos = positions(dag.size(), ord);
  auto part = order_partition(dag, o);
  Cut cut(dag.size());
  std::vector<MessageIndex> work{m};
  cut.insert(m);
  auto add = [&](MessageIndex x) {
    if (!cut.contains(x)) {
      cut.insert(x);
      work.push_back(x);
    }
  };
  while (!work.empty()) {
    auto x = work.back();
    work.pop_back();
    for (auto p : filter_parents(dag, x, c)) add(p);
    if (o == OrderScope::Trivial) continue;
    for (std::size_t j = 0; j < pos[x]; ++j)
      if (part.same_class(ord[j], x)) add(ord[j]);
  }
  return cut;
}

inline constexpr std::size_t kMaxEnumerated = 12;

// Every admissible cut, in increasing mask order.
inline std::vector<Cut> enumerate_admissible(const CausalDag& dag, ClosureScope c, OrderScope o,
                                             const ResolvedOrder& ord,
                                             bool waiveLinearExtension = false) {
  if (dag.size() > kMaxEnumerated)
    throw Error("at most 12 messages", "enumeration bounded at 12 messages");
  detail::check_canonical_order(dag, ord, waiveLinearExtension);
  auto masks = detail::make_masks(dag, c, o, ord);
  std::vector<Cut> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << dag.size()); ++mask)
    if (masks.admissible(mask)) out.push_back(Cut::from_mask(dag.size(), mask));
  return out;
}

}  // namespace lcc
