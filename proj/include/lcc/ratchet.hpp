#pragma once

#include <string>
#include <vector>

#include "lcc/admissibility.hpp"
#include "lcc/readability.hpp"

namespace lcc {

// A datum re-emitted by a reader: the provenance it can vouch for and the
// strongest class it may claim from then on.
struct MigratedDatum {
  MessageIndex source;
  Cut provenance;
  EquivClass ceiling;
};

inline MigratedDatum migrate(const CausalDag& dag, MessageIndex m0, const Configuration& reader,
                             const ResolvedOrder& ord) {
  if (!is_user_closure(reader.c)) throw Error("user-facing closure", "reader closure must be user-facing");
  return {m0, minimal_admissible_cut(m0, reader.c, reader.o, dag, ord), class_of(reader)};
}

// Provenance the source guarantees but the reader cannot carry forward.
inline Cut migration_loss(const CausalDag& dag, MessageIndex m0, const Configuration& source,
                          const Configuration& reader, const ResolvedOrder& ord) {
  Cut src = minimal_admissible_cut(m0, source.c, source.o, dag, ord);
  Cut kept = migrate(dag, m0, reader, ord).provenance;
  Cut lost(dag.size());
  for (auto m : src.members())
    if (!kept.contains(m)) lost.insert(m);
  return lost;
}

// Weakest class every stage can read: the least upper bound under the
// readability order. On representatives that is the chain minimum of the
// order scopes and the meet of the effective closures. When the meet is
// object+session at trivial order no user configuration realises it and the
// result is flagged internal.
inline EquivClass pipeline_level(const EquivClass& source, const std::vector<EquivClass>& hops) {
  ClosureScope eff = source.eff;
  OrderScope o = source.o;
  for (const auto& h : hops) {
    eff = closure_meet(eff, h.eff);
    o = order_min(o, h.o);
  }
  eff = closure_join(eff, kappa(o));
  for (const auto& k : equivalence_classes(Regime::CausalArbitration))
    if (k.eff == eff && k.o == o) return k;
  return {eff, o, {}, true};
}

inline EquivClass pipeline_level(const Configuration& source, const std::vector<Configuration>& hops) {
  std::vector<EquivClass> hs;
  for (const auto& h : hops) hs.push_back(class_of(h));
  return pipeline_level(class_of(source), hs);
}

}  // namespace lcc
