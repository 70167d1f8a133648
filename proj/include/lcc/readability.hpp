#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lcc/admissibility.hpp"
#include "lcc/config.hpp"
#include "lcc/enumerate.hpp"

namespace lcc {

struct ReadabilityWitness {
  CausalDag dag;
  ResolvedOrder order;
  Cut cut;
  std::string reason;
};

struct ReadabilityVerdict {
  bool readable = false;
  Regime regime = Regime::CausalArbitration;
  std::optional<ReadabilityWitness> witness;
};

// B-data can be read from an A-state: every A-admissible cut is
// B-admissible.
inline bool readable_rule(ClosureScope ca, OrderScope oa, ClosureScope cb, OrderScope ob,
                          Regime regime) {
  return order_leq(ob, oa) && closure_leq(cb, effective_closure(ca, oa, regime));
}

namespace detail {

inline CausalDag two_message_dag(bool sameObject, bool sameSession, bool edge) {
  CausalDag dag;
  dag.add_message(MessageId{"m1"}, {"x0", "s0", ObserverId{"n1"}, 0});
  dag.add_message(MessageId{"m2"},
                  {sameObject ? "x0" : "x1", sameSession ? "s0" : "s1", ObserverId{"n2"}, 1});
  if (edge) dag.add_edge(0, 1);
  return dag;
}

}  // namespace detail

inline ReadabilityVerdict readable(const Configuration& a, const Configuration& b,
                                   Regime regime = Regime::CausalArbitration) {
  ReadabilityVerdict v;
  v.regime = regime;
  v.readable = readable_rule(a.c, a.o, b.c, b.o, regime);
  if (v.readable) return v;

  const bool waive = regime == Regime::Unconstrained;
  ReadabilityWitness w;
  if (!order_leq(b.o, a.o)) {
    // Two unrelated messages in one B-class but in different A-classes.
    w.dag = detail::two_message_dag(a.o == OrderScope::Trivial, false, false);
    w.order = {0, 1};
    w.cut = Cut(2, {1});
    w.reason = "order: m2 held without its " + to_string(b.o) + "-class predecessor m1";
  } else {
    ClosureScope effA = effective_closure(a.c, a.o, regime);
    std::optional<std::pair<bool, bool>> kind;
    for (bool so : {true, false})
      for (bool ss : {true, false}) {
        if (kind) continue;
        auto probe = detail::two_message_dag(so, ss, true);
        if (scope_requires_edge(probe, 0, 1, b.c) && !scope_requires_edge(probe, 0, 1, effA))
          kind = std::make_pair(so, ss);
      }
    if (!kind) throw Error("closure gap", "no uncovered edge kind between the closures");
    w.dag = detail::two_message_dag(kind->first, kind->second, true);
    // Under causal arbitration the parent must precede; otherwise the child
    // goes first so no order class can force the parent in.
    w.order = waive ? ResolvedOrder{1, 0} : ResolvedOrder{0, 1};
    w.cut = minimal_admissible_cut(1, a.c, a.o, w.dag, w.order, waive);
    w.reason = "closure: m2 held without its parent m1, which " + to_string(b.c) +
               " requires and " + to_string(effA) + " does not";
  }
  if (!is_admissible(w.cut, a.c, a.o, w.dag, w.order, waive).admissible ||
      is_admissible(w.cut, b.c, b.o, w.dag, w.order, waive).admissible)
    throw Error("witness separates the configurations", "witness construction failed");
  v.witness = std::move(w);
  return v;
}

inline std::size_t config_slot(ClosureScope c, OrderScope o) {
  std::size_t ci = 0;
  for (std::size_t i = 0; i < 4; ++i)
    if (kUserClosures[i] == c) ci = i;
  if (!is_user_closure(c)) throw Error("user-facing closure", "object+session is internal");
  return ci * 3 + static_cast<std::size_t>(o);
}

inline std::pair<ClosureScope, OrderScope> slot_config(std::size_t slot) {
  return {kUserClosures[slot / 3], kOrderScopes[slot % 3]};
}

// included[a][b]: over every labelled DAG up to maxN vertices and every
// admissible canonical order, Adm(a) is contained in Adm(b).
struct OracleMatrix {
  std::array<std::array<bool, 12>, 12> included{};
  std::uint64_t dags = 0;
  std::uint64_t orders = 0;
};

inline OracleMatrix readability_oracle_matrix(Regime regime, std::size_t maxN) {
  if (maxN == 0 || maxN > 4) throw Error("1 <= maxN <= 4", "oracle bound exceeded");
  OracleMatrix out;
  for (auto& row : out.included) row.fill(true);
  for (std::size_t n = 1; n <= maxN; ++n) {
    for_each_labeled_dag(n, 2, 2, [&](const CausalDag& dag) {
      ++out.dags;
      std::array<std::vector<std::uint64_t>, 4> req;
      for (std::size_t i = 0; i < 4; ++i) req[i] = detail::closure_masks(dag, kUserClosures[i]);
      auto visit = [&](const ResolvedOrder& ord) {
        ++out.orders;
        std::array<std::uint32_t, 12> adm{};
        for (std::size_t oi = 0; oi < 3; ++oi) {
          auto pred = detail::prefix_masks(dag, kOrderScopes[oi], ord);
          for (std::size_t ci = 0; ci < 4; ++ci) {
            detail::AdmissibilityMasks masks{req[ci], pred};
            std::uint32_t bits = 0;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
              if (masks.admissible(mask)) bits |= std::uint32_t{1} << mask;
            adm[ci * 3 + oi] = bits;
          }
        }
        for (std::size_t a = 0; a < 12; ++a)
          for (std::size_t b = 0; b < 12; ++b)
            if (adm[a] & ~adm[b]) out.included[a][b] = false;
      };
      if (regime == Regime::CausalArbitration) for_each_linear_extension(dag, visit);
      else for_each_permutation(dag.size(), visit);
    });
  }
  return out;
}

inline bool readable_oracle(const Configuration& a, const Configuration& b, Regime regime,
                            std::size_t maxN = 4) {
  auto m = readability_oracle_matrix(regime, maxN);
  return m.included[config_slot(a.c, a.o)][config_slot(b.c, b.o)];
}

// A readability class, named by its representative (effective closure, o).
struct EquivClass {
  ClosureScope eff = ClosureScope::None;
  OrderScope o = OrderScope::Trivial;
  std::vector<std::pair<ClosureScope, OrderScope>> members;
  // Reachable only through internal closures; no user configuration lands here.
  bool internal = false;

  std::string name() const { return to_string(eff) + "/" + to_string(o); }
  friend bool operator==(const EquivClass& x, const EquivClass& y) {
    return x.eff == y.eff && x.o == y.o;
  }
};

// x <= y: data produced under x can be read by a y-reader (x is stronger).
inline bool class_leq(const EquivClass& x, const EquivClass& y) {
  return order_leq(y.o, x.o) && closure_leq(y.eff, x.eff);
}

namespace detail {
inline int closure_rank(ClosureScope c) { return static_cast<int>(c); }
}  // namespace detail

inline std::vector<EquivClass> equivalence_classes(Regime regime) {
  std::vector<EquivClass> out;
  for (auto o : kOrderScopes)
    for (auto c : kUserClosures) {
      ClosureScope eff = effective_closure(c, o, regime);
      auto it = std::find_if(out.begin(), out.end(),
                             [&](const EquivClass& k) { return k.eff == eff && k.o == o; });
      if (it == out.end()) {
        out.push_back({eff, o, {}, false});
        it = out.end() - 1;
      }
      it->members.emplace_back(c, o);
    }
  std::sort(out.begin(), out.end(), [](const EquivClass& x, const EquivClass& y) {
    if (x.o != y.o) return static_cast<int>(x.o) < static_cast<int>(y.o);
    return detail::closure_rank(x.eff) < detail::closure_rank(y.eff);
  });
  return out;
}

inline EquivClass class_of(ClosureScope c, OrderScope o, Regime regime = Regime::CausalArbitration) {
  ClosureScope eff = effective_closure(c, o, regime);
  for (const auto& k : equivalence_classes(regime))
    if (k.eff == eff && k.o == o) return k;
  return {eff, o, {}, true};
}

inline EquivClass class_of(const Configuration& cfg, Regime regime = Regime::CausalArbitration) {
  return class_of(cfg.c, cfg.o, regime);
}

struct LatticeDiagram {
  Regime regime = Regime::CausalArbitration;
  std::vector<EquivClass> classes;
  // (stronger, weaker) index pairs with nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> covers;
};

inline LatticeDiagram lattice_covers(Regime regime) {
  LatticeDiagram d;
  d.regime = regime;
  d.classes = equivalence_classes(regime);
  const auto& k = d.classes;
  auto strictly = [&](std::size_t x, std::size_t y) { return x != y && class_leq(k[x], k[y]); };
  for (std::size_t x = 0; x < k.size(); ++x)
    for (std::size_t y = 0; y < k.size(); ++y) {
      if (!strictly(x, y)) continue;
      bool between = false;
      for (std::size_t z = 0; z < k.size() && !between; ++z)
        between = strictly(x, z) && strictly(z, y);
      if (!between) d.covers.emplace_back(x, y);
    }
  return d;
}

inline std::string member_list(const EquivClass& k) {
  std::string s;
  for (const auto& [c, o] : k.members) {
    if (!s.empty()) s += " ";
    s += "(" + to_string(c) + "," + to_string(o) + ")";
  }
  return s;
}

// Strongest class drawn at the bottom.
inline std::string to_dot(const LatticeDiagram& d) {
  std::ostringstream os;
  os << "digraph readability {\n  rankdir=BT;\n  node [shape=box];\n";
  for (const auto& k : d.classes)
    os << "  \"" << k.name() << "\" [label=\"" << k.name() << "\\n" << member_list(k) << "\"];\n";
  for (auto [x, y] : d.covers)
    os << "  \"" << d.classes[x].name() << "\" -> \"" << d.classes[y].name() << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace lcc
