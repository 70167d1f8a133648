#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lcc/causal_dag.hpp"

namespace lcc {

struct Delivery {
  std::int64_t time = 0;
  ObserverId observer;
  MessageIndex message = 0;
  // Retractions are never produced by the harness; they exist so malformed
  // inputs can be represented and rejected.
  bool retract = false;
};

struct Trace {
  CausalDag dag;
  std::vector<ObserverId> observers;
  std::vector<Delivery> deliveries;
  std::map<ObserverId, ResolvedOrder> orders;

  bool has_observer(const ObserverId& n) const {
    return std::find(observers.begin(), observers.end(), n) != observers.end();
  }
  void add_observer(const ObserverId& n) {
    if (!has_observer(n)) observers.push_back(n);
  }
  void check_observer(const ObserverId& n) const {
    if (!has_observer(n)) throw Error("known observer", "unknown observer '" + n.value + "'");
  }
  std::int64_t horizon() const {
    std::int64_t h = 0;
    for (MessageIndex m = 0; m < dag.size(); ++m) h = std::max(h, dag.meta(m).createIndex);
    for (const auto& d : deliveries) h = std::max(h, d.time);
    return h;
  }
};

// Per-observer event lists sorted by time; creations sort after deliveries
// that share their tick.
class VisibilityIndex {
 public:
  struct Event {
    std::int64_t time;
    int rank;  // 0 delivery/retract, 1 creation
    MessageIndex message;
    bool insert;
  };

  explicit VisibilityIndex(const Trace& trace) : trace_(&trace) {
    for (const auto& n : trace.observers) events_[n];
    for (MessageIndex m = 0; m < trace.dag.size(); ++m) {
      const auto& meta = trace.dag.meta(m);
      auto it = events_.find(meta.creator);
      if (it == events_.end())
        throw Error("known observer", "creator '" + meta.creator.value + "' of '" +
                                          trace.dag.id(m).value + "' is not an observer");
      it->second.push_back({meta.createIndex, 1, m, true});
    }
    for (const auto& d : trace.deliveries) {
      trace.dag.check_index(d.message);
      auto it = events_.find(d.observer);
      if (it == events_.end())
        throw Error("known observer", "delivery to unknown observer '" + d.observer.value + "'");
      it->second.push_back({d.time, 0, d.message, !d.retract});
    }
    for (auto& [n, evs] : events_)
      std::stable_sort(evs.begin(), evs.end(), [](const Event& a, const Event& b) {
        return a.time != b.time ? a.time < b.time : a.rank < b.rank;
      });
  }

  const std::vector<Event>& events(const ObserverId& n) const {
    auto it = events_.find(n);
    if (it == events_.end()) throw Error("known observer", "unknown observer '" + n.value + "'");
    return it->second;
  }

  Cut visible_cut(const ObserverId& n, std::int64_t t) const {
    Cut cut(trace_->dag.size());
    for (const auto& e : events(n)) {
      if (e.time > t) break;
      if (e.insert) cut.insert(e.message);
      else cut.erase(e.message);
    }
    return cut;
  }

  // Earliest time each message becomes visible to n.
  std::vector<std::optional<std::int64_t>> arrivals(const ObserverId& n) const {
    std::vector<std::optional<std::int64_t>> out(trace_->dag.size());
    for (const auto& e : events(n))
      if (e.insert && !out[e.message]) out[e.message] = e.time;
    return out;
  }

  // Distinct times at which n's state may change.
  std::vector<std::int64_t> change_times(const ObserverId& n) const {
    std::vector<std::int64_t> ts;
    for (const auto& e : events(n))
      if (ts.empty() || ts.back() != e.time) ts.push_back(e.time);
    return ts;
  }

 private:
  const Trace* trace_;
  std::map<ObserverId, std::vector<Event>> events_;
};

// Messages delivered to n at time <= t plus n's own creations by t.
inline Cut visible_cut(const Trace& trace, const ObserverId& n, std::int64_t t) {
  trace.check_observer(n);
  return VisibilityIndex(trace).visible_cut(n, t);
}

struct AxiomViolation {
  int axiom = 0;
  MessageId message;
  ObserverId observer;
  std::string detail;
};

inline std::vector<AxiomViolation> validate_axioms(const Trace& trace) {
  std::vector<AxiomViolation> out;
  const auto& dag = trace.dag;
  VisibilityIndex index(trace);

  // 1: visibility never shrinks.
  for (const auto& n : trace.observers) {
    Cut held(dag.size());
    for (const auto& e : index.events(n)) {
      if (e.insert) {
        held.insert(e.message);
      } else if (held.contains(e.message)) {
        out.push_back({1, dag.id(e.message), n,
                       "retracted at time " + std::to_string(e.time)});
        held.erase(e.message);
      }
    }
  }

  for (MessageIndex m = 0; m < dag.size(); ++m) {
    const auto& meta = dag.meta(m);
    // 2: the creator holds m from its createIndex on, and not before.
    for (const auto& e : index.events(meta.creator)) {
      if (e.message != m || e.rank != 0) continue;
      if (e.insert && e.time < meta.createIndex)
        out.push_back({2, dag.id(m), meta.creator,
                       "delivered to its creator before creation"});
      if (!e.insert && e.time >= meta.createIndex)
        out.push_back({2, dag.id(m), meta.creator, "creator loses its own message"});
    }

    // 3: parents were seen at creation.
    Cut seen = index.visible_cut(meta.creator, meta.createIndex);
    for (auto p : dag.parents(m))
      if (!seen.contains(p))
        out.push_back({3, dag.id(m), meta.creator,
                       "parent '" + dag.id(p).value + "' not visible at creation"});
  }
  return out;
}

}  // namespace lcc
