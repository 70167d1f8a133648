#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lcc/admissibility.hpp"
#include "lcc/config.hpp"
#include "lcc/trace.hpp"

namespace lcc {

struct PartitionWindow {
  std::int64_t start = 0;
  std::int64_t end = 0;  // exclusive
  std::set<std::string> group;

  bool separates(const std::string& a, const std::string& b) const {
    return group.count(a) != group.count(b);
  }
  bool overlaps(std::int64_t from, std::int64_t to) const { return start <= to && from < end; }
};

struct ScenarioParams {
  std::size_t observers = 3;
  std::size_t objects = 2;
  std::size_t sessions = 3;
  double writeRate = 0.2;  // expected writes per tick per object
  std::int64_t latency = 3;
  std::int64_t jitter = 0;
  std::vector<PartitionWindow> partitions;
  std::string skewModel = "none";
  std::int64_t horizon = 50;
  std::uint64_t seed = 1;
};

inline std::string observer_name(std::size_t j) { return "n" + std::to_string(j); }

// Each tick: deliveries land, then each observer writes with probability
// writeRate * objects / observers to a uniformly chosen object. A write
// depends on the maximal messages its creator sees and on the latest
// message of its session when that is visible. Copies reach every other
// observer after latency + U{0..jitter} ticks unless a partition separating
// the two is active at any point in flight.
inline Trace generate_execution(const ScenarioParams& p) {
  if (p.observers == 0 || p.objects == 0 || p.sessions == 0)
    throw Error("observers, objects, sessions >= 1", "empty scenario");
  if (p.latency < 1) throw Error("latency >= 1", "link latency must be at least one tick");
  if (p.jitter < 0 || p.horizon < 0 || p.writeRate < 0.0)
    throw Error("non-negative scenario parameters", "negative scenario parameter");
  for (const auto& w : p.partitions)
    if (w.end < w.start) throw Error("partition start <= end", "partition window ends before it starts");

  Trace trace;
  for (std::size_t j = 0; j < p.observers; ++j) trace.add_observer(ObserverId{observer_name(j)});
  std::seed_seq seq{static_cast<std::uint32_t>(p.seed), static_cast<std::uint32_t>(p.seed >> 32)};
  std::mt19937_64 rng(seq);
  std::bernoulli_distribution writes(std::min(1.0, p.writeRate * static_cast<double>(p.objects) /
                                                       static_cast<double>(p.observers)));
  std::uniform_int_distribution<std::size_t> pick_object(0, p.objects - 1);
  std::uniform_int_distribution<std::int64_t> pick_jitter(0, p.jitter);

  const std::size_t cap = p.observers * static_cast<std::size_t>(std::max<std::int64_t>(p.horizon, 1));
  const std::size_t words = (cap + 63) / 64;
  std::vector<std::vector<std::uint64_t>> anc;  // ancestor bitsets per message
  auto is_anc = [&](MessageIndex a, MessageIndex b) { return (anc[b][a / 64] >> (a % 64)) & 1u; };

  std::vector<std::vector<bool>> visible(p.observers);
  std::vector<std::vector<MessageIndex>> frontier(p.observers);
  std::map<std::string, MessageIndex> lastOfSession;
  std::multimap<std::int64_t, std::pair<std::size_t, MessageIndex>> inflight;

  auto see = [&](std::size_t j, MessageIndex m) {
    if (visible[j].size() <= m) visible[j].resize(m + 1, false);
    if (visible[j][m]) return;
    visible[j][m] = true;
    auto& f = frontier[j];
    for (auto x : f)
      if (is_anc(m, x)) return;
    f.erase(std::remove_if(f.begin(), f.end(), [&](MessageIndex x) { return is_anc(x, m); }), f.end());
    f.push_back(m);
  };
  auto sees = [&](std::size_t j, MessageIndex m) { return m < visible[j].size() && visible[j][m]; };

  for (std::int64_t t = 0; t < p.horizon; ++t) {
    for (auto it = inflight.begin(); it != inflight.end() && it->first <= t;) {
      auto [j, m] = it->second;
      trace.deliveries.push_back({t, ObserverId{observer_name(j)}, m, false});
      see(j, m);
      it = inflight.erase(it);
    }
    for (std::size_t j = 0; j < p.observers; ++j) {
      if (!writes(rng)) continue;
      MessageMeta meta;
      meta.object = "x" + std::to_string(pick_object(rng));
      meta.session = "s" + std::to_string(j % p.sessions);
      meta.creator = ObserverId{observer_name(j)};
      meta.createIndex = t;
      MessageIndex m = trace.dag.add_message(MessageId{"m" + std::to_string(trace.dag.size())}, meta);
      anc.emplace_back(words, 0);
      std::vector<MessageIndex> parents = frontier[j];
      auto ls = lastOfSession.find(meta.session);
      if (ls != lastOfSession.end() && sees(j, ls->second) &&
          std::find(parents.begin(), parents.end(), ls->second) == parents.end())
        parents.push_back(ls->second);
      std::sort(parents.begin(), parents.end());
      for (auto q : parents) {
        trace.dag.add_edge(q, m);
        anc[m][q / 64] |= std::uint64_t{1} << (q % 64);
        for (std::size_t w = 0; w < words; ++w) anc[m][w] |= anc[q][w];
      }
      lastOfSession[meta.session] = m;
      see(j, m);
      for (std::size_t k = 0; k < p.observers; ++k) {
        if (k == j) continue;
        std::int64_t arrive = t + p.latency + pick_jitter(rng);
        bool cut = false;
        for (const auto& w : p.partitions)
          if (w.overlaps(t, arrive) && w.separates(observer_name(j), observer_name(k))) cut = true;
        if (!cut && arrive < p.horizon) inflight.emplace(arrive, std::make_pair(k, m));
      }
    }
  }

  // Each observer resolves what it holds in arrival order.
  VisibilityIndex index(trace);
  for (const auto& n : trace.observers) {
    ResolvedOrder ord;
    for (const auto& e : index.events(n))
      if (e.insert) ord.push_back(e.message);
    trace.orders[n] = ord;
  }
  return trace;
}

struct LightconeScenario {
  Trace trace;
  std::int64_t distance = 3;
  std::int64_t t0 = 3;  // both observers hold m
  std::int64_t t1 = 4;  // n1 writes m'
  std::int64_t t2 = 5;  // n2 writes m''
};

// Two observers three ticks apart fork on one object after a common
// ancestor m.
inline LightconeScenario lightcone_scenario() {
  LightconeScenario s;
  auto& tr = s.trace;
  ObserverId n1{"n1"}, n2{"n2"};
  tr.add_observer(n1);
  tr.add_observer(n2);
  auto m = tr.dag.add_message(MessageId{"m"}, {"x", "s1", n1, 0});
  auto m1 = tr.dag.add_message(MessageId{"m'"}, {"x", "s1", n1, s.t1});
  auto m2 = tr.dag.add_message(MessageId{"m''"}, {"x", "s2", n2, s.t2});
  tr.dag.add_edge(m, m1);
  tr.dag.add_edge(m, m2);
  tr.deliveries.push_back({0 + s.distance, n2, m, false});
  tr.deliveries.push_back({s.t1 + s.distance, n2, m1, false});
  tr.deliveries.push_back({s.t2 + s.distance, n1, m2, false});
  return s;
}

enum class ProbeOutcome { Satisfied, Defer, ReportIncomplete, Bottom };

inline std::string to_string(ProbeOutcome o) {
  switch (o) {
    case ProbeOutcome::Satisfied: return "satisfied";
    case ProbeOutcome::Defer: return "defer";
    case ProbeOutcome::ReportIncomplete: return "report-incomplete";
    case ProbeOutcome::Bottom: return "bottom";
  }
  return "?";
}

struct ProbeFlag {
  MessageIndex held;
  MessageIndex missingParent;
  std::int64_t since;
  bool permanent;  // the parent never reaches this observer
};

struct ObserverProbe {
  ObserverId observer;
  std::vector<std::pair<std::int64_t, bool>> closedAt;
  std::vector<ProbeFlag> flags;
  ProbeOutcome outcome = ProbeOutcome::Satisfied;
};

struct ProbeReport {
  std::vector<ObserverProbe> observers;
  bool unsatisfiable = false;
};

// Selectors that can answer from an incomplete state.
inline bool tolerates_incomplete(const Selector& f) {
  switch (f.kind) {
    case Selector::Kind::Multi:
    case Selector::Kind::Anything:
    case Selector::Kind::AnyConcurrent:
    case Selector::Kind::KLatest: return true;
    default: return false;
  }
}

// Tracks, per observer and state change, whether the held messages are
// closed under the configuration's closure. A missing parent that never
// arrives leaves F to defer forever, answer from the incomplete state, or
// return bottom; which one follows from R and F.
inline ProbeReport incompleteness_probe(const Trace& trace, const Configuration& cfg) {
  ProbeReport report;
  VisibilityIndex index(trace);
  for (const auto& n : trace.observers) {
    ObserverProbe op;
    op.observer = n;
    auto arrivals = index.arrivals(n);
    std::set<std::pair<MessageIndex, MessageIndex>> flagged;
    for (auto t : index.change_times(n)) {
      Cut cut = index.visible_cut(n, t);
      auto viol = closure_violations(cut, cfg.c, trace.dag);
      op.closedAt.emplace_back(t, viol.empty());
      for (const auto& v : viol)
        if (flagged.insert({v.message, v.missingParent}).second)
          op.flags.push_back({v.message, v.missingParent, t, !arrivals[v.missingParent].has_value()});
    }
    bool permanent = false;
    for (const auto& f : op.flags) permanent = permanent || f.permanent;
    using K = WaitingBound::Kind;
    auto answer = tolerates_incomplete(cfg.f) ? ProbeOutcome::ReportIncomplete : ProbeOutcome::Bottom;
    if (op.flags.empty()) {
      op.outcome = ProbeOutcome::Satisfied;
    } else if (cfg.r.kind == K::Infinite) {
      op.outcome = ProbeOutcome::Defer;
    } else if (cfg.r.kind == K::Absent) {
      op.outcome = ProbeOutcome::Bottom;
    } else if (cfg.r.kind == K::Delta && !permanent) {
      op.outcome = ProbeOutcome::Defer;
    } else {
      op.outcome = answer;
    }
    report.unsatisfiable = report.unsatisfiable || permanent;
    report.observers.push_back(std::move(op));
  }
  return report;
}

}  // namespace lcc
