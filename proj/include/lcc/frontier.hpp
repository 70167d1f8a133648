#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "lcc/config.hpp"
#include "lcc/trace.hpp"

namespace lcc {

struct FrontierSample {
  double tau = 0.0;
  std::size_t classes = 0;
  std::vector<double> perTick;  // mean over observers, ticks warmup..horizon
  double mean = 0.0;
  double perClassMean = 0.0;
};

// A held message stays unresolved for tau ticks after it arrives (zero under
// R=0). At each tick an observer's frontier is the unresolved messages that
// have an unresolved concurrent partner in their resolution class. Classes
// are objects below O(all) and a single class at O(all); at O(trivial) a
// confluent selector resolves without retaining anything.
inline FrontierSample measure_frontier(const Trace& trace, const Configuration& cfg, double tau,
                                       std::int64_t warmup = 0) {
  if (tau < 0.0) throw Error("tau >= 0", "negative resolution window");
  FrontierSample s;
  s.tau = tau;
  const auto& dag = trace.dag;
  std::set<std::string> objects;
  for (MessageIndex m = 0; m < dag.size(); ++m) objects.insert(dag.meta(m).object);
  s.classes = cfg.o == OrderScope::All ? 1 : std::max<std::size_t>(objects.size(), 1);

  const bool none = cfg.r.kind == WaitingBound::Kind::Zero ||
                    (cfg.o == OrderScope::Trivial && is_confluent(cfg.f));
  const double window = none ? 0.0 : tau;
  const std::int64_t horizon = trace.horizon();
  if (trace.observers.empty() || warmup > horizon) return s;

  Reachability reach(dag);
  VisibilityIndex index(trace);
  s.perTick.assign(static_cast<std::size_t>(horizon - warmup + 1), 0.0);
  for (const auto& n : trace.observers) {
    auto arrivals = index.arrivals(n);
    std::vector<std::pair<std::int64_t, MessageIndex>> seq;
    for (MessageIndex m = 0; m < dag.size(); ++m)
      if (arrivals[m]) seq.emplace_back(*arrivals[m], m);
    std::sort(seq.begin(), seq.end());
    std::size_t lo = 0, hi = 0;
    for (std::int64_t t = warmup; t <= horizon; ++t) {
      while (hi < seq.size() && seq[hi].first <= t) ++hi;
      while (lo < hi && static_cast<double>(t - seq[lo].first) >= window) ++lo;
      std::size_t count = 0;
      for (std::size_t i = lo; i < hi; ++i) {
        auto a = seq[i].second;
        for (std::size_t j = lo; j < hi; ++j) {
          auto b = seq[j].second;
          if (i == j) continue;
          bool same = cfg.o == OrderScope::All || dag.meta(a).object == dag.meta(b).object;
          if (same && reach.concurrent(a, b)) {
            ++count;
            break;
          }
        }
      }
      s.perTick[static_cast<std::size_t>(t - warmup)] += static_cast<double>(count);
    }
  }
  double total = 0.0;
  for (auto& v : s.perTick) {
    v /= static_cast<double>(trace.observers.size());
    total += v;
  }
  s.mean = s.perTick.empty() ? 0.0 : total / static_cast<double>(s.perTick.size());
  s.perClassMean = s.mean / static_cast<double>(s.classes);
  return s;
}

}  // namespace lcc
