#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lcc/causal_dag.hpp"

namespace lcc {

struct ClockParams {
  double epsilon = 0.0;  // per-clock error bound
  double dMin = 0.0;     // smallest real-time gap of a cross-node edge
};

// Real creation times and node placement for every message.
struct PhysicalExecution {
  CausalDag dag;
  std::vector<double> realTime;
  std::vector<std::string> node;

  void check() const {
    if (realTime.size() != dag.size() || node.size() != dag.size())
      throw Error("times and nodes for every message", "physical execution is incomplete");
  }
};

// Two messages on different nodes, the second created `gap` after and
// depending on the first.
inline PhysicalExecution single_edge(double gap) {
  PhysicalExecution x;
  x.dag.add_message(MessageId{"p"}, {"x", "s", ObserverId{"a"}, 0});
  x.dag.add_message(MessageId{"c"}, {"x", "s", ObserverId{"b"}, 1});
  x.dag.add_edge(0, 1);
  x.realTime = {0.0, gap};
  x.node = {"a", "b"};
  return x;
}

struct ThresholdVerdict {
  bool clean = false;
  double margin = 0.0;  // dMin - 2 epsilon
  std::optional<std::pair<MessageIndex, MessageIndex>> witness;
};

// Timestamp order cannot invert a causal edge when 2 epsilon <= dMin.
inline ThresholdVerdict kappa_clean_threshold(const ClockParams& p) {
  if (p.epsilon < 0.0 || p.dMin < 0.0) throw Error("epsilon, dMin >= 0", "negative clock parameter");
  return {2.0 * p.epsilon <= p.dMin, p.dMin - 2.0 * p.epsilon, std::nullopt};
}

struct GapEdge {
  MessageIndex parent;
  MessageIndex child;
  double gap;
};

inline std::optional<GapEdge> min_cross_node_gap(const PhysicalExecution& x) {
  x.check();
  std::optional<GapEdge> best;
  for (auto [p, c] : x.dag.edges()) {
    if (x.node[p] == x.node[c]) continue;
    double gap = x.realTime[c] - x.realTime[p];
    if (!best || gap < best->gap) best = GapEdge{p, c, gap};
  }
  return best;
}

inline ThresholdVerdict kappa_clean_threshold(double epsilon, const PhysicalExecution& x) {
  auto g = min_cross_node_gap(x);
  if (!g) return {true, 0.0, std::nullopt};
  auto v = kappa_clean_threshold(ClockParams{epsilon, g->gap});
  if (!v.clean) v.witness = std::make_pair(g->parent, g->child);
  return v;
}

// Inversion chance for one edge of gap d under independent uniform errors
// on [-eps, eps].
inline double inversion_probability_uniform(double d, double eps) {
  if (d < 0.0 || eps < 0.0) throw Error("d, epsilon >= 0", "negative gap or error bound");
  if (eps == 0.0) return 0.0;
  double rho = d / (2.0 * eps);
  if (rho >= 1.0) return 0.0;
  return 0.5 * (1.0 - rho) * (1.0 - rho);
}

// Standard normal upper tail.
inline double normal_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// Independent N(0, sigma^2) errors: the difference has deviation sigma*sqrt(2).
inline double inversion_probability_gaussian(double d, double sigma) {
  if (!(sigma > 0.0)) throw Error("sigma > 0", "gaussian error needs sigma > 0");
  return normal_tail(d / (sigma * std::sqrt(2.0)));
}

// Largest epsilon keeping E edges of gap L honest with probability 1-delta,
// via the union bound on uniform inversions.
inline double required_epsilon(double L, double E, double delta) {
  if (!(L > 0.0)) throw Error("L > 0", "latency must be positive");
  if (!(E >= 1.0)) throw Error("E >= 1", "need at least one edge");
  if (!(delta > 0.0)) throw Error("delta > 0", "failure budget must be positive");
  double root = std::sqrt(2.0 * delta / E);
  if (root >= 1.0) throw Error("2 delta < E", "failure budget leaves no constraint");
  return L / (2.0 * (1.0 - root));
}

inline double commit_wait(double epsilon, double dMin) {
  if (epsilon < 0.0 || dMin < 0.0) throw Error("epsilon, dMin >= 0", "negative clock parameter");
  return std::max(0.0, 2.0 * epsilon - dMin);
}

inline double execution_honesty(double E, double p) {
  if (p < 0.0 || p > 1.0) throw Error("0 <= p <= 1", "probability out of range");
  if (E < 0.0) throw Error("E >= 0", "negative edge count");
  return std::pow(1.0 - p, E);
}

struct ErrorModel {
  enum class Kind { Uniform, Gaussian, PerNodeBias };
  Kind kind = Kind::Uniform;
  double epsilon = 0.0;
  double sigma = 0.0;
  std::map<std::string, double> bias;

  static ErrorModel uniform(double eps) { return {Kind::Uniform, eps, 0.0, {}}; }
  static ErrorModel gaussian(double sigma) { return {Kind::Gaussian, 0.0, sigma, {}}; }
  static ErrorModel per_node_bias(std::map<std::string, double> b) {
    return {Kind::PerNodeBias, 0.0, 0.0, std::move(b)};
  }
};

struct EdgeInversionRate {
  MessageIndex parent;
  MessageIndex child;
  bool sameNode = false;
  std::uint64_t inversions = 0;
  std::uint64_t trials = 0;
  double rate = 0.0;
  double standardError = 0.0;
};

inline constexpr std::uint64_t kTrialsPerStream = 4096;

// Timestamps are r(m) + b(m). A strict inversion is ts(child) < ts(parent);
// edges within one node never invert. Each block of 4096 trials draws from
// its own engine seeded by (seed, block), so results do not depend on how
// trials are scheduled.
inline std::vector<EdgeInversionRate> monte_carlo_inversion(const PhysicalExecution& x,
                                                            const ErrorModel& model,
                                                            std::uint64_t trials,
                                                            std::uint64_t seed) {
  x.check();
  if (trials == 0) throw Error("trials >= 1", "no trials requested");
  if (model.kind == ErrorModel::Kind::Uniform && model.epsilon < 0.0)
    throw Error("epsilon >= 0", "negative error bound");
  if (model.kind == ErrorModel::Kind::Gaussian && !(model.sigma > 0.0))
    throw Error("sigma > 0", "gaussian error needs sigma > 0");
  auto edges = x.dag.edges();
  std::vector<EdgeInversionRate> out;
  for (auto [p, c] : edges) out.push_back({p, c, x.node[p] == x.node[c], 0, trials, 0.0, 0.0});

  auto bias_of = [&](MessageIndex m) {
    auto it = model.bias.find(x.node[m]);
    return it == model.bias.end() ? 0.0 : it->second;
  };
  std::vector<double> ts(x.dag.size());
  for (std::uint64_t block = 0; block * kTrialsPerStream < trials; ++block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> uni(-model.epsilon, model.epsilon);
    std::normal_distribution<double> gauss(0.0, model.sigma > 0.0 ? model.sigma : 1.0);
    std::uint64_t end = std::min(trials, (block + 1) * kTrialsPerStream);
    for (std::uint64_t t = block * kTrialsPerStream; t < end; ++t) {
      for (MessageIndex m = 0; m < x.dag.size(); ++m) {
        double b = 0.0;
        switch (model.kind) {
          case ErrorModel::Kind::Uniform: b = model.epsilon > 0.0 ? uni(rng) : 0.0; break;
          case ErrorModel::Kind::Gaussian: b = gauss(rng); break;
          case ErrorModel::Kind::PerNodeBias: b = bias_of(m); break;
        }
        ts[m] = x.realTime[m] + b;
      }
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (!out[e].sameNode && ts[edges[e].second] < ts[edges[e].first]) ++out[e].inversions;
    }
  }
  for (auto& r : out) {
    r.rate = static_cast<double>(r.inversions) / static_cast<double>(trials);
    r.standardError = std::sqrt(r.rate * (1.0 - r.rate) / static_cast<double>(trials));
  }
  return out;
}

}  // namespace lcc
