// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "lcc/lcc.hpp"
#include "oracles.hpp"

using namespace lcc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1 -----------------------------------------------------------------------
Outcome readability_rule() {
  auto t0 = Clock::now();
  Outcome out;
  std::ostringstream d;
  for (auto regime : {Regime::CausalArbitration, Regime::Unconstrained}) {
    auto mx = readability_oracle_matrix(regime, 4);
    int agree = 0;
    for (std::size_t a = 0; a < 12; ++a)
      for (std::size_t b = 0; b < 12; ++b) {
        auto [ca, oa] = slot_config(a);
        auto [cb, ob] = slot_config(b);
        bool v = readable(make_config(ca, oa), make_config(cb, ob), regime).readable;
        if (v == mx.included[a][b]) ++agree;
      }
    out.pass = out.pass && agree == 144;
    d << to_string(regime) << " " << agree << "/144 over " << mx.dags << " dags, " << mx.orders
      << " orders; ";
  }
  double s = seconds_since(t0);
  out.pass = out.pass && s < 300.0;
  d << "time " << s << "s";
  out.detail = d.str();
  return out;
}

// 2 -----------------------------------------------------------------------
Outcome class_counts() {
  auto causal = equivalence_classes(Regime::CausalArbitration);
  auto free = equivalence_classes(Regime::Unconstrained);
  std::size_t allMembers = 0;
  for (const auto& k : causal)
    if (k.o == OrderScope::All) allMembers = k.members.size();
  Outcome out;
  out.pass = causal.size() == 8 && free.size() == 12 && allMembers == 4;
  out.detail = "causal " + std::to_string(causal.size()) + ", unconstrained " + std::to_string(free.size()) +
               ", all-scope class holds " + std::to_string(allMembers) + " closures";
  return out;
}

// 3 -----------------------------------------------------------------------
Outcome kappa_shortcut() {
  auto a = make_config(ClosureScope::None, OrderScope::All);
  auto b = make_config(ClosureScope::Explicit, OrderScope::Trivial);
  bool causal = readable(a, b, Regime::CausalArbitration).readable;
  auto product = readable(a, b, Regime::Unconstrained);
  Outcome out;
  out.pass = causal && !product.readable && product.witness.has_value();
  out.detail = std::string("causal ") + (causal ? "readable" : "not readable") + ", product order " +
               (product.readable ? "readable" : "not readable");
  return out;
}

// 4 -----------------------------------------------------------------------
struct RandomViews {
  CausalDag dag;
  View a, b;
};

RandomViews random_views(std::mt19937_64& rng) {
  RandomViews r;
  std::size_t n = std::uniform_int_distribution<std::size_t>(2, 8)(rng);
  std::bernoulli_distribution coin(0.5), sparse(0.25);
  std::uniform_int_distribution<int> obj(0, 1);
  for (std::size_t i = 0; i < n; ++i)
    r.dag.add_message(MessageId{"m" + std::to_string(i)},
                      {"x" + std::to_string(obj(rng)), "s" + std::to_string(obj(rng)),
                       ObserverId{"n" + std::to_string(i)}, static_cast<std::int64_t>(i)});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (sparse(rng)) r.dag.add_edge(i, j);
  for (View* v : {&r.a, &r.b}) {
    v->cut = Cut(n);
    for (std::size_t i = 0; i < n; ++i)
      if (coin(rng)) v->cut.insert(i);
    v->order = v->cut.members();
    std::shuffle(v->order.begin(), v->order.end(), rng);
  }
  return r;
}

bool union_cyclic(const RandomViews& r, const Partition& p) {
  std::vector<std::set<std::size_t>> succ(r.dag.size());
  for (const View* v : {&r.a, &r.b}) {
    std::map<std::size_t, std::size_t> last;
    for (auto m : v->order) {
      auto it = last.find(p.classOf[m]);
      if (it != last.end()) succ[it->second].insert(m);
      last[p.classOf[m]] = m;
    }
  }
  return oracle::has_cycle(succ);
}

Outcome merge() {
  Outcome out;
  std::mt19937_64 rng(20260);
  int agree = 0, conflicts = 0, trivialMerged = 0, confluentMerged = 0;
  const int pairs = 1000;
  for (int i = 0; i < pairs; ++i) {
    auto r = random_views(rng);
    bool ok = true;
    for (auto o : {OrderScope::PerObject, OrderScope::All}) {
      auto p = order_partition(r.dag, o);
      bool found = agreement_check(r.a, r.b, p).has_value();
      ok = ok && found == union_cyclic(r, p);
      auto verdict = mergeable(r.a, r.b, make_config(ClosureScope::None, o), r.dag);
      ok = ok && (verdict.kind == MergeOutcome::Kind::Conflict) == found;
      if (o == OrderScope::All && found) ++conflicts;
    }
    if (ok) ++agree;
    if (mergeable(r.a, r.b, make_config(ClosureScope::None, OrderScope::Trivial), r.dag).kind ==
        MergeOutcome::Kind::Merged)
      ++trivialMerged;
    // A confluent rule orders any held set the same way on every replica.
    auto target = parse_configuration("C=none,O=all,F=computed:max");
    auto canonical = topological_order(r.dag);
    View a{r.a.cut, {}}, b{r.b.cut, {}};
    for (auto m : canonical) {
      if (a.cut.contains(m)) a.order.push_back(m);
      if (b.cut.contains(m)) b.order.push_back(m);
    }
    if (frontier_classify(target) == FrontierClass::AlwaysMergeable &&
        mergeable(a, b, target, r.dag).kind == MergeOutcome::Kind::Merged)
      ++confluentMerged;
  }
  auto two = detail::two_message_dag(true, false, false);
  Cut both(2, {0, 1});
  auto twoCycle = mergeable({both, {0, 1}}, {both, {1, 0}}, make_config(ClosureScope::None, OrderScope::PerObject), two);
  bool witness = twoCycle.kind == MergeOutcome::Kind::Conflict && twoCycle.conflict &&
                 twoCycle.conflict->first == 0 && twoCycle.conflict->second == 1;
  out.pass = agree == pairs && trivialMerged == pairs && confluentMerged == pairs && witness;
  out.detail = "oracle agreement " + std::to_string(agree) + "/" + std::to_string(pairs) + " (" +
               std::to_string(conflicts) + " global conflicts), trivial merged " + std::to_string(trivialMerged) +
               ", confluent merged " + std::to_string(confluentMerged) + ", 2-cycle witness " +
               (witness ? "reproduced" : "missing");
  return out;
}

// 5 -----------------------------------------------------------------------
Outcome ratchet() {
  Outcome out;
  auto classes = equivalence_classes(Regime::CausalArbitration);
  std::vector<EquivClass> completed = classes;
  completed.push_back({ClosureScope::ObjectSession, OrderScope::Trivial, {}, true});
  std::function<bool(const EquivClass&, const EquivClass&)> leq = [](const EquivClass& x, const EquivClass& y) {
    return class_leq(x, y);
  };
  int exact = 0, noLub = 0, completedMatch = 0, mismatch = 0;
  for (const auto& s : classes)
    for (const auto& h1 : classes)
      for (const auto& h2 : classes) {
        auto level = pipeline_level(s, {h1, h2});
        auto lub = oracle::poset_lub(classes, {s, h1, h2}, leq);
        if (lub) {
          if (*lub == level && !level.internal) ++exact;
          else ++mismatch;
        } else {
          ++noLub;
          auto lub9 = oracle::poset_lub(completed, {s, h1, h2}, leq);
          if (lub9 && *lub9 == level && level.internal) ++completedMatch;
          else ++mismatch;
        }
      }
  auto seq = parse_configuration("C=explicit,O=all");
  auto eventual = parse_configuration("C=none,O=trivial");
  auto causal = parse_configuration("C=explicit,O=trivial");
  auto noneAll = parse_configuration("C=none,O=all");
  bool ex1 = pipeline_level(seq, {eventual}) == class_of(eventual);
  bool ex2 = pipeline_level(seq, {causal}) == class_of(causal) &&
             pipeline_level(seq, {causal}).eff == ClosureScope::Explicit;
  bool ex3 = pipeline_level(seq, {noneAll}) == class_of(seq);
  // Provenance on a chain a -> b -> c read at c.
  CausalDag chain;
  for (int i = 0; i < 3; ++i)
    chain.add_message(MessageId{std::string(1, static_cast<char>('a' + i))},
                      {"x" + std::to_string(i), "s", ObserverId{"n" + std::to_string(i)}, i});
  chain.add_edge(0, 1);
  chain.add_edge(1, 2);
  ResolvedOrder ord{0, 1, 2};
  bool ex4 = migration_loss(chain, 2, seq, eventual, ord).size() == 2 &&
             migration_loss(chain, 2, seq, noneAll, ord).empty();
  out.pass = mismatch == 0 && exact + completedMatch == 512 && ex1 && ex2 && ex3 && ex4;
  out.detail = std::to_string(exact) + "/512 triples equal the 8-class LUB; " + std::to_string(noLub) +
               " have no LUB among the 8 classes and equal the LUB after adding object+session/trivial (" +
               std::to_string(completedMatch) + " matched); migration examples " +
               std::to_string(ex1 + ex2 + ex3 + ex4) + "/4";
  return out;
}

// 6 -----------------------------------------------------------------------
Outcome scars() {
  Outcome out;
  std::uint64_t checked = 0, bad = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for_each_labeled_dag(n, 1, 1, [&](const CausalDag& dag) {
      auto reach = oracle::floyd_warshall(dag);
      for_each_permutation(dag.size(), [&](const ResolvedOrder& ord) {
        bool ext = true;
        for (std::size_t i = 0; i < ord.size(); ++i)
          for (std::size_t j = i + 1; j < ord.size(); ++j)
            if (reach[ord[j]][ord[i]]) ext = false;
        ++checked;
        if (scar_scan(dag, ord).empty() != ext) ++bad;
      });
    });

  std::uint64_t maps = 0, wrong = 0;
  auto sequences = [](std::size_t events) {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> cur;
    std::vector<bool> used(events, false);
    std::function<void()> rec = [&]() {
      out.push_back(cur);
      for (std::size_t e = 0; e < events; ++e) {
        if (used[e]) continue;
        used[e] = true;
        cur.push_back("e" + std::to_string(e));
        rec();
        cur.pop_back();
        used[e] = false;
      }
    };
    rec();
    return out;
  };
  auto check = [&](const std::vector<std::vector<std::string>>& seqs) {
    CommitMap cm;
    for (std::size_t k = 0; k < seqs.size(); ++k)
      for (const auto& e : seqs[k]) cm[ObserverId{"n" + std::to_string(k)}].push_back(MessageId{e});
    auto cyc = frozen_cycle_detect(cm);
    bool expect = oracle::union_of_sequences_cyclic(seqs);
    ++maps;
    if (cyc.has_value() != expect) {
      ++wrong;
      return;
    }
    if (!cyc) return;
    // Every step of the reported cycle is committed by some observer.
    for (std::size_t i = 0; i < cyc->size(); ++i) {
      const auto& x = (*cyc)[i].value;
      const auto& y = (*cyc)[(i + 1) % cyc->size()].value;
      bool step = false;
      for (const auto& s : seqs) {
        auto px = std::find(s.begin(), s.end(), x), py = std::find(s.begin(), s.end(), y);
        if (px != s.end() && py != s.end() && px < py) step = true;
      }
      if (!step) {
        ++wrong;
        return;
      }
    }
  };
  auto five = sequences(5);
  for (const auto& s1 : five)
    for (const auto& s2 : five) check({s1, s2});
  auto four = sequences(4);
  for (const auto& s1 : four)
    for (const auto& s2 : four)
      for (const auto& s3 : four) check({s1, s2, s3});
  out.pass = bad == 0 && wrong == 0;
  out.detail = "scar scan " + std::to_string(checked - bad) + "/" + std::to_string(checked) +
               " orders; frozen cycles " + std::to_string(maps - wrong) + "/" + std::to_string(maps) + " commit maps";
  return out;
}

// 7 -----------------------------------------------------------------------
Outcome detection() {
  Outcome out;
  using Resolver = std::function<std::string(const RetainedState&, const std::vector<MessageId>&)>;
  std::vector<Resolver> resolvers = {
      [](const RetainedState& s, const std::vector<MessageId>&) {
        std::string r;
        for (const auto& m : s.seen) r += m.value + ";";
        return r;
      },
      [](const RetainedState& s, const std::vector<MessageId>&) {
        std::string r;
        for (const auto& [p, c] : s.edges) r += p.value + ">" + c.value + ";";
        return r;
      },
      // Topological order of what is retained, smallest id first.
      [](const RetainedState& s, const std::vector<MessageId>&) {
        CausalDag d;
        int i = 0;
        for (const auto& m : s.seen) d.add_message(m, {"x", "s", ObserverId{m.value}, i++});
        for (const auto& [p, c] : s.edges) d.add_edge(d.index_of(p), d.index_of(c));
        std::string r;
        for (auto m : topological_order(d)) r += d.id(m).value + ";";
        return r;
      },
      // Scar detector over retained edges and the stored order.
      [](const RetainedState& s, const std::vector<MessageId>& stored) {
        for (std::size_t i = 0; i < stored.size(); ++i)
          for (std::size_t j = i + 1; j < stored.size(); ++j)
            if (s.edges.count({stored[j], stored[i]})) return std::string("scar");
        return std::string("clean");
      }};
  auto rc = retention_counterexample();
  auto dc = detection_counterexample();
  bool histories = retain(rc.g) != retain(rc.gPrime) && retain(dc.g1) != retain(dc.g2);
  bool equalStates = rc.retained == rc.retainedPrime && dc.retained1 == dc.retained2;
  int same = 0;
  std::vector<MessageId> none;
  for (const auto& f : resolvers) {
    if (f(rc.retained, none) == f(rc.retainedPrime, none)) ++same;
    if (f(dc.retained1, dc.stored) == f(dc.retained2, dc.stored)) ++same;
  }
  // The stored order is a scar in one history and clean in the other.
  bool differs = !scar_scan(dc.g1, order_of_ids(dc.g1, dc.stored)).empty() &&
                 scar_scan(dc.g2, order_of_ids(dc.g2, dc.stored)).empty();
  out.pass = histories && equalStates && differs && same == static_cast<int>(2 * resolvers.size());
  out.detail = std::string("retained states ") + (equalStates ? "equal" : "differ") + ", " + std::to_string(same) +
               "/" + std::to_string(2 * resolvers.size()) + " resolver outputs identical";
  return out;
}

// 8 -----------------------------------------------------------------------
Outcome clocks() {
  auto t0 = Clock::now();
  Outcome out;
  std::ostringstream d;
  const double L = 10.0;
  double eps = required_epsilon(L, 1e6, 1e-6);
  bool bound = std::round(eps / L * 100.0) == 50.0;
  d << "required eps " << eps / L << "L; ";
  int within = 0;
  const double e = 1.0;
  for (double rho : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    auto mc = monte_carlo_inversion(single_edge(rho * 2.0 * e), ErrorModel::uniform(e), 1000000, 42);
    double p = inversion_probability_uniform(rho * 2.0 * e, e);
    double se = std::sqrt(p * (1.0 - p) / 1e6);
    bool ok = rho >= 1.0 ? mc[0].inversions == 0 : std::abs(mc[0].rate - p) <= 3.0 * se;
    if (ok) ++within;
    d << "rho " << rho << ": " << mc[0].rate << " vs " << p << "; ";
  }
  // Worst case: every node biased by +-eps, each cross-node gap at least 2 eps.
  std::mt19937_64 rng(7);
  std::uint64_t inversions = 0;
  for (int trial = 0; trial < 200; ++trial) {
    PhysicalExecution x;
    const int n = 6;
    double t = 0.0;
    for (int i = 0; i < n; ++i) {
      x.dag.add_message(MessageId{"m" + std::to_string(i)}, {"x", "s", ObserverId{"n" + std::to_string(i % 3)}, i});
      x.node.push_back("n" + std::to_string(i % 3));
      t += 2.0 * e + std::uniform_real_distribution<double>(0.0, 1.0)(rng) * (trial % 2);
      x.realTime.push_back(t);
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::bernoulli_distribution(0.5)(rng)) x.dag.add_edge(i, j);
    if (!kappa_clean_threshold(e, x).clean) continue;
    for (int mask = 0; mask < 8; ++mask) {
      std::map<std::string, double> bias;
      for (int k = 0; k < 3; ++k) bias["n" + std::to_string(k)] = (mask >> k) & 1 ? e : -e;
      for (const auto& r : monte_carlo_inversion(x, ErrorModel::per_node_bias(bias), 1, 1)) inversions += r.inversions;
    }
  }
  double s = seconds_since(t0);
  out.pass = bound && within == 5 && inversions == 0 && s < 60.0;
  d << "worst-case inversions " << inversions << "; time " << s << "s";
  out.detail = d.str();
  return out;
}

// 9 -----------------------------------------------------------------------
Outcome commit_wait_law() {
  Outcome out;
  int ok = 0, total = 0;
  for (double eps : {0.0, 0.5, 1.0, 5.0})
    for (double dMin : {0.0, 1.0, 2.0, 10.0, 20.0}) {
      ++total;
      double w = commit_wait(eps, dMin);
      bool expect = 2.0 * eps <= dMin ? w == 0.0 : true;
      if (dMin == 0.0) expect = expect && w == 2.0 * eps;
      if (expect) ++ok;
    }
  bool example = commit_wait(5.0, 4.0) == 6.0;
  out.pass = ok == total && example;
  out.detail = std::to_string(ok) + "/" + std::to_string(total) + " grid points, 2eps=10 dMin=4 -> " +
               std::to_string(commit_wait(5.0, 4.0));
  return out;
}

// 10 ----------------------------------------------------------------------
Outcome frontier() {
  Outcome out;
  ScenarioParams p;
  p.observers = 8;
  p.objects = 2;
  p.sessions = 4;
  p.writeRate = 0.2;
  p.latency = 5;
  p.jitter = 2;
  p.horizon = 400;
  p.seed = 11;
  auto trace = generate_execution(p);
  auto cfg = parse_configuration("C=explicit,O=per-object");
  std::vector<double> x, y;
  for (double tau : {2.0, 4.0, 6.0, 8.0, 10.0}) {
    x.push_back(p.writeRate * tau);
    y.push_back(measure_frontier(trace, cfg, tau, 50).perClassMean);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / x.size();
    my += y[i] / y.size();
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  double slope = sxy / sxx;
  double r2 = syy == 0 ? 0 : sxy * sxy / (sxx * syy);
  auto zeroR = cfg;
  zeroR.r = WaitingBound::zero();
  auto confluent = parse_configuration("C=explicit,O=trivial,F=computed:max");
  double z1 = measure_frontier(trace, zeroR, 10.0, 50).mean;
  double z2 = measure_frontier(trace, confluent, 10.0, 50).mean;
  out.pass = slope > 0 && r2 >= 0.9 && z1 == 0.0 && z2 == 0.0;
  std::ostringstream d;
  d << "slope " << slope << ", R^2 " << r2 << " over " << trace.dag.size() << " messages; R=0 mean " << z1
    << ", trivial+confluent mean " << z2;
  out.detail = d.str();
  return out;
}

// 11 ----------------------------------------------------------------------
Outcome globality() {
  Outcome out;
  CausalDag dag;
  const char* labels[][2] = {{"x", "s"}, {"y", "t"}, {"x", "t"}, {"y", "s"}, {"z", "u"}};
  for (int i = 0; i < 5; ++i)
    dag.add_message(MessageId{"m" + std::to_string(i)}, {labels[i][0], labels[i][1], ObserverId{"n"}, i});
  ResolvedOrder ord{0, 1, 2, 3, 4};
  auto all = co_class_graph({scope_from_order(dag, OrderScope::All, ord)});
  bool complete = all.complete() && realizes_total_order({scope_from_order(dag, OrderScope::All, ord)}, ord);

  // a(x,s) and b(y,t) share neither an object nor a session.
  CausalDag pair;
  pair.add_message(MessageId{"a"}, {"x", "s", ObserverId{"n"}, 0});
  pair.add_message(MessageId{"b"}, {"y", "t", ObserverId{"n"}, 1});
  ResolvedOrder po{0, 1};
  std::vector<ScopeInstance> stack{scope_from_order(pair, OrderScope::PerObject, po), session_scope(pair, po)};
  auto g = co_class_graph(stack);
  bool crossCut = !g.edge(0, 1) && !realizes_total_order(stack, {0, 1}) && !realizes_total_order(stack, {1, 0}) &&
                  !find_realizing_order(stack).has_value();
  out.pass = complete && crossCut;
  out.detail = std::string("all-scope graph ") + (complete ? "complete" : "incomplete") + ", cross-cutting pair " +
               (crossCut ? "left unordered" : "ordered");
  return out;
}

// 12 ----------------------------------------------------------------------
Outcome burckhardt() {
  auto t0 = Clock::now();
  Outcome out;
  int held = 0;
  std::uint64_t runs = 0;
  std::string firstFailure;
  for (auto atom : kSafetyAtoms) {
    auto r = per_axiom_check(atom, 3);
    runs += r.executions;
    if (r.holds) ++held;
    else if (firstFailure.empty()) firstFailure = r.counterexample;
  }
  auto causal = phi(parse_predicate("vis=causal,ar=none,rval=latest"));
  auto sequential = phi(parse_predicate("vis=causal,ar=all,single,rval=latest"));
  auto rt = phi(parse_predicate("vis=causal,ar=all,single,rt"));
  bool row32 = causal.config && name_lookup(*causal.config).index == 32;
  bool row38 = sequential.config && name_lookup(*sequential.config).index == 38;
  bool rejected = rt.rejected() && rt.verdict == "composite of two message-passing systems";
  int atoms = static_cast<int>(std::size(kSafetyAtoms));
  out.pass = held == atoms && row32 && row38 && rejected;
  std::ostringstream d;
  d << held << "/" << atoms << " atoms over " << runs << " executions; causal -> row "
    << (row32 ? "32" : "?") << ", sequential -> row " << (row38 ? "38" : "?") << ", rt "
    << (rejected ? "rejected" : "accepted") << "; time " << seconds_since(t0) << "s";
  if (!firstFailure.empty()) d << "; " << firstFailure;
  out.detail = d.str();
  return out;
}

// 13 ----------------------------------------------------------------------
Outcome glossary_rows() {
  Outcome out;
  const auto& rows = glossary();
  auto row = [&](int i) { return rows.at(static_cast<std::size_t>(i - 1)); };
  auto r1 = row(1), r32 = row(32), r38 = row(38);
  bool quoted = r1.c == ClosureScope::None && r1.o == OrderScope::Trivial && r1.r == WaitingBound::Kind::Absent &&
                r1.name == "No guarantees" && r1.vvModel == "Weak consistency" && r1.example == "UDP, unreliable mail" &&
                r32.c == ClosureScope::Explicit && r32.o == OrderScope::Trivial &&
                r32.r == WaitingBound::Kind::Infinite && r32.name == "Causal consistency" &&
                r38.c == ClosureScope::Explicit && r38.o == OrderScope::All && r38.r == WaitingBound::Kind::Infinite &&
                r38.name == "Sequential consistency" && r38.vvModel == "Sequential" && r38.example == "ZooKeeper";
  // Every raw combination lands on a row; the R=0 ones below O(all) share.
  int raw = 0, degenerate = 0;
  std::set<int> hit;
  const WaitingBound rs[] = {WaitingBound::absent(), WaitingBound::bounded(1.0, DeltaUnit::WallClock),
                             WaitingBound::infinite(), WaitingBound::zero()};
  for (auto c : kUserClosures)
    for (auto o : kOrderScopes)
      for (const auto& r : rs) {
        auto cfg = make_config(c, o);
        cfg.r = r;
        const auto& g = name_lookup(cfg);
        ++raw;
        if (g.o != o) ++degenerate;
        hit.insert(g.index);
      }
  out.pass = rows.size() == 40 && raw == kRawCombinations && raw == 48 && degenerate == 8 &&
             kDegenerateCombinations == 8 && hit.size() == 40 && quoted && glossary_checksum() == kGlossaryChecksum;
  out.detail = std::to_string(rows.size()) + " rows, " + std::to_string(raw) + " raw, " + std::to_string(degenerate) +
               " degenerate, rows 1/32/38 " + (quoted ? "verbatim" : "differ");
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion all[] = {
      {1, "readability rule matches oracle", readability_rule},
      {2, "class counts", class_counts},
      {3, "kappa shortcut", kappa_shortcut},
      {4, "merge agreement", merge},
      {5, "ratchet pipeline level", ratchet},
      {6, "scars and frozen cycles", scars},
      {7, "detection equals prevention", detection},
      {8, "clock bounds", clocks},
      {9, "commit wait", commit_wait_law},
      {10, "frontier retention", frontier},
      {11, "globality", globality},
      {12, "axiom translation", burckhardt},
      {13, "glossary", glossary_rows},
  };
  int failures = 0;
  for (const auto& c : all) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2d %s: %s (%s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
