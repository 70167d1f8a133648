#include <gtest/gtest.h>

#include "lcc/enumerate.hpp"
#include "lcc/merge.hpp"
#include "oracles.hpp"

using namespace lcc;

namespace {

// a and b concurrent on object x; c on object y depends on a.
CausalDag small() {
  CausalDag d;
  auto a = d.add_message(MessageId{"a"}, {"x", "s", ObserverId{"n1"}, 0});
  d.add_message(MessageId{"b"}, {"x", "t", ObserverId{"n2"}, 0});
  auto c = d.add_message(MessageId{"c"}, {"y", "s", ObserverId{"n3"}, 1});
  d.add_edge(a, c);
  return d;
}

}  // namespace

TEST(Merge, DivergentOrdersConflictUnderAll) {
  auto d = small();
  View va{Cut(3, {0, 1}), {0, 1}};
  View vb{Cut(3, {0, 1}), {1, 0}};
  auto all = mergeable(va, vb, make_config(ClosureScope::None, OrderScope::All), d);
  EXPECT_EQ(all.kind, MergeOutcome::Kind::Conflict);
  ASSERT_TRUE(all.conflict.has_value());
  EXPECT_EQ(all.conflict->first, 0u);
  EXPECT_EQ(all.conflict->second, 1u);
  auto per = mergeable(va, vb, make_config(ClosureScope::None, OrderScope::PerObject), d);
  EXPECT_EQ(per.kind, MergeOutcome::Kind::Conflict);
  auto triv = mergeable(va, vb, make_config(ClosureScope::None, OrderScope::Trivial), d);
  EXPECT_EQ(triv.kind, MergeOutcome::Kind::Merged);
  EXPECT_EQ(triv.merged.size(), 2u);
}

TEST(Merge, ClosureFailureNamesTheView) {
  auto d = small();
  View va{Cut(3, {0}), {0}};
  View vb{Cut(3, {2}), {2}};
  auto out = mergeable(va, vb, make_config(ClosureScope::Explicit, OrderScope::Trivial), d);
  EXPECT_EQ(out.kind, MergeOutcome::Kind::ClosureFailure);
  EXPECT_EQ(out.failingView, "b");
  ASSERT_EQ(out.closureViolations.size(), 1u);
  EXPECT_EQ(out.closureViolations[0].missingParent, 0u);
  EXPECT_EQ(mergeable(va, vb, make_config(ClosureScope::Object, OrderScope::Trivial), d).kind,
            MergeOutcome::Kind::Merged);
}

TEST(Merge, InvalidViewsThrow) {
  auto d = small();
  View bad{Cut(3, {0, 1}), {0}};
  View ok{Cut(3, {0}), {0}};
  EXPECT_THROW(mergeable(bad, ok, make_config(ClosureScope::None, OrderScope::All), d), Error);
}

// Merged orders extend both inputs within every order class and the DAG.
TEST(Merge, MergedOrderRespectsInputs) {
  std::uint64_t merged = 0;
  for_each_labeled_dag(3, 2, 2, [&](const CausalDag& d) {
    auto fw = oracle::floyd_warshall(d);
    for_each_linear_extension(d, [&](const ResolvedOrder& oa) {
      for_each_linear_extension(d, [&](const ResolvedOrder& ob) {
        for (std::uint64_t ca = 1; ca < 8; ++ca)
          for (std::uint64_t cb = 1; cb < 8; ++cb)
            for (auto o : kOrderScopes) {
              auto target = make_config(ClosureScope::Explicit, o);
              if (!oracle::admissible(d, ClosureScope::Explicit, OrderScope::Trivial, oa, ca) ||
                  !oracle::admissible(d, ClosureScope::Explicit, OrderScope::Trivial, ob, cb))
                continue;
              auto restrict = [&](const ResolvedOrder& ord, std::uint64_t cut) {
                ResolvedOrder r;
                for (auto m : ord)
                  if (cut >> m & 1u) r.push_back(m);
                return r;
              };
              View va{Cut::from_mask(3, ca), restrict(oa, ca)};
              View vb{Cut::from_mask(3, cb), restrict(ob, cb)};
              auto out = mergeable(va, vb, target, d);
              bool disagree = false;
              for (auto x : va.order)
                for (auto y : va.order) {
                  if (x == y || !oracle::same_order_class(d, o, x, y)) continue;
                  auto px = std::find(va.order.begin(), va.order.end(), x);
                  auto py = std::find(va.order.begin(), va.order.end(), y);
                  auto qx = std::find(vb.order.begin(), vb.order.end(), x);
                  auto qy = std::find(vb.order.begin(), vb.order.end(), y);
                  if (qx != vb.order.end() && qy != vb.order.end() && (px < py) != (qx < qy))
                    disagree = true;
                }
              ASSERT_EQ(out.kind == MergeOutcome::Kind::Conflict, disagree);
              if (disagree) continue;
              ++merged;
              ASSERT_EQ(out.merged.size(), Cut::from_mask(3, ca | cb).size());
              auto pos = [&](MessageIndex m) {
                return std::find(out.merged.begin(), out.merged.end(), m) - out.merged.begin();
              };
              for (const auto* v : {&va, &vb})
                for (std::size_t i = 0; i < v->order.size(); ++i)
                  for (std::size_t j = i + 1; j < v->order.size(); ++j)
                    if (oracle::same_order_class(d, o, v->order[i], v->order[j]))
                      EXPECT_LT(pos(v->order[i]), pos(v->order[j]));
              for (auto x : out.merged)
                for (auto y : out.merged)
                  if (fw[x][y]) EXPECT_LT(pos(x), pos(y));
            }
      });
    });
  });
  EXPECT_GT(merged, 0u);
}

TEST(Merge, FrontierClassification) {
  auto cfg = make_config(ClosureScope::None, OrderScope::All);
  EXPECT_EQ(frontier_classify(cfg), FrontierClass::ConditionallyMergeable);
  cfg.f = Selector::computed("max");
  EXPECT_EQ(frontier_classify(cfg), FrontierClass::AlwaysMergeable);
  cfg.f = Selector::computed("lww-arrival");
  EXPECT_EQ(frontier_classify(cfg), FrontierClass::ConditionallyMergeable);
  cfg.o = OrderScope::Trivial;
  EXPECT_EQ(frontier_classify(cfg), FrontierClass::AlwaysMergeable);
  EXPECT_EQ(to_string(FrontierClass::ConditionallyMergeable), "conditionally-mergeable");
}

TEST(Merge, PartitionPolicy) {
  auto d = small();
  View va{Cut(3, {0, 1}), {0, 1}};
  View vb{Cut(3, {0, 1}), {1, 0}};
  auto target = make_config(ClosureScope::None, OrderScope::All);
  auto conflict = mergeable(va, vb, target, d);
  EXPECT_FALSE(partition_decision(conflict, PartitionPolicy::Decline, va, vb, target, d).available);
  auto weak = partition_decision(conflict, PartitionPolicy::WeakenO, va, vb, target, d);
  ASSERT_TRUE(weak.available);
  EXPECT_EQ(weak.mergedAt, OrderScope::Trivial);
  auto merged = mergeable(va, va, target, d);
  EXPECT_THROW(partition_decision(merged, PartitionPolicy::WeakenO, va, vb, target, d), Error);
}
