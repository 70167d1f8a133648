// Two observers three ticks apart fork on one object. Prints what each
// configuration's probe and merge make of it.

#include <iostream>

#include "lcc/lcc.hpp"

int main() {
  auto s = lcc::lightcone_scenario();
  const auto& dag = s.trace.dag;
  std::cout << "messages:";
  for (lcc::MessageIndex m = 0; m < dag.size(); ++m) std::cout << " " << dag.id(m).value;
  std::cout << "\n";

  lcc::VisibilityIndex index(s.trace);
  for (const auto& n : s.trace.observers) {
    auto cut = index.visible_cut(n, s.t2 + s.distance + 1);
    std::cout << n.value << " holds " << cut.size() << " messages at t=" << s.t2 + s.distance + 1 << "\n";
  }

  // Each observer resolves its own write first.
  auto m = *dag.find(lcc::MessageId{"m"});
  auto m1 = *dag.find(lcc::MessageId{"m'"});
  auto m2 = *dag.find(lcc::MessageId{"m''"});
  lcc::Cut all(dag.size());
  for (auto x : {m, m1, m2}) all.insert(x);
  lcc::View a{all, {m, m1, m2}};
  lcc::View b{all, {m, m2, m1}};
  for (const char* text : {"C=explicit,O=trivial", "C=explicit,O=per-object", "C=none,O=all,F=computed:max"}) {
    auto cfg = lcc::parse_configuration(text);
    auto out = lcc::mergeable(a, b, cfg, dag);
    std::cout << lcc::to_string(cfg) << ": " << lcc::to_string(out.kind);
    if (out.conflict) std::cout << " (" << dag.id(out.conflict->first).value << ", "
                                << dag.id(out.conflict->second).value << ")";
    std::cout << ", " << lcc::to_string(lcc::frontier_classify(cfg)) << "\n";
  }
}
