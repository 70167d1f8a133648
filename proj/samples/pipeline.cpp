// Provenance level of a datum carried through a chain of readers.

#include <iostream>
#include <vector>

#include "lcc/lcc.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: sample_pipeline SOURCE [HOP...]\n";
    return 2;
  }
  try {
    auto source = lcc::parse_configuration(argv[1]);
    std::vector<lcc::Configuration> hops;
    for (int i = 2; i < argc; ++i) hops.push_back(lcc::parse_configuration(argv[i]));
    std::cout << lcc::class_of(source).name();
    for (const auto& h : hops) std::cout << " -> " << lcc::class_of(h).name();
    auto level = lcc::pipeline_level(source, hops);
    std::cout << "\nlevel: " << level.name() << (level.internal ? " (internal)" : "") << "\n";
  } catch (const lcc::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
