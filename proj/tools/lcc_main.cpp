#include <iostream>

#include "lcc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto r = lcc::cli::run(args);
  if (!r.help.empty()) {
    std::cout << r.help;
    return 0;
  }
  if (r.pretty) {
    std::cout << r.table << r.payload.dump(2) << "\n";
  } else {
    std::cout << r.payload.dump() << "\n";
  }
  if (r.exitCode != 0) std::cerr << "lcc: " << r.payload["error"]["message"].get<std::string>() << "\n";
  return r.exitCode;
}
