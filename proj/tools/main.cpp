#include "cli.hpp"

#include <iostream>

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto r = corb::cli::run(args);
  if (!r.output.empty())
    std::cout << r.output << (r.output.back() == '\n' ? "" : "\n");
  if (!r.error.empty())
    std::cerr << r.error << (r.error.back() == '\n' ? "" : "\n");
  return r.status;
}
