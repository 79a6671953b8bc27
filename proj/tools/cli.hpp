#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace corb::cli {

struct CommandResult {
  int status = 0; // 0 ok, 1 verification false, 2 usage, 3 internal
  nlohmann::ordered_json payload;
  std::string output; // what goes to stdout
  std::string error;  // what goes to stderr
};

// args exclude the program name
CommandResult run(const std::vector<std::string> &args);

} // namespace corb::cli
