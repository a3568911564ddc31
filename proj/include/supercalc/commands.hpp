#pragma once

#include "supercalc/problem.hpp"

#include <map>
#include <string>
#include <vector>

namespace supercalc {

struct CommandRequest {
  std::string command;
  std::string source;              // echoed in the report, usually the file name
  std::vector<std::string> args;   // positional arguments after the file
  std::map<std::string, std::string> options;
  bool pretty = false;
};

/// Report status: 0 when the checked properties hold, 2 on a property
/// violation. Input errors are thrown as SupercalcError.
struct CommandResult {
  std::string json;
  int status = 0;
};

/// Subcommands: classify, bracket, jacobi, delta, delta2, modular, potential,
/// transform, conjugate, prolong, killing. problem may be null for prolong
/// on a built-in algebra.
CommandResult run_command(const CommandRequest& request, const ProblemFile* problem);

/// Names accepted by run_command, in help order.
const std::vector<std::string>& command_names();

}  // namespace supercalc
