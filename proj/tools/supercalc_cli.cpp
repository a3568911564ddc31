#include "supercalc/supercalc.h"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace {

std::string command_list() {
  std::string out;
  for (const char* const* n = sc_command_names(); *n; ++n) out += std::string(out.empty() ? "" : ", ") + *n;
  return out;
}

/// Commands that can run on a built-in algebra without a problem file.
bool needs_file(const std::string& command, const std::vector<std::string>& inputs) {
  return !(command == "prolong" && !inputs.empty() && (inputs[0] == "so" || inputs[0] == "sp"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact calculus of odd Poisson structures and odd Laplacians"};
  app.set_version_flag("--version", sc_version());

  std::string command;
  std::vector<std::string> inputs;
  std::string tensor, diffeo, algebra, k, degree;
  bool basis = false, expect_jacobi = false, pretty = false, json = false;

  app.add_option("command", command, "Subcommand: " + command_list())->required();
  app.add_option("inputs", inputs, "Problem file followed by subcommand arguments");
  app.add_option("--tensor", tensor, "Tensor block to use (default: first)");
  app.add_option("--diffeo", diffeo, "Diffeo block to use (default: first)");
  app.add_option("--algebra", algebra, "Algebra block for prolong (default: first)");
  app.add_option("--k", k, "Prolongation index (default: 1)");
  app.add_option("--degree", degree, "Degree bound for killing");
  app.add_flag("--basis", basis, "Include the prolongation basis");
  app.add_flag("--expect-jacobi", expect_jacobi, "Exit with status 2 when Jacobi fails");
  auto* pretty_flag = app.add_flag("--pretty", pretty, "Indented JSON");
  app.add_flag("--json", json, "Compact JSON (default)")->excludes(pretty_flag);
  CLI11_PARSE(app, argc, argv);

  sc_problem* problem = nullptr;
  std::string source;
  std::vector<std::string> args = inputs;
  if (needs_file(command, inputs)) {
    if (inputs.empty()) {
      std::cerr << "supercalc: " << command << " needs a problem file\n";
      return 1;
    }
    if (sc_problem_load(inputs[0].c_str(), &problem) != SC_OK) {
      std::cerr << "supercalc: " << inputs[0] << ": " << sc_last_error() << "\n";
      return 1;
    }
    source = std::filesystem::path(inputs[0]).filename().string();
    args.erase(args.begin());
  }

  std::vector<const char*> arg_ptrs;
  for (const auto& a : args) arg_ptrs.push_back(a.c_str());
  std::vector<const char*> keys, values;
  auto add = [&](const char* key, const std::string& value) {
    if (value.empty()) return;
    keys.push_back(key);
    values.push_back(value.c_str());
  };
  add("tensor", tensor);
  add("diffeo", diffeo);
  add("algebra", algebra);
  add("k", k);
  add("degree", degree);
  static const std::string on = "1";
  if (basis) add("basis", on);
  if (expect_jacobi) add("expect-jacobi", on);

  sc_report* report = nullptr;
  const int status = sc_run(command.c_str(), problem, source.c_str(), arg_ptrs.data(), arg_ptrs.size(), keys.data(),
                            values.data(), keys.size(), pretty ? 1 : 0, &report);
  sc_problem_free(problem);
  if (status != SC_OK && status != SC_VIOLATED) {
    std::cerr << "supercalc: " << command << ": " << sc_last_error() << "\n";
    return 1;
  }
  std::cout << sc_report_json(report);
  sc_report_free(report);
  return status == SC_OK ? 0 : 2;
}
