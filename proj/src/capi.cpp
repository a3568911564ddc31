#include "supercalc/supercalc.h"

#include "supercalc/commands.hpp"

#include <cstring>
#include <exception>
#include <string>

struct sc_problem {
  supercalc::ProblemFile file;
};

struct sc_report {
  std::string json;
};

namespace {

thread_local std::string last_error;

int fail(int code, const std::string& message) {
  last_error = message;
  return code;
}

/// Runs body and maps exceptions to status codes.
template <class F>
int guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const supercalc::SupercalcError& e) {
    return fail(SC_ERROR_INPUT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SC_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SC_ERROR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* sc_last_error(void) { return last_error.c_str(); }

int sc_problem_parse(const char* text, sc_problem** out) {
  if (!text || !out) return fail(SC_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new sc_problem{supercalc::parse_problem(text)};
    return SC_OK;
  });
}

int sc_problem_load(const char* path, sc_problem** out) {
  if (!path || !out) return fail(SC_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new sc_problem{supercalc::load_problem(path)};
    return SC_OK;
  });
}

void sc_problem_free(sc_problem* problem) { delete problem; }

int sc_expression_normalize(const sc_problem* problem, const char* text, char** out) {
  if (!problem || !text || !out) return fail(SC_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string s = supercalc::parse_expression(text, problem->file.chart).to_string();
    *out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!*out) throw std::bad_alloc();
    std::memcpy(*out, s.c_str(), s.size() + 1);
    return SC_OK;
  });
}

void sc_string_free(char* s) { std::free(s); }

int sc_run(const char* command, const sc_problem* problem, const char* source, const char* const* args, size_t n_args,
           const char* const* option_keys, const char* const* option_values, size_t n_options, int pretty,
           sc_report** out) {
  if (!command || !out) return fail(SC_ERROR_INVALID_ARGUMENT, "null argument");
  if ((n_args && !args) || (n_options && (!option_keys || !option_values)))
    return fail(SC_ERROR_INVALID_ARGUMENT, "null argument array");
  return guarded([&] {
    supercalc::CommandRequest req;
    req.command = command;
    req.source = source ? source : "";
    for (size_t i = 0; i < n_args; ++i) req.args.emplace_back(args[i]);
    for (size_t i = 0; i < n_options; ++i) req.options[option_keys[i]] = option_values[i];
    req.pretty = pretty != 0;
    supercalc::CommandResult res = supercalc::run_command(req, problem ? &problem->file : nullptr);
    *out = new sc_report{std::move(res.json)};
    return res.status == 0 ? SC_OK : SC_VIOLATED;
  });
}

const char* sc_report_json(const sc_report* report) { return report ? report->json.c_str() : ""; }

void sc_report_free(sc_report* report) { delete report; }

const char* const* sc_command_names(void) {
  static const std::vector<const char*> names = [] {
    std::vector<const char*> out;
    for (const std::string& n : supercalc::command_names()) out.push_back(n.c_str());
    out.push_back(nullptr);
    return out;
  }();
  return names.data();
}

const char* sc_version(void) { return "0.1.0"; }

}  // extern "C"
