#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "supercalc/supercalc.h"

#include <string>

TEST_CASE("problem handles and normalisation") {
  sc_problem* p = nullptr;
  REQUIRE(sc_problem_parse("[chart]\neven = x\nodd = t\n[tensor E]\npreset = darboux\n", &p) == SC_OK);
  char* text = nullptr;
  REQUIRE(sc_expression_normalize(p, "t*x + x*t", &text) == SC_OK);
  CHECK(std::string(text) == "2*x*t");
  sc_string_free(text);
  CHECK(sc_expression_normalize(p, "x y", &text) == SC_ERROR_INPUT);
  CHECK(std::string(sc_last_error()).find("'*'") != std::string::npos);
  sc_problem_free(p);
}

TEST_CASE("errors are reported through status codes") {
  sc_problem* p = nullptr;
  CHECK(sc_problem_parse(nullptr, &p) == SC_ERROR_INVALID_ARGUMENT);
  CHECK(sc_problem_parse("[tensor E]\n", &p) == SC_ERROR_INPUT);
  CHECK(sc_problem_load("/nonexistent/file.sprob", &p) == SC_ERROR_INPUT);
  CHECK(std::string(sc_last_error()).size() > 0);
}

TEST_CASE("running a command") {
  sc_problem* p = nullptr;
  REQUIRE(sc_problem_parse("[chart]\neven = x\nodd = t\n[tensor E]\npreset = darboux\n", &p) == SC_OK);
  const char* args[] = {"x", "t"};
  sc_report* r = nullptr;
  REQUIRE(sc_run("bracket", p, "inline", args, 2, nullptr, nullptr, 0, 0, &r) == SC_OK);
  const std::string json = sc_report_json(r);
  CHECK(json.find("\"value\":\"1\"") != std::string::npos);
  CHECK(json.back() == '\n');
  sc_report_free(r);

  const char* keys[] = {"k"};
  const char* values[] = {"2"};
  const char* sp[] = {"sp", "2"};
  REQUIRE(sc_run("prolong", nullptr, "", sp, 2, keys, values, 1, 1, &r) == SC_OK);
  CHECK(std::string(sc_report_json(r)).find("\"dimension\": 5") != std::string::npos);
  sc_report_free(r);

  CHECK(sc_run("nope", p, "", nullptr, 0, nullptr, nullptr, 0, 0, &r) == SC_ERROR_INPUT);
  sc_problem_free(p);

  int n = 0;
  for (const char* const* name = sc_command_names(); *name; ++name) ++n;
  CHECK(n == 11);
  CHECK(std::string(sc_version()) == "0.1.0");
}
