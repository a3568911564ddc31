#include "doctest.h"
#include "supercalc/commands.hpp"
#include "supercalc/problem.hpp"

#include <json.hpp>

using namespace supercalc;

TEST_CASE("expressions parse to canonical form") {
  Chart c = make_chart({"x", "y"}, {"a", "b"});
  const SuperFunction x = SuperFunction::coordinate(c, 0), a = SuperFunction::coordinate(c, 2),
                      b = SuperFunction::coordinate(c, 3);
  CHECK(parse_expression("b*a + a*b", c).is_zero());
  CHECK(parse_expression("(x + 1)^2 - x^2 - 2*x", c) == SuperFunction(c, Rational(1)));
  CHECK(parse_expression("-x*a*b", c) == -(x * a * b));
  CHECK(parse_expression("a/(1 + y^2)", c) == parse_expression("a*(y^2 + 1)/(y^2 + 1)^2", c));
  const SuperFunction f = parse_expression("3/4*x*b + a/(x^2 + 1) - 2", c);
  CHECK(parse_expression(f.to_string(), c) == f);
}

TEST_CASE("expression errors carry a position") {
  Chart c = make_chart({"x"}, {"t"});
  CHECK_THROWS_AS(parse_expression("x t", c), ParseError);
  CHECK_THROWS_AS(parse_expression("x + q", c), SupercalcError);
  CHECK_THROWS_AS(parse_expression("1/t", c), SupercalcError);
  CHECK_THROWS_AS(parse_expression("(x + 1", c), ParseError);
  try {
    parse_expression("x + * t", c);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("problem files") {
  const ProblemFile p = parse_problem(R"(# comment
[chart]
even = x
odd = t

[tensor E]
preset = darboux

[tensor w]
variance = lower
preset = darboux

[potential]
U = x*t

[diffeo phi]
x = 2*x + 1
)");
  CHECK(p.chart->size() == 2);
  CHECK(p.tensor("").variance() == Variance::Upper);
  CHECK(p.tensor("w").variance() == Variance::Lower);
  CHECK(p.potential_or_zero() == parse_expression("x*t", p.chart));
  CHECK(p.diffeo("phi").image(1) == SuperFunction::coordinate(p.chart, 1));
  CHECK_THROWS_AS(p.tensor("missing"), SupercalcError);

  CHECK_THROWS_AS(parse_problem("[chart]\neven = x\n[tensor E]\nE[x,x] = 1\n"), ParseError);  // parity
  CHECK_THROWS_AS(parse_problem("[tensor E]\n"), ParseError);                                 // no chart
  CHECK_THROWS_AS(parse_problem("[chart]\neven = x\n[nonsense]\n"), ParseError);
}

TEST_CASE("reports are deterministic and flag violations") {
  const ProblemFile p = parse_problem(R"([chart]
even = x, y
odd = a, b
[tensor E]
E[x,a] = 1
E[a,x] = 1
E[y,b] = x^2
E[b,y] = x^2
E[x,x] = a
)");
  CommandRequest req{"jacobi", "inline", {}, {{"expect-jacobi", "1"}}, false};
  const CommandResult first = run_command(req, &p);
  CHECK(first.status == 2);
  CHECK(run_command(req, &p).json == first.json);
  const auto report = nlohmann::ordered_json::parse(first.json);
  CHECK(report["results"]["jacobi"] == "fails");
  CHECK(report["status"] == "violated");

  req.command = "prolong";
  req.args = {"sp", "2"};
  const auto prolong = nlohmann::ordered_json::parse(run_command(req, nullptr).json);
  CHECK(prolong["results"]["dimension"] == 4);
  req.command = "unknown";
  CHECK_THROWS_AS(run_command(req, &p), SupercalcError);
}
