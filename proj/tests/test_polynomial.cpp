#include "doctest.h"
#include "supercalc/polynomial.hpp"
#include "supercalc/ratfunc.hpp"

#include <random>

using namespace supercalc;

namespace {

Polynomial var(int nv, int i) { return Polynomial::variable(nv, i); }
Polynomial num(int nv, long c) { return Polynomial(nv, Rational(c)); }

Polynomial random_poly(std::mt19937& rng, int nv, int terms, int degree) {
  std::vector<Polynomial::Term> t;
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    for (int d = 0; d < degree; ++d)
      if (rng() % 2) m = m * Monomial::var(static_cast<int>(rng() % static_cast<unsigned>(nv)));
    t.emplace_back(m, Rational(static_cast<int>(rng() % 9) - 4));
  }
  return Polynomial::from_terms(nv, std::move(t));
}

}  // namespace

TEST_CASE("gcd of planted factors") {
  const Polynomial x = var(3, 0), y = var(3, 1), z = var(3, 2);
  const Polynomial f = x * y + num(3, 1);
  const Polynomial g = z * z + num(3, 1);
  CHECK(gcd(f * g * x, g * (y - z)) == g);
  CHECK(gcd(f.pow(3) * g, f.pow(2) * (x - num(3, 2))) == f.pow(2).monic());
  CHECK(gcd(x * num(3, 6), x * y * num(3, 4)) == x);
  CHECK(gcd(f, g).is_one());
  CHECK(gcd(Polynomial(3), g) == g);
}

TEST_CASE("gcd divides both operands and recovers the planted factor") {
  std::mt19937 rng(5);
  for (int i = 0; i < 150; ++i) {
    const int nv = 1 + i % 3;
    const Polynomial c = random_poly(rng, nv, 3, 3), a = random_poly(rng, nv, 3, 3), b = random_poly(rng, nv, 3, 3);
    if (c.is_zero() || a.is_zero() || b.is_zero()) continue;
    const Polynomial g = gcd(a * c, b * c);
    CHECK_NOTHROW((a * c).exact_divide(g));
    CHECK_NOTHROW((b * c).exact_divide(g));
    CHECK_NOTHROW(g.exact_divide(c));
  }
}

TEST_CASE("high-degree gcd stays within exponent range") {
  const Polynomial x = var(3, 0), y = var(3, 1), z = var(3, 2);
  const Polynomial p = (x * y * z + x - num(3, 2) * z + num(3, 1)).pow(6);
  const Polynomial q = (x * x * z - y + num(3, 3)).pow(5);
  const Polynomial r = (y * y + z).pow(4);
  CHECK(gcd(p * r, q * r) == r.monic());
}

TEST_CASE("exact division rejects non-divisors") {
  const Polynomial x = var(2, 0), y = var(2, 1);
  CHECK((x * x - y * y).exact_divide(x + y) == x - y);
  CHECK_THROWS_AS((x * x + y).exact_divide(x + y), std::domain_error);
}

TEST_CASE("rational functions stay reduced") {
  const Polynomial x = var(2, 0), y = var(2, 1);
  RatFunc a(x * x - y * y, x + y + num(2, 1));
  RatFunc b(num(2, 1), x + y + num(2, 1));
  RatFunc sum = a + b;
  CHECK(sum.den() == (x + y + num(2, 1)));
  RatFunc prod = RatFunc(x + y + num(2, 1), x - y) * RatFunc(x - y, num(2, 1));
  CHECK(prod == RatFunc(x + y + num(2, 1)));
}
