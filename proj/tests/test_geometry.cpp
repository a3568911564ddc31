#include "doctest.h"
#include "supercalc/cartan.hpp"
#include "supercalc/coordchange.hpp"
#include "supercalc/halfdensity.hpp"

using namespace supercalc;
using SF = SuperFunction;

namespace {

struct Chart22 {
  Chart c = make_chart({"x", "y"}, {"a", "b"});
  SF x = SF::coordinate(c, 0), y = SF::coordinate(c, 1), a = SF::coordinate(c, 2), b = SF::coordinate(c, 3);
  SF one{c, Rational(1)};
};

SF zeroth_order(const DiffOperator& d) { return d.coefficient(DerivKey{}); }

// Independent route for invertible lower tensors: w = T^{-1} and
// (L_X w)_{AC} = -(-1)^{pX (pw + pA + pB)} w_AB (L_X T)^{BD} w_DC.
Tensor2 lie_lower_via_inverse(const VectorField& x, const Tensor2& w) {
  const Tensor2 lt = lie_derivative(x, invert(w));
  const Chart& c = w.chart();
  const int n = c->size();
  const int px = as_int(x.parity());
  const int pw = as_int(w.intrinsic_parity());
  Tensor2 out(c, Variance::Lower, static_cast<Parity>((pw + px) & 1));
  for (int a = 0; a < n; ++a)
    for (int e = 0; e < n; ++e) {
      SF v(c);
      for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d)
          v += w(a, b) * lt(b, d) * w(d, e) * Rational(-sign_of(px * (pw + c->p(a) + c->p(b))));
      out.set(a, e, v);
    }
  return out;
}

}  // namespace

TEST_CASE("modular field of darboux 1|1 with U = theta") {
  Chart c = make_chart({"x"}, {"th"});
  Tensor2 s = darboux_tensor(c);
  SF th = SF::coordinate(c, 1);
  VectorField x = modular_vf(s, th);
  CHECK(x[0] == SF(c, Rational(1, 2)));
  CHECK(x[1].is_zero());
  DiffOperator delta = build_delta(s, th);
  CHECK(compose(delta, delta) == lie_derivative_halfdensity(x));
}

TEST_CASE("delta squared is the lie derivative along the modular field") {
  Chart22 k;
  Tensor2 s = darboux_tensor(k.c);
  SF u = k.a * k.x + k.b;
  DiffOperator delta = build_delta(s, u);
  CHECK(compose(delta, delta) == lie_derivative_halfdensity(modular_vf(s, u)));

  // non-constant structure from a shear
  SuperDiffeo phi(k.c, k.c, {k.x + k.a * k.b, k.y, k.a + k.b * k.x, k.b});
  Tensor2 e = pushforward_tensor(s, phi);
  REQUIRE(jacobiator(e).empty());
  SF v = k.a * k.y * k.y + k.b * k.x;
  DiffOperator d2 = build_delta(e, v);
  CHECK(compose(d2, d2) == lie_derivative_halfdensity(modular_vf(e, v)));
}

TEST_CASE("shifting delta by F shifts the modular field by the right hamiltonian field") {
  Chart22 k;
  Tensor2 s = darboux_tensor(k.c);
  SF u = k.a * k.x;
  SF f = k.b * k.y * k.x + k.a;
  VectorField shift = modular_vf(s, u + f * Rational(2)) - modular_vf(s, u);
  CHECK(shift == -hamiltonian_vf(f, s));
}

TEST_CASE("transformed potential matches the conjugated operator") {
  Chart22 k;
  Tensor2 s = darboux_tensor(k.c);
  SuperDiffeo phi(k.c, k.c,
                  {k.x + k.y + k.a * k.b * k.x * k.y, k.y + k.a * k.b * Rational(3), k.a * (k.one + k.x * k.x) + k.b * k.y,
                   k.b + k.a * k.x});
  Tensor2 e = pushforward_tensor(s, phi);
  SF moved = transform_potential(SF(k.c), s, phi);
  CHECK(moved == canonical_potential(e));
  DiffOperator conj = conjugate_operator(build_delta(s, SF(k.c)), phi);
  CHECK(moved == zeroth_order(conj) * Rational(2));
  CHECK(conj == build_delta(e, moved));

  SF u = k.a * k.x + k.b;
  DiffOperator conj_u = conjugate_operator(build_delta(s, u), phi);
  CHECK(transform_potential(u, s, phi) == zeroth_order(conj_u) * Rational(2));
}

TEST_CASE("hamiltonian fields preserve the structure and its inverse") {
  Chart22 k;
  Tensor2 s = darboux_tensor(k.c);
  Tensor2 w = invert(s);
  for (const SF& h : {k.x * k.y * k.a, k.a * k.b + k.x * k.x, k.b * k.y * k.y * k.x}) {
    VectorField x = hamiltonian_vf(h, s);
    CHECK(lie_derivative(x, s).is_zero());
    CHECK(lie_derivative(x, w).is_zero());
  }
  VectorField scaling(k.c);
  scaling[0] = k.x;
  CHECK_FALSE(lie_derivative(scaling, s).is_zero());
  CHECK_FALSE(lie_derivative(scaling, w).is_zero());
}

TEST_CASE("lower lie derivative agrees with the inverse of the upper one") {
  Chart22 k;
  SuperDiffeo phi(k.c, k.c, {k.x + k.a * k.b * k.y, k.y + k.a * k.b * k.x, k.a + k.b * k.x, k.b * (k.one + k.y)});
  std::vector<Tensor2> lowers;
  for (const Tensor2& t : {darboux_tensor(k.c), odd_riemannian_tensor(k.c)}) {
    lowers.push_back(invert(t));
    lowers.push_back(invert(pushforward_tensor(t, phi)));
  }
  Tensor2 metric(k.c, Variance::Lower, Parity::Even);
  metric.set(0, 0, k.one + k.a * k.b);
  metric.set(1, 1, k.one + k.x * k.x);
  metric.set(0, 2, k.b);
  metric.set(2, 0, k.b);
  metric.set(2, 3, k.one);
  metric.set(3, 2, -k.one);
  lowers.push_back(metric);
  std::vector<VectorField> fields;
  for (int i = 0; i < 4; ++i) {
    VectorField even(k.c), odd(k.c);
    const SF pick[] = {k.x * k.y, k.a * k.y, k.a * k.b + k.y, k.b * k.x * k.x};
    const SF pick_odd[] = {k.a * k.x, k.x * k.y, k.b, k.one + k.a * k.b};
    even[i] = pick[i];
    odd[i] = pick_odd[i];
    fields.push_back(even);
    fields.push_back(odd);
  }
  for (const Tensor2& w : lowers)
    for (const VectorField& x : fields) {
      INFO("px " << as_int(x.parity()) << " pw " << as_int(w.intrinsic_parity()) << " x " << x.to_string());
      CHECK(lie_derivative(x, w) == lie_lower_via_inverse(x, w));
    }
}

TEST_CASE("classical prolongations") {
  CHECK(orthogonal_algebra(2).dimension() == 1);
  CHECK(prolongation(orthogonal_algebra(3), 1).dimension == 0);
  LinearLieAlgebra sp2 = symplectic_algebra(2);
  CHECK(sp2.dimension() == 3);
  CHECK(prolongation(sp2, 1).dimension == 4);
  CHECK(prolongation(sp2, 2).dimension == 5);
  LinearLieAlgebra sp4 = symplectic_algebra(4);
  CHECK(sp4.dimension() == 10);
  ProlongationResult p = prolongation(sp4, 1);
  CHECK(p.dimension == 20);
  // every witness has all frozen slices inside sp(4)
  const std::vector<int> par(4, 0);
  for (const ProlongationTensor& t : symplectic_prolongation_witnesses(4, 1))
    for (int m = 0; m < 4; ++m) {
      RationalMatrix slice(4, std::vector<Rational>(4, Rational(0)));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) slice[i][j] = prolongation_entry(t, i, {j, m}, par);
      CHECK(sp4.contains(slice));
    }
}

TEST_CASE("killing fields agree with the prolongation count") {
  Chart e2 = make_chart({"x1", "x2"}, {});
  Tensor2 metric(e2, Variance::Lower, Parity::Even);
  metric.set(0, 0, SF(e2, Rational(1)));
  metric.set(1, 1, SF(e2, Rational(1)));
  CHECK(killing_fields(metric, 3).dimension == 3);

  Tensor2 omega(e2, Variance::Lower, Parity::Even);
  omega.set(0, 1, SF(e2, Rational(1)));
  omega.set(1, 0, SF(e2, Rational(-1)));
  CHECK(killing_fields(omega, 1).dimension == 5);
  CHECK(killing_fields(omega, 2).dimension == 9);
  KillingResult k3 = killing_fields(omega, 3);
  CHECK(k3.dimension == 14);
  CHECK(k3.max_degree == 3);
  for (const VectorField& x : k3.basis) CHECK(lie_derivative(x, omega).is_zero());
}

TEST_CASE("odd structures on R^{1|1}") {
  Chart c = make_chart({"x"}, {"th"});
  LinearLieAlgebra g_s = LinearLieAlgebra::stabilizer(darboux_tensor(c));
  LinearLieAlgebra g_r = LinearLieAlgebra::stabilizer(odd_riemannian_tensor(c));
  CHECK(prolongation(g_s, 1).dimension > 0);
  CHECK(prolongation(g_r, 1).dimension == 0);
}
