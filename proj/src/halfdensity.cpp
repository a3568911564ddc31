#include "supercalc/halfdensity.hpp"

namespace supercalc {

namespace {

void require_odd_symmetric(const Tensor2& e) {
  if (e.variance() != Variance::Upper) throw SupercalcError("operator symbol must be contravariant");
  if (e.intrinsic_parity() != Parity::Odd) throw ParityViolation("operator symbol must be odd");
  if (symmetry_type(e) != SymmetryType::GradedSymmetric)
    throw SupercalcError("operator symbol must be graded symmetric");
}

}  // namespace

DiffOperator build_delta(const Tensor2& e, const SuperFunction& u) {
  require_odd_symmetric(e);
  require_same_chart(e.chart(), u.chart());
  if (!u.is_zero() && u.parity() != Parity::Odd) throw ParityViolation("potential must be odd");
  const Chart& chart = e.chart();
  const int n = chart->size();
  DiffOperator out = DiffOperator::multiplication(u);
  for (int b = 0; b < n; ++b) {
    DiffOperator inner(chart);
    for (int a = 0; a < n; ++a)
      if (!e(b, a).is_zero()) inner += DiffOperator::partial(chart, a).left_multiply(e(b, a));
    out += inner.left_partial(b);
  }
  return out * Rational(1, 2);
}

VectorField modular_vf_divergence_part(const Tensor2& e) {
  const Chart& chart = e.chart();
  const int n = chart->size();
  VectorField out(chart);
  for (int a = 0; a < n; ++a) {
    // w^D = sum_B d_D d_B E^{BA}
    std::vector<SuperFunction> w(static_cast<std::size_t>(n), SuperFunction(chart));
    SuperFunction div_e(chart);
    for (int b = 0; b < n; ++b)
      if (!e(b, a).is_zero()) div_e += e(b, a).partial(b);
    if (div_e.is_zero()) continue;
    SuperFunction total(chart);
    for (int c = 0; c < n; ++c) {
      SuperFunction inner(chart);
      for (int d = 0; d < n; ++d)
        if (!e(c, d).is_zero()) inner += e(c, d) * div_e.partial(d);
      total += inner.partial(c);
    }
    out[a] = total * Rational(1, 4);
  }
  return out;
}

VectorField modular_vf(const Tensor2& e, const SuperFunction& u) {
  require_odd_symmetric(e);
  if (!jacobiator(e).empty()) throw JacobiFails();
  const Chart& chart = e.chart();
  const int n = chart->size();
  VectorField out = modular_vf_divergence_part(e);
  for (int a = 0; a < n; ++a) {
    SuperFunction t(chart);
    for (int b = 0; b < n; ++b)
      if (!e(a, b).is_zero()) t += e(a, b) * u.partial(b);
    out[a] += t * Rational(sign_of(chart->p(a)), 2);
  }
  return out;
}

DiffOperator lie_derivative_halfdensity(const VectorField& x) {
  const DiffOperator d = x.as_operator();
  return (d - formal_adjoint(d)) * Rational(1, 2);
}

SuperFunction canonical_potential(const Tensor2& e) {
  require_odd_symmetric(e);
  const Tensor2 lower = invert(e);
  if (!jacobiator(e).empty()) throw JacobiFails();
  const Chart& chart = e.chart();
  const int n = chart->size();
  SuperFunction first(chart);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!e(a, b).is_zero()) first += e(a, b).partial(a).partial(b);
  SuperFunction second(chart);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const SuperFunction left = e(b, c).partial(a);
        if (left.is_zero()) continue;
        for (int d = 0; d < n; ++d) {
          if (lower(c, d).is_zero()) continue;
          const SuperFunction right = e(d, a).partial(b);
          if (right.is_zero()) continue;
          const int s = sign_of(chart->p(b) * (chart->p(d) + 1));
          second += left * lower(c, d) * right * Rational(s);
        }
      }
  return first * Rational(1, 4) - second * Rational(1, 12);
}

}  // namespace supercalc
