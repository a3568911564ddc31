#include "supercalc/oddpoisson.hpp"

#include <sstream>

namespace supercalc {

namespace {

/// Splits a field into its even and odd homogeneous parts.
std::pair<VectorField, VectorField> split_parity(const VectorField& x) {
  const Chart& chart = x.chart();
  VectorField even(chart), odd(chart);
  for (int a = 0; a < chart->size(); ++a) {
    const bool shifted = chart->p(a) == 1;
    even[a] = shifted ? x[a].odd_part() : x[a].even_part();
    odd[a] = shifted ? x[a].even_part() : x[a].odd_part();
  }
  return {even, odd};
}

}  // namespace

VectorField::VectorField(Chart chart) : chart_(std::move(chart)) {
  components_.assign(static_cast<std::size_t>(chart_->size()), SuperFunction(chart_));
}

VectorField::VectorField(Chart chart, std::vector<SuperFunction> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (static_cast<int>(components_.size()) != chart_->size())
    throw SupercalcError("vector field needs one component per coordinate");
  for (const auto& c : components_) require_same_chart(chart_, c.chart());
}

bool VectorField::is_zero() const {
  for (const auto& c : components_)
    if (!c.is_zero()) return false;
  return true;
}

bool VectorField::is_homogeneous() const {
  if (is_zero()) return true;
  auto [even, odd] = split_parity(*this);
  return even.is_zero() || odd.is_zero();
}

Parity VectorField::parity() const {
  if (is_zero()) throw ZeroInput();
  auto [even, odd] = split_parity(*this);
  if (odd.is_zero()) return Parity::Even;
  if (even.is_zero()) return Parity::Odd;
  throw NonHomogeneous();
}

SuperFunction VectorField::apply(const SuperFunction& f) const {
  SuperFunction out(chart_);
  for (int a = 0; a < chart_->size(); ++a)
    if (!components_[static_cast<std::size_t>(a)].is_zero()) out += (*this)[a] * f.partial(a);
  return out;
}

DiffOperator VectorField::as_operator() const {
  DiffOperator out(chart_);
  for (int a = 0; a < chart_->size(); ++a)
    out += DiffOperator::partial(chart_, a).left_multiply((*this)[a]);
  return out;
}

VectorField VectorField::operator-() const {
  VectorField out = *this;
  for (auto& c : out.components_) c = -c;
  return out;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  require_same_chart(a.chart_, b.chart_);
  VectorField out = a;
  for (std::size_t i = 0; i < out.components_.size(); ++i) out.components_[i] += b.components_[i];
  return out;
}

VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-b); }

VectorField operator*(const VectorField& a, const Rational& c) {
  VectorField out = a;
  for (auto& comp : out.components_) comp *= c;
  return out;
}

bool operator==(const VectorField& a, const VectorField& b) {
  return same_chart(a.chart_, b.chart_) && a.components_ == b.components_;
}

std::string VectorField::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int a = 0; a < chart_->size(); ++a) {
    if ((*this)[a].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << (*this)[a].to_string() << ")*d[" << chart_->name(a) << "]";
  }
  return first ? "0" : os.str();
}

VectorField commutator(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart(), y.chart());
  const Chart& chart = x.chart();
  VectorField out(chart);
  const auto [x0, x1] = split_parity(x);
  const auto [y0, y1] = split_parity(y);
  const VectorField* xs[2] = {&x0, &x1};
  const VectorField* ys[2] = {&y0, &y1};
  for (int px = 0; px < 2; ++px)
    for (int py = 0; py < 2; ++py) {
      const VectorField& a = *xs[px];
      const VectorField& b = *ys[py];
      if (a.is_zero() || b.is_zero()) continue;
      const int s = sign_of(px * py);
      for (int c = 0; c < chart->size(); ++c) out[c] += a.apply(b[c]) - b.apply(a[c]) * Rational(s);
    }
  return out;
}

OddPoissonStructure::OddPoissonStructure(Tensor2 e) : e_(std::move(e)) {
  if (e_.variance() != Variance::Upper) throw SupercalcError("odd Poisson tensor must be contravariant");
  if (e_.intrinsic_parity() != Parity::Odd) throw ParityViolation("odd Poisson tensor must be odd");
  if (symmetry_type(e_) != SymmetryType::GradedSymmetric)
    throw SupercalcError("odd Poisson tensor must be graded symmetric");
}

const std::vector<JacobiWitness>& OddPoissonStructure::verify_jacobi() {
  if (state_ == JacobiState::Unknown) {
    witnesses_ = jacobiator(e_);
    state_ = witnesses_.empty() ? JacobiState::Holds : JacobiState::Fails;
  }
  return witnesses_;
}

SuperFunction bracket(const SuperFunction& f, const SuperFunction& g, const Tensor2& e) {
  require_same_chart(f.chart(), e.chart());
  require_same_chart(g.chart(), e.chart());
  const Chart& chart = e.chart();
  const int n = chart->size();
  SuperFunction out(chart);
  if (f.is_zero() || g.is_zero()) return out;
  std::vector<SuperFunction> dg;
  dg.reserve(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b) dg.push_back(g.partial(b));
  // v^A = E^{AB} d_B g
  std::vector<SuperFunction> v(static_cast<std::size_t>(n), SuperFunction(chart));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!e(a, b).is_zero() && !dg[static_cast<std::size_t>(b)].is_zero())
        v[static_cast<std::size_t>(a)] += e(a, b) * dg[static_cast<std::size_t>(b)];
  for (int pf = 0; pf < 2; ++pf) {
    const SuperFunction part = pf ? f.odd_part() : f.even_part();
    if (part.is_zero()) continue;
    for (int a = 0; a < n; ++a) {
      if (v[static_cast<std::size_t>(a)].is_zero()) continue;
      SuperFunction term = part.partial(a) * v[static_cast<std::size_t>(a)];
      out += term * Rational(sign_of(pf * chart->p(a)));
    }
  }
  return out;
}

std::vector<JacobiWitness> jacobiator(const Tensor2& e) {
  const Chart& chart = e.chart();
  const int n = chart->size();
  std::vector<SuperFunction> z;
  for (int a = 0; a < n; ++a) z.push_back(SuperFunction::coordinate(chart, a));
  // {z^A, z^B} = (-1)^{p(A)} E^{AB}
  std::vector<std::vector<SuperFunction>> zz(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) zz[static_cast<std::size_t>(a)].push_back(e(a, b) * Rational(sign_of(chart->p(a))));
  auto zb = [&](int a, int b) -> const SuperFunction& { return zz[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };
  std::vector<JacobiWitness> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        SuperFunction j = bracket(z[static_cast<std::size_t>(a)], zb(b, c), e) - bracket(zb(a, b), z[static_cast<std::size_t>(c)], e);
        const int s = sign_of((chart->p(a) + 1) * (chart->p(b) + 1));
        j -= bracket(z[static_cast<std::size_t>(b)], zb(a, c), e) * Rational(s);
        if (!j.is_zero()) out.push_back({a, b, c, std::move(j)});
      }
  return out;
}

VectorField hamiltonian_vf(const SuperFunction& phi, const Tensor2& e) {
  require_same_chart(phi.chart(), e.chart());
  const Chart& chart = e.chart();
  VectorField out(chart);
  if (phi.is_zero()) return out;
  const int pphi = as_int(phi.parity());
  for (int a = 0; a < chart->size(); ++a) {
    SuperFunction d = phi.partial(a);
    if (d.is_zero()) continue;
    d *= Rational(sign_of(pphi * chart->p(a)));
    for (int b = 0; b < chart->size(); ++b)
      if (!e(a, b).is_zero()) out[b] += d * e(a, b);
  }
  return out;
}

namespace {

// Upper tensors are paired with functions through the biderivation
// P(f,g) = sum (-1)^{p(T)p(A)} (f d<_A) T^{AB} (d_B g), which transforms
// like the principal symbol of a second-order operator. T sits between f
// and g, so X(P(f,g)) = P(Xf,g) + (-1)^{pX pf} (L_X P)(f,g) + (-1)^{pX (pf + pT)} P(f,Xg).
Tensor2 lie_upper(const VectorField& x, int px, const Tensor2& t) {
  const Chart& chart = t.chart();
  const int n = chart->size();
  const int pt = as_int(t.intrinsic_parity());
  const Parity out_parity = static_cast<Parity>((pt + px) & 1);
  Tensor2 out(chart, Variance::Upper, out_parity);
  for (int a = 0; a < n; ++a) {
    const int pa = chart->p(a);
    for (int b = 0; b < n; ++b) {
      SuperFunction value = x.apply(t(a, b)) * Rational(sign_of(pt * pa));
      SuperFunction first(chart);
      const int pxa = (px + pa) & 1;
      for (int c = 0; c < n; ++c) {
        if (t(c, b).is_zero()) continue;
        const SuperFunction d = x[a].partial(c);
        if (d.is_zero()) continue;
        const int pc = chart->p(c);
        first += d * t(c, b) * Rational(sign_of(pt * pc + pc * (pxa + 1)));
      }
      SuperFunction second(chart);
      for (int c = 0; c < n; ++c) {
        if (t(a, c).is_zero()) continue;
        const SuperFunction d = x[b].partial(c);
        if (!d.is_zero()) second += t(a, c) * d;
      }
      second *= Rational(sign_of(pt * pa));
      value -= first;
      value -= second * Rational(sign_of(px * (pt + pa)));
      // (-1)^{pX pA} from the rule above, (-1)^{p(out) pA} to return to components
      value *= Rational(sign_of(pt * pa));
      out.set(a, b, std::move(value));
    }
  }
  return out;
}

// Sign placement is fixed by requiring L_X (T^{-1}) to be the graded
// derivative of the inverse of L_X T for every upper T.
Tensor2 lie_lower(const VectorField& x, int px, const Tensor2& w) {
  const Chart& chart = w.chart();
  const int n = chart->size();
  const int pw = as_int(w.intrinsic_parity());
  Tensor2 out(chart, Variance::Lower, static_cast<Parity>((pw + px) & 1));
  for (int a = 0; a < n; ++a) {
    const int pa = chart->p(a);
    for (int b = 0; b < n; ++b) {
      const int pb = chart->p(b);
      SuperFunction value = x.apply(w(a, b));
      for (int c = 0; c < n; ++c) {
        const int pc = chart->p(c);
        if (!w(c, b).is_zero()) {
          const SuperFunction d = x[c].partial(a);
          if (!d.is_zero()) value += d * w(c, b) * Rational(sign_of(px * pa));
        }
        if (!w(a, c).is_zero()) {
          const SuperFunction d = x[c].partial(b);
          if (!d.is_zero()) {
            const int e = pb + pc + px * pb + pa * pb + pa * pc;
            value += d * w(a, c) * Rational(sign_of(e));
          }
        }
      }
      out.set(a, b, std::move(value));
    }
  }
  return out;
}

}  // namespace

Tensor2 lie_derivative(const VectorField& x, const Tensor2& t) {
  require_same_chart(x.chart(), t.chart());
  const auto [x0, x1] = split_parity(x);
  auto one = [&](const VectorField& part, int px) {
    return t.variance() == Variance::Upper ? lie_upper(part, px, t) : lie_lower(part, px, t);
  };
  if (x1.is_zero()) return one(x0, 0);
  if (x0.is_zero()) return one(x1, 1);
  // mixed parity is only representable when one piece vanishes
  Tensor2 a = one(x0, 0);
  Tensor2 b = one(x1, 1);
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  throw NonHomogeneous();
}

PreservationResult lie_preserves(const VectorField& x, const Tensor2& t) {
  Tensor2 defect = lie_derivative(x, t);
  const bool zero = defect.is_zero();
  return {zero, std::move(defect)};
}

}  // namespace supercalc
