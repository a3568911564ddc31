#include "supercalc/coordchange.hpp"

namespace supercalc {

namespace {

bool is_zero_vector(const std::vector<SuperFunction>& v) {
  for (const auto& f : v)
    if (!f.is_zero()) return false;
  return true;
}

/// Newton iteration for psi with phi(psi(z')) = z'. The body of phi must be
/// affine; the remaining corrections are nilpotent and converge in finitely
/// many steps.
std::vector<SuperFunction> invert_images(const Chart& source, const Chart& target,
                                         const std::vector<SuperFunction>& images) {
  const int n = source->size();
  const int nv = source->n_even();
  // body map x' = A x + b
  std::vector<std::vector<SuperFunction>> a(static_cast<std::size_t>(nv));
  std::vector<Rational> shift(static_cast<std::size_t>(nv));
  for (int i = 0; i < nv; ++i) {
    const RatFunc body = images[static_cast<std::size_t>(i)].body();
    if (!body.is_polynomial() || body.num().total_degree() > 1)
      throw NotInvertible("body of the coordinate change is not affine; inverse is not computable in the ring");
    shift[static_cast<std::size_t>(i)] = body.num().constant_term();
    for (int j = 0; j < nv; ++j)
      a[static_cast<std::size_t>(i)].emplace_back(target, body.derivative(j).num().constant_term());
  }
  std::vector<std::vector<SuperFunction>> a_inv;
  try {
    a_inv = invert_matrix(a, target);
  } catch (const SingularBody&) {
    throw NotInvertible("body of the coordinate change is singular");
  }
  std::vector<SuperFunction> psi;
  for (int j = 0; j < nv; ++j) {
    SuperFunction xj(target);
    for (int i = 0; i < nv; ++i)
      xj += a_inv[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
            (SuperFunction::coordinate(target, i) - SuperFunction(target, shift[static_cast<std::size_t>(i)]));
    psi.push_back(xj);
  }
  for (int a_idx = nv; a_idx < n; ++a_idx) psi.push_back(SuperFunction::coordinate(target, a_idx));

  const int max_steps = 8 + 2 * source->n_odd();
  for (int step = 0; step < max_steps; ++step) {
    std::vector<SuperFunction> residual;
    for (int t = 0; t < n; ++t)
      residual.push_back(SuperFunction::coordinate(target, t) - images[static_cast<std::size_t>(t)].substitute(psi));
    if (is_zero_vector(residual)) return psi;
    // m(A, A') = (d_A phi^{A'}) o psi; delta = residual * m^{-1}
    std::vector<std::vector<SuperFunction>> m(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) m[static_cast<std::size_t>(s)].push_back(images[static_cast<std::size_t>(t)].partial(s).substitute(psi));
    const auto m_inv = invert_matrix(m, target);
    for (int s = 0; s < n; ++s) {
      SuperFunction delta(target);
      for (int t = 0; t < n; ++t)
        if (!residual[static_cast<std::size_t>(t)].is_zero())
          delta += residual[static_cast<std::size_t>(t)] * m_inv[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)];
      psi[static_cast<std::size_t>(s)] += delta;
    }
  }
  throw NotInvertible("inverse coordinate change did not converge");
}

}  // namespace

SuperDiffeo::SuperDiffeo(Chart source, Chart target, std::vector<SuperFunction> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (source_->n_even() != target_->n_even() || source_->n_odd() != target_->n_odd())
    throw ChartMismatch();
  if (static_cast<int>(images_.size()) != target_->size())
    throw SupercalcError("coordinate change needs one image per target coordinate");
  for (int a = 0; a < target_->size(); ++a) {
    const SuperFunction& img = images_[static_cast<std::size_t>(a)];
    require_same_chart(source_, img.chart());
    if (img.is_zero() ? target_->p(a) == 0 : (!img.is_homogeneous() || img.parity() != target_->parity(a)))
      throw ParityViolation("image of '" + target_->name(a) + "' has the wrong parity");
  }
  inverse_ = invert_images(source_, target_, images_);
}

SuperDiffeo SuperDiffeo::identity(Chart chart) {
  std::vector<SuperFunction> images;
  for (int a = 0; a < chart->size(); ++a) images.push_back(SuperFunction::coordinate(chart, a));
  return SuperDiffeo(chart, chart, std::move(images));
}

SuperFunction SuperDiffeo::pull_back_inverse(const SuperFunction& f) const {
  require_same_chart(f.chart(), source_);
  return f.substitute(inverse_);
}

SuperDiffeo SuperDiffeo::inverse() const { return SuperDiffeo(target_, source_, inverse_); }

SuperDiffeo compose(const SuperDiffeo& psi, const SuperDiffeo& phi) {
  require_same_chart(phi.target(), psi.source());
  std::vector<SuperFunction> images;
  for (const auto& img : psi.images()) images.push_back(img.substitute(phi.images()));
  return SuperDiffeo(phi.source(), psi.target(), std::move(images));
}

SuperMatrix jacobian(const SuperDiffeo& phi) {
  const Chart& chart = phi.source();
  SuperMatrix m(chart);
  for (int t = 0; t < chart->size(); ++t)
    for (int s = 0; s < chart->size(); ++s) {
      // z'^{A'} d<_B = (-1)^{p(B)(p(A')+1)} d_B z'^{A'}
      const int sign = sign_of(chart->p(s) * (phi.target()->p(t) + 1));
      m(t, s) = phi.image(t).partial(s) * Rational(sign);
    }
  return m;
}

SuperFunction ber_jacobian(const SuperDiffeo& phi) { return berezinian(jacobian(phi)); }

Tensor2 pushforward_tensor(const Tensor2& t, const SuperDiffeo& phi) {
  require_same_chart(t.chart(), phi.source());
  const Chart& src = phi.source();
  const Chart& dst = phi.target();
  const int n = src->size();
  Tensor2 out(dst, Variance::Upper, t.intrinsic_parity());
  if (t.variance() != Variance::Upper) throw SupercalcError("only contravariant tensors are transported");
  std::vector<std::vector<SuperFunction>> d(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int ap = 0; ap < n; ++ap) d[static_cast<std::size_t>(a)].push_back(phi.image(ap).partial(a));
  auto dz = [&](int a, int ap) -> const SuperFunction& { return d[static_cast<std::size_t>(a)][static_cast<std::size_t>(ap)]; };
  for (int ap = 0; ap < n; ++ap)
    for (int bp = 0; bp < n; ++bp) {
      // T'^{A'B'} = (-1)^{p(B)(p(A)+p(A'))} T^{AB} (d_A z'^{A'}) (d_B z'^{B'})
      SuperFunction value(src);
      for (int a = 0; a < n; ++a) {
        if (dz(a, ap).is_zero()) continue;
        for (int b = 0; b < n; ++b) {
          if (t(a, b).is_zero() || dz(b, bp).is_zero()) continue;
          const int sign = sign_of(src->p(b) * (src->p(a) + dst->p(ap)));
          value += t(a, b) * dz(a, ap) * dz(b, bp) * Rational(sign);
        }
      }
      out.set(ap, bp, phi.pull_back_inverse(value));
    }
  return out;
}

namespace {

/// d_{A'} log J in target coordinates for J = Dz'/Dz.
std::vector<SuperFunction> log_jacobian_gradient(const SuperDiffeo& phi) {
  const SuperFunction j = phi.pull_back_inverse(ber_jacobian(phi));
  const SuperFunction j_inv = j.inverse();
  std::vector<SuperFunction> out;
  for (int a = 0; a < phi.target()->size(); ++a) out.push_back(j.partial(a) * j_inv);
  return out;
}

}  // namespace

SuperFunction transform_potential(const SuperFunction& u, const Tensor2& e, const SuperDiffeo& phi) {
  require_same_chart(u.chart(), phi.source());
  const Tensor2 ep = pushforward_tensor(e, phi);
  const Chart& dst = phi.target();
  const int n = dst->size();
  const std::vector<SuperFunction> g = log_jacobian_gradient(phi);
  SuperFunction out = phi.pull_back_inverse(u);
  SuperFunction half(dst), quarter(dst);
  for (int a = 0; a < n; ++a) {
    SuperFunction v(dst);
    for (int b = 0; b < n; ++b)
      if (!ep(a, b).is_zero() && !g[static_cast<std::size_t>(b)].is_zero()) v += ep(a, b) * g[static_cast<std::size_t>(b)];
    half += v.partial(a);
    quarter += g[static_cast<std::size_t>(a)] * v;
  }
  return out + half * Rational(1, 2) - quarter * Rational(1, 4);
}

DiffOperator conjugate_operator(const DiffOperator& d, const SuperDiffeo& phi) {
  require_same_chart(d.chart() ? d.chart() : phi.source(), phi.source());
  const Chart& src = phi.source();
  const Chart& dst = phi.target();
  const int n = src->size();
  const SuperFunction ber = ber_jacobian(phi);
  const SuperFunction ber_inv = ber.inverse();
  // J^{-1/2} d_A J^{1/2} = d_A + 1/2 d_A J / J, with d_A = (d_A z'^{A'}) d_{A'}
  std::vector<DiffOperator> nabla;
  for (int a = 0; a < n; ++a) {
    DiffOperator op = DiffOperator::multiplication(phi.pull_back_inverse(ber.partial(a) * ber_inv * Rational(1, 2)));
    if (op.chart() == nullptr) op = DiffOperator(dst);
    for (int ap = 0; ap < n; ++ap) {
      const SuperFunction c = phi.pull_back_inverse(phi.image(ap).partial(a));
      if (!c.is_zero()) op += DiffOperator::partial(dst, ap).left_multiply(c);
    }
    nabla.push_back(std::move(op));
  }
  DiffOperator out(dst);
  for (const auto& [key, coeff] : d.terms()) {
    DiffOperator piece = DiffOperator::multiplication(phi.pull_back_inverse(coeff));
    for (int a : derivative_sequence(key, *src)) piece = compose(piece, nabla[static_cast<std::size_t>(a)]);
    out += piece;
  }
  return out;
}

bool is_darboux(const Tensor2& e) {
  if (e.variance() != Variance::Upper || e.intrinsic_parity() != Parity::Odd) return false;
  const Chart& chart = e.chart();
  if (chart->n_even() != chart->n_odd()) return false;
  return e == darboux_tensor(chart);
}

}  // namespace supercalc
