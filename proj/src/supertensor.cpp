#include "supercalc/supertensor.hpp"

#include <functional>

namespace supercalc {

namespace {

using Matrix = std::vector<std::vector<SuperFunction>>;
using RatMatrix = std::vector<std::vector<RatFunc>>;

Matrix zeros(const Chart& chart, std::size_t rows, std::size_t cols) {
  return Matrix(rows, std::vector<SuperFunction>(cols, SuperFunction(chart)));
}

Matrix multiply(const Matrix& a, const Matrix& b, const Chart& chart) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k == 0 ? 0 : b.front().size();
  Matrix out = zeros(chart, n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[l][j].is_zero()) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

/// Gauss-Jordan over Q(x); returns the rank and, when full rank, the inverse.
int invert_rational(RatMatrix m, RatMatrix* inverse, int nvars) {
  const std::size_t n = m.size();
  RatMatrix inv(n, std::vector<RatFunc>(n, RatFunc(nvars)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = RatFunc(nvars, Rational(1));
  int rank = 0;
  std::vector<bool> used(n, false);
  std::vector<std::size_t> pivot_row(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t r = 0; r < n; ++r)
      if (!used[r] && !m[r][col].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot == n) continue;
    used[pivot] = true;
    pivot_row[col] = pivot;
    ++rank;
    const RatFunc pinv = m[pivot][col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m[pivot][j] *= pinv;
      inv[pivot][j] *= pinv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == pivot || m[r][col].is_zero()) continue;
      const RatFunc f = m[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        if (!m[pivot][j].is_zero()) m[r][j] -= f * m[pivot][j];
        if (!inv[pivot][j].is_zero()) inv[r][j] -= f * inv[pivot][j];
      }
    }
  }
  if (rank == static_cast<int>(n) && inverse) {
    RatMatrix ordered(n);
    for (std::size_t c = 0; c < n; ++c) ordered[c] = inv[pivot_row[c]];
    *inverse = std::move(ordered);
  }
  return rank;
}

}  // namespace

Matrix invert_matrix(const Matrix& m, const Chart& chart) {
  const std::size_t n = m.size();
  const int nv = chart->n_even();
  RatMatrix body(n, std::vector<RatFunc>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) body[i][j] = m[i][j].is_zero() ? RatFunc(nv) : m[i][j].body();
  RatMatrix body_inv;
  const int rank = invert_rational(body, &body_inv, nv);
  if (rank < static_cast<int>(n)) throw SingularBody(rank, static_cast<int>(n));

  Matrix binv = zeros(chart, n, n);
  Matrix nil = zeros(chart, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      binv[i][j] = SuperFunction(chart, body_inv[i][j]);
      nil[i][j] = m[i][j] - SuperFunction(chart, body[i][j]);
    }
  // (B + N)^{-1} = sum_k (-B^{-1} N)^k B^{-1}
  Matrix step = multiply(binv, nil, chart);
  for (auto& row : step)
    for (auto& e : row) e = -e;
  Matrix sum = zeros(chart, n, n);
  for (std::size_t i = 0; i < n; ++i) sum[i][i] = SuperFunction(chart, Rational(1));
  Matrix power = sum;
  for (int k = 0; k <= chart->n_odd(); ++k) {
    power = multiply(power, step, chart);
    bool all_zero = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (power[i][j].is_zero()) continue;
        all_zero = false;
        sum[i][j] += power[i][j];
      }
    if (all_zero) break;
  }
  return multiply(sum, binv, chart);
}

SuperFunction even_determinant(const Matrix& m, const Chart& chart) {
  const std::size_t n = m.size();
  if (n == 0) return SuperFunction(chart, Rational(1));
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  SuperFunction det(chart);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    Matrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<SuperFunction> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    SuperFunction term = m[0][j] * even_determinant(minor, chart);
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

// ---------------------------------------------------------------------------

SuperMatrix::SuperMatrix(Chart chart, Parity intrinsic)
    : chart_(std::move(chart)),
      n_(chart_->size()),
      parity_(intrinsic),
      data_(static_cast<std::size_t>(n_ * n_), SuperFunction(chart_)) {}

SuperMatrix SuperMatrix::identity(Chart chart) {
  SuperMatrix m(chart);
  for (int i = 0; i < m.n_; ++i) m(i, i) = SuperFunction(chart, Rational(1));
  return m;
}

bool SuperMatrix::parity_consistent() const {
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      const auto& e = (*this)(a, b);
      if (e.is_zero()) continue;
      if (!e.is_homogeneous()) return false;
      if (e.parity() != chart_->parity(a) + chart_->parity(b) + parity_) return false;
    }
  return true;
}

std::vector<std::vector<RatFunc>> SuperMatrix::body() const {
  RatMatrix out(static_cast<std::size_t>(n_), std::vector<RatFunc>(static_cast<std::size_t>(n_)));
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      const auto& e = (*this)(a, b);
      out[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          e.is_zero() ? RatFunc(chart_->n_even()) : e.body();
    }
  return out;
}

int SuperMatrix::body_rank() const { return invert_rational(body(), nullptr, chart_->n_even()); }

SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
  require_same_chart(a.chart_, b.chart_);
  SuperMatrix out(a.chart_, a.parity_ + b.parity_);
  for (int i = 0; i < a.n_; ++i)
    for (int l = 0; l < a.n_; ++l) {
      if (a(i, l).is_zero()) continue;
      for (int j = 0; j < a.n_; ++j)
        if (!b(l, j).is_zero()) out(i, j) += a(i, l) * b(l, j);
    }
  return out;
}

SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
  require_same_chart(a.chart_, b.chart_);
  SuperMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
  require_same_chart(a.chart_, b.chart_);
  SuperMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
  return same_chart(a.chart_, b.chart_) && a.data_ == b.data_;
}

SuperMatrix SuperMatrix::inverse() const {
  Matrix m(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m[static_cast<std::size_t>(i)].push_back((*this)(i, j));
  Matrix inv = invert_matrix(m, chart_);
  SuperMatrix out(chart_, parity_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out(i, j) = inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

namespace {

Matrix block(const SuperMatrix& m, int r0, int r1, int c0, int c1) {
  Matrix out;
  for (int r = r0; r < r1; ++r) {
    std::vector<SuperFunction> row;
    for (int c = c0; c < c1; ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] -= b[i][j];
  return out;
}

}  // namespace

SuperFunction berezinian(const SuperMatrix& m) {
  if (m.intrinsic_parity() != Parity::Even)
    throw ParityViolation("the Berezinian needs an even supermatrix");
  const Chart& chart = m.chart();
  const int p = chart->n_even();
  const int n = m.size();
  Matrix a = block(m, 0, p, 0, p);
  if (p == n) return even_determinant(a, chart);
  Matrix b = block(m, 0, p, p, n);
  Matrix c = block(m, p, n, 0, p);
  Matrix d = block(m, p, n, p, n);
  Matrix dinv;
  try {
    dinv = invert_matrix(d, chart);
  } catch (const SingularBody&) {
    throw SingularOddBlock();
  }
  Matrix schur = subtract(a, multiply(multiply(b, dinv, chart), c, chart));
  return even_determinant(schur, chart) * even_determinant(d, chart).inverse();
}

SuperFunction berezinian_via_even_block(const SuperMatrix& m) {
  if (m.intrinsic_parity() != Parity::Even)
    throw ParityViolation("the Berezinian needs an even supermatrix");
  const Chart& chart = m.chart();
  const int p = chart->n_even();
  const int n = m.size();
  Matrix a = block(m, 0, p, 0, p);
  Matrix b = block(m, 0, p, p, n);
  Matrix c = block(m, p, n, 0, p);
  Matrix d = block(m, p, n, p, n);
  Matrix ainv = invert_matrix(a, chart);
  Matrix schur = subtract(d, multiply(multiply(c, ainv, chart), b, chart));
  return even_determinant(a, chart) * even_determinant(schur, chart).inverse();
}

// ---------------------------------------------------------------------------

std::string to_string(SymmetryType s) {
  switch (s) {
    case SymmetryType::GradedSymmetric: return "graded_symmetric";
    case SymmetryType::GradedAntisymmetric: return "graded_antisymmetric";
    case SymmetryType::Neither: return "neither";
  }
  return "neither";
}

Tensor2::Tensor2(Chart chart, Variance variance, Parity intrinsic)
    : components_(std::move(chart), intrinsic), variance_(variance) {}

Tensor2::Tensor2(SuperMatrix components, Variance variance)
    : components_(std::move(components)), variance_(variance) {
  if (!components_.parity_consistent())
    throw ParityViolation("tensor component parities disagree with the intrinsic parity");
}

void Tensor2::set(int a, int b, SuperFunction value) {
  if (!value.is_zero()) {
    require_same_chart(chart(), value.chart());
    const Parity want = chart()->parity(a) + chart()->parity(b) + intrinsic_parity();
    if (!value.is_homogeneous() || value.parity() != want)
      throw ParityViolation("component (" + chart()->name(a) + "," + chart()->name(b) +
                            ") must be " + (want == Parity::Even ? "even" : "odd"));
  }
  components_(a, b) = std::move(value);
}

bool Tensor2::is_constant() const {
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b)
      if (!(*this)(a, b).is_constant()) return false;
  return true;
}

bool Tensor2::is_zero() const {
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b)
      if (!(*this)(a, b).is_zero()) return false;
  return true;
}

namespace {

SymmetryType classify(const Tensor2& t, const std::function<int(int, int)>& sign) {
  bool sym = true;
  bool anti = true;
  const int n = t.size();
  for (int a = 0; a < n && (sym || anti); ++a)
    for (int b = a; b < n && (sym || anti); ++b) {
      const SuperFunction& ab = t(a, b);
      const SuperFunction& ba = t(b, a);
      const SuperFunction signed_ab = ab * Rational(sign(a, b));
      if (!(ba == signed_ab)) sym = false;
      if (!(ba == -signed_ab)) anti = false;
    }
  if (sym) return SymmetryType::GradedSymmetric;
  if (anti) return SymmetryType::GradedAntisymmetric;
  return SymmetryType::Neither;
}

}  // namespace

SymmetryType symmetry_type(const Tensor2& t) {
  const Chart& c = t.chart();
  return classify(t, [&](int a, int b) { return koszul(c->p(a), c->p(b)); });
}

SymmetryType shifted_symmetry_type(const Tensor2& t) {
  const Chart& c = t.chart();
  return classify(t, [&](int a, int b) { return koszul(c->p(a) + 1, c->p(b) + 1); });
}

Tensor2 parity_shift(const Tensor2& t) {
  Tensor2 out = t;
  SuperMatrix m = t.components();
  for (int a = 0; a < t.size(); ++a)
    if (t.chart()->p(a))
      for (int b = 0; b < t.size(); ++b) m(a, b) = -m(a, b);
  return Tensor2(std::move(m), t.variance());
}

Tensor2 invert(const Tensor2& t) {
  SuperMatrix inv = t.components().inverse();
  return Tensor2(std::move(inv), t.variance() == Variance::Upper ? Variance::Lower : Variance::Upper);
}

Tensor2 darboux_tensor(const Chart& chart) {
  const int n = chart->n_even();
  if (chart->n_odd() != n) throw SupercalcError("Darboux structure needs an n|n chart");
  Tensor2 t(chart, Variance::Upper, Parity::Odd);
  for (int i = 0; i < n; ++i) {
    t.set(i, n + i, SuperFunction(chart, Rational(1)));
    t.set(n + i, i, SuperFunction(chart, Rational(1)));
  }
  return t;
}

Tensor2 odd_riemannian_tensor(const Chart& chart) {
  const int n = chart->n_even();
  if (chart->n_odd() != n) throw SupercalcError("odd Riemannian model needs an n|n chart");
  Tensor2 t(chart, Variance::Upper, Parity::Odd);
  for (int i = 0; i < n; ++i) {
    t.set(i, n + i, SuperFunction(chart, Rational(1)));
    t.set(n + i, i, SuperFunction(chart, Rational(-1)));
  }
  return t;
}

}  // namespace supercalc
