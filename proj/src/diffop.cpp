#include "supercalc/diffop.hpp"

#include <bit>
#include <functional>
#include <sstream>

namespace supercalc {

unsigned DerivKey::degree() const { return even.degree() + static_cast<unsigned>(std::popcount(odd)); }

bool DerivLess::operator()(const DerivKey& a, const DerivKey& b) const {
  const unsigned da = a.degree();
  const unsigned db = b.degree();
  if (da != db) return da < db;
  if (a.even != b.even) return a.even > b.even;
  return GrassmannLess{}(a.odd, b.odd);
}

std::vector<int> derivative_sequence(const DerivKey& key, const CoordSystem& chart) {
  std::vector<int> seq;
  for (int i = 0; i < chart.n_even(); ++i)
    for (unsigned e = key.even.exponent(i); e > 0; --e) seq.push_back(i);
  for (GrassmannMask rest = key.odd; rest; rest &= rest - 1)
    seq.push_back(chart.n_even() + std::countr_zero(rest));
  return seq;
}

namespace {

/// Splits d^K = d_first o d^{rest}.
std::pair<int, DerivKey> split_first(const DerivKey& key, const CoordSystem& chart) {
  for (int i = 0; i < chart.n_even(); ++i)
    if (unsigned e = key.even.exponent(i)) return {i, DerivKey{key.even.with_exponent(i, e - 1), key.odd}};
  const int alpha = std::countr_zero(key.odd);
  return {chart.n_even() + alpha, DerivKey{key.even, key.odd & (key.odd - 1)}};
}

/// Sign of the term parity c d^K for a homogeneous coefficient.
int term_parity(const SuperFunction& c, const DerivKey& key) {
  return as_int(c.parity()) + std::popcount(key.odd);
}

}  // namespace

DiffOperator::DiffOperator(Chart chart) : chart_(std::move(chart)) {}

DiffOperator DiffOperator::multiplication(const SuperFunction& f) {
  DiffOperator d(f.chart());
  if (!f.is_zero()) d.terms_.emplace(DerivKey{}, f);
  return d;
}

DiffOperator DiffOperator::partial(Chart chart, int a) {
  DiffOperator d(chart);
  DerivKey key;
  if (a < chart->n_even()) key.even = Monomial::var(a);
  else key.odd = GrassmannMask{1} << (a - chart->n_even());
  d.terms_.emplace(key, SuperFunction(chart, Rational(1)));
  return d;
}

DiffOperator DiffOperator::term(const SuperFunction& coeff, DerivKey key) {
  DiffOperator d(coeff.chart());
  if (!coeff.is_zero()) d.terms_.emplace(key, coeff);
  return d;
}

void DiffOperator::add_term(const DerivKey& key, SuperFunction coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, std::move(coeff));
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::optional<int> DiffOperator::order() const {
  if (terms_.empty()) return std::nullopt;
  return static_cast<int>(terms_.rbegin()->first.degree());
}

Parity DiffOperator::parity() const {
  if (terms_.empty()) throw ZeroInput();
  int p = -1;
  for (const auto& [key, c] : terms_) {
    if (!c.is_homogeneous()) throw NonHomogeneous();
    const int tp = term_parity(c, key) & 1;
    if (p == -1) p = tp;
    else if (p != tp) throw NonHomogeneous();
  }
  return static_cast<Parity>(p);
}

SuperFunction DiffOperator::coefficient(const DerivKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? SuperFunction(chart_) : it->second;
}

DiffOperator DiffOperator::homogeneous_part(int degree) const {
  DiffOperator out(chart_);
  for (const auto& [key, c] : terms_)
    if (static_cast<int>(key.degree()) == degree) out.terms_.emplace(key, c);
  return out;
}

DiffOperator DiffOperator::operator-() const {
  DiffOperator out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  if (!chart_) chart_ = o.chart_;
  if (o.chart_) require_same_chart(chart_, o.chart_);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) { return *this += -o; }

DiffOperator& DiffOperator::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

bool operator==(const DiffOperator& a, const DiffOperator& b) {
  if (a.terms_.empty() && b.terms_.empty()) return true;
  return same_chart(a.chart_, b.chart_) && a.terms_ == b.terms_;
}

DiffOperator DiffOperator::left_multiply(const SuperFunction& f) const {
  DiffOperator out(chart_ ? chart_ : f.chart());
  if (f.is_zero()) return out;
  for (const auto& [k, c] : terms_) out.add_term(k, f * c);
  return out;
}

DiffOperator DiffOperator::left_partial(int a) const {
  DiffOperator out(chart_);
  const int nv = chart_->n_even();
  const int pa = chart_->p(a);
  for (const auto& [key, c] : terms_) {
    // d_a (c d^K) = (d_a c) d^K + (-1)^{p(a) p(c)} c d_a d^K
    out.add_term(key, c.partial(a));
    DerivKey shifted = key;
    int sign = 1;
    if (pa == 0) {
      shifted.even = key.even * Monomial::var(a);
    } else {
      const GrassmannMask bit = GrassmannMask{1} << (a - nv);
      if (key.odd & bit) continue;
      sign = sign_of(std::popcount(key.odd & (bit - 1)));
      shifted.odd = key.odd | bit;
    }
    if (pa == 0) {
      out.add_term(shifted, c);
    } else {
      SuperFunction even = c.even_part();
      SuperFunction odd = c.odd_part();
      out.add_term(shifted, (even - odd) * Rational(sign));
    }
  }
  return out;
}

SuperFunction DiffOperator::apply(const SuperFunction& f) const {
  SuperFunction out(chart_);
  std::map<DerivKey, SuperFunction, DerivLess> cache;
  std::function<const SuperFunction&(const DerivKey&)> derive = [&](const DerivKey& key) -> const SuperFunction& {
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    SuperFunction value(chart_);
    if (key.degree() == 0) {
      value = f;
    } else {
      auto [first, rest] = split_first(key, *chart_);
      value = derive(rest).partial(first);
    }
    return cache.emplace(key, std::move(value)).first->second;
  };
  for (const auto& [key, c] : terms_) out += c * derive(key);
  return out;
}

DiffOperator compose(const DiffOperator& d1, const DiffOperator& d2) {
  if (d1.is_zero() || d2.is_zero()) return DiffOperator(d1.chart() ? d1.chart() : d2.chart());
  require_same_chart(d1.chart(), d2.chart());
  const Chart& chart = d1.chart();
  std::map<DerivKey, DiffOperator, DerivLess> cache;
  std::function<const DiffOperator&(const DerivKey&)> derive = [&](const DerivKey& key) -> const DiffOperator& {
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    DiffOperator value(chart);
    if (key.degree() == 0) {
      value = d2;
    } else {
      auto [first, rest] = split_first(key, *chart);
      value = derive(rest).left_partial(first);
    }
    return cache.emplace(key, std::move(value)).first->second;
  };
  DiffOperator out(chart);
  for (const auto& [key, c] : d1.terms()) out += derive(key).left_multiply(c);
  return out;
}

DiffOperator formal_adjoint(const DiffOperator& d) {
  DiffOperator out(d.chart());
  if (d.is_zero()) return out;
  const Chart& chart = d.chart();
  for (const auto& [key, coeff] : d.terms()) {
    const std::vector<int> seq = derivative_sequence(key, *chart);
    for (const SuperFunction& c : {coeff.even_part(), coeff.odd_part()}) {
      if (c.is_zero()) continue;
      // factors F0 = c, F1..Fn = derivatives; reversal sign and one -1 per derivative
      std::vector<int> parities{as_int(c.parity())};
      for (int a : seq) parities.push_back(chart->p(a));
      int exponent = static_cast<int>(seq.size());
      for (std::size_t i = 0; i < parities.size(); ++i)
        for (std::size_t j = i + 1; j < parities.size(); ++j) exponent += parities[i] * parities[j];
      DiffOperator piece = DiffOperator::multiplication(c);
      for (int a : seq) piece = piece.left_partial(a);
      if (exponent & 1) piece = -piece;
      out += piece;
    }
  }
  return out;
}

std::string DiffOperator::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [key, c] = *it;
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    if (key.degree() > 0) {
      os << "*d[";
      bool first_index = true;
      for (int a : derivative_sequence(key, *chart_)) {
        if (!first_index) os << ",";
        first_index = false;
        os << chart_->name(a);
      }
      os << "]";
    }
  }
  return os.str();
}

}  // namespace supercalc
