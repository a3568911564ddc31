#include "supercalc/superalgebra.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

namespace supercalc {

CoordSystem::CoordSystem(std::vector<std::string> even, std::vector<std::string> odd)
    : n_even_(static_cast<int>(even.size())) {
  names_ = std::move(even);
  names_.insert(names_.end(), odd.begin(), odd.end());
  if (names_.empty()) throw SupercalcError("a chart needs at least one coordinate");
  if (n_even_ > Monomial::kMaxVars)
    throw SupercalcError("at most " + std::to_string(Monomial::kMaxVars) + " even coordinates");
  if (n_odd() > 30) throw SupercalcError("at most 30 odd coordinates");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw SupercalcError("empty coordinate name");
    if (!seen.insert(n).second) throw SupercalcError("duplicate coordinate name '" + n + "'");
  }
}

int CoordSystem::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw UnknownCoordinate("unknown coordinate '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

bool CoordSystem::contains(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

Chart make_chart(std::vector<std::string> even, std::vector<std::string> odd) {
  return std::make_shared<const CoordSystem>(std::move(even), std::move(odd));
}

bool same_chart(const Chart& a, const Chart& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_chart(const Chart& a, const Chart& b) {
  if (!same_chart(a, b)) throw ChartMismatch();
}

bool GrassmannLess::operator()(GrassmannMask a, GrassmannMask b) const {
  const int da = std::popcount(a);
  const int db = std::popcount(b);
  if (da != db) return da < db;
  // equal degree: lexicographic on the increasing index lists
  while (a != b) {
    const int ia = std::countr_zero(a);
    const int ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

int grassmann_product_sign(GrassmannMask a, GrassmannMask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (GrassmannMask rest = b; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    swaps += std::popcount(a >> (j + 1));
  }
  return sign_of(swaps);
}

// ---------------------------------------------------------------------------

SuperFunction::SuperFunction(Chart chart) : chart_(std::move(chart)) {}

SuperFunction::SuperFunction(Chart chart, const Rational& constant) : chart_(std::move(chart)) {
  if (constant != 0) terms_.emplace(0u, RatFunc(nvars(), constant));
}

SuperFunction::SuperFunction(Chart chart, RatFunc body) : chart_(std::move(chart)) {
  if (!body.is_zero()) terms_.emplace(0u, std::move(body));
}

SuperFunction SuperFunction::coordinate(Chart chart, int a) {
  SuperFunction f(chart);
  if (a < 0 || a >= chart->size()) throw UnknownCoordinate("coordinate index out of range");
  const int nv = chart->n_even();
  if (a < nv) {
    f.terms_.emplace(0u, RatFunc(Polynomial::variable(nv, a)));
  } else {
    f.terms_.emplace(GrassmannMask{1} << (a - nv), RatFunc(nv, Rational(1)));
  }
  return f;
}

SuperFunction SuperFunction::monomial(Chart chart, RatFunc coeff, GrassmannMask mask) {
  SuperFunction f(std::move(chart));
  if (!coeff.is_zero()) f.terms_.emplace(mask, std::move(coeff));
  return f;
}

void SuperFunction::erase_zeros() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
}

bool SuperFunction::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.is_constant();
}

RatFunc SuperFunction::body() const {
  auto it = terms_.find(0u);
  if (it == terms_.end()) return RatFunc(nvars());
  return it->second;
}

Parity SuperFunction::parity() const {
  if (terms_.empty()) throw ZeroInput();
  const int p = std::popcount(terms_.begin()->first) & 1;
  for (const auto& [m, c] : terms_)
    if ((std::popcount(m) & 1) != p) throw NonHomogeneous();
  return static_cast<Parity>(p);
}

bool SuperFunction::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int p = std::popcount(terms_.begin()->first) & 1;
  return std::all_of(terms_.begin(), terms_.end(),
                     [p](const auto& kv) { return (std::popcount(kv.first) & 1) == p; });
}

bool SuperFunction::is_even() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return (std::popcount(kv.first) & 1) == 0; });
}

bool SuperFunction::is_odd() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return (std::popcount(kv.first) & 1) == 1; });
}

SuperFunction SuperFunction::even_part() const {
  SuperFunction out(chart_);
  for (const auto& [m, c] : terms_)
    if ((std::popcount(m) & 1) == 0) out.terms_.emplace(m, c);
  return out;
}

SuperFunction SuperFunction::odd_part() const {
  SuperFunction out(chart_);
  for (const auto& [m, c] : terms_)
    if (std::popcount(m) & 1) out.terms_.emplace(m, c);
  return out;
}

bool SuperFunction::is_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return kv.second.is_polynomial(); });
}

int SuperFunction::grassmann_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, std::popcount(m));
  return d;
}

SuperFunction SuperFunction::operator-() const {
  SuperFunction out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

SuperFunction& SuperFunction::operator+=(const SuperFunction& o) {
  if (o.terms_.empty()) {
    if (!chart_) chart_ = o.chart_;
    return *this;
  }
  if (!chart_) chart_ = o.chart_;
  require_same_chart(chart_, o.chart_);
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

SuperFunction& SuperFunction::operator-=(const SuperFunction& o) { return *this += -o; }

SuperFunction& SuperFunction::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

SuperFunction operator*(const SuperFunction& a, const SuperFunction& b) {
  if (a.chart_ && b.chart_) require_same_chart(a.chart_, b.chart_);
  SuperFunction out(a.chart_ ? a.chart_ : b.chart_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const int s = grassmann_product_sign(ma, mb);
      if (s == 0) continue;
      RatFunc c = ca * cb;
      if (s < 0) c = -c;
      auto [it, inserted] = out.terms_.try_emplace(ma | mb, std::move(c));
      if (!inserted) it->second += c;
    }
  }
  out.erase_zeros();
  return out;
}

bool operator==(const SuperFunction& a, const SuperFunction& b) {
  if (a.terms_.empty() && b.terms_.empty()) return true;
  if (!same_chart(a.chart_, b.chart_)) return false;
  return a.terms_ == b.terms_;
}

SuperFunction SuperFunction::partial(int a) const {
  if (!chart_ || a < 0 || a >= chart_->size())
    throw UnknownCoordinate("derivative with respect to an unknown coordinate");
  SuperFunction out(chart_);
  const int nv = chart_->n_even();
  if (a < nv) {
    for (const auto& [m, c] : terms_) {
      RatFunc d = c.derivative(a);
      if (!d.is_zero()) out.terms_.emplace(m, std::move(d));
    }
    return out;
  }
  const int alpha = a - nv;
  const GrassmannMask bit = GrassmannMask{1} << alpha;
  for (const auto& [m, c] : terms_) {
    if (!(m & bit)) continue;
    const int before = std::popcount(m & (bit - 1));
    out.terms_.emplace(m & ~bit, before & 1 ? -c : c);
  }
  return out;
}

SuperFunction SuperFunction::pow(unsigned e) const {
  SuperFunction result(chart_, Rational(1));
  SuperFunction base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

SuperFunction SuperFunction::inverse() const {
  RatFunc b = body();
  if (b.is_zero()) throw NotInvertible("superfunction with zero body is not invertible");
  SuperFunction binv(chart_, b.inverse());
  SuperFunction nil = *this;
  nil.terms_.erase(0u);
  // (b + n)^{-1} = b^{-1} sum_k (-b^{-1} n)^k, terminating by nilpotency
  SuperFunction step = -(binv * nil);
  SuperFunction sum(chart_, Rational(1));
  SuperFunction power = sum;
  for (int k = 0; k <= chart_->n_odd(); ++k) {
    power = power * step;
    if (power.is_zero()) break;
    sum += power;
  }
  return binv * sum;
}

SuperFunction SuperFunction::substitute(std::span<const SuperFunction> images) const {
  if (!chart_) return *this;
  if (static_cast<int>(images.size()) != chart_->size())
    throw ChartMismatch();
  Chart target;
  for (const auto& img : images)
    if (img.chart()) {
      target = img.chart();
      break;
    }
  if (!target) throw SupercalcError("substitution images carry no chart");
  for (const auto& img : images)
    if (img.chart()) require_same_chart(target, img.chart());
  const int nv = chart_->n_even();
  for (int a = 0; a < chart_->size(); ++a) {
    const auto& img = images[static_cast<std::size_t>(a)];
    if (img.is_zero()) continue;
    if (!img.is_homogeneous() || img.parity() != chart_->parity(a))
      throw ParityViolation("image of '" + chart_->name(a) + "' has the wrong parity");
  }

  std::vector<RatFunc> bodies;
  std::vector<SuperFunction> nilpotents;
  for (int a = 0; a < nv; ++a) {
    const auto& img = images[static_cast<std::size_t>(a)];
    RatFunc b = img.is_zero() ? RatFunc(target->n_even()) : img.body();
    SuperFunction n = img - SuperFunction(target, b);
    bodies.push_back(std::move(b));
    nilpotents.push_back(std::move(n));
  }

  // c(b + n) = sum_alpha (d^alpha c)(b) n^alpha / alpha!
  auto compose_coefficient = [&](const RatFunc& c) {
    SuperFunction total(target);
    std::function<void(int, const RatFunc&, const SuperFunction&, Rational)> rec =
        [&](int var, const RatFunc& deriv, const SuperFunction& prod, Rational factorial) {
          if (var == nv) {
            total += SuperFunction(target, compose(deriv, bodies)) * prod * (Rational(1) / factorial);
            return;
          }
          RatFunc d = deriv;
          SuperFunction p = prod;
          Rational f = factorial;
          for (unsigned k = 0;; ++k) {
            if (d.is_zero() || p.is_zero()) break;
            rec(var + 1, d, p, f);
            if (nilpotents[static_cast<std::size_t>(var)].is_zero()) break;
            d = d.derivative(var);
            p = p * nilpotents[static_cast<std::size_t>(var)];
            f *= Rational(k + 1);
          }
        };
    rec(0, c, SuperFunction(target, Rational(1)), Rational(1));
    return total;
  };

  SuperFunction out(target);
  for (const auto& [m, c] : terms_) {
    SuperFunction term = compose_coefficient(c);
    for (GrassmannMask rest = m; rest; rest &= rest - 1) {
      const int alpha = std::countr_zero(rest);
      term = term * images[static_cast<std::size_t>(nv + alpha)];
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

std::string SuperFunction::to_string() const {
  if (terms_.empty()) return "0";
  const auto& names = chart_->names();
  const auto evens = chart_->even_names();
  const int nv = chart_->n_even();
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    for (GrassmannMask rest = m; rest; rest &= rest - 1) {
      if (!mono.empty()) mono += "*";
      mono += names[static_cast<std::size_t>(nv + std::countr_zero(rest))];
    }
    std::string coeff = c.to_string(evens);
    std::string piece;
    if (mono.empty()) {
      piece = coeff;
    } else if (coeff == "1") {
      piece = mono;
    } else if (coeff == "-1") {
      piece = "-" + mono;
    } else if (c.is_polynomial() && c.num().terms().size() == 1) {
      piece = coeff + "*" + mono;
    } else {
      piece = "(" + coeff + ")*" + mono;
    }
    if (first) {
      out = piece;
    } else if (piece.front() == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
    first = false;
  }
  return out;
}

}  // namespace supercalc
