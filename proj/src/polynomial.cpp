#include "supercalc/polynomial.hpp"

#include <optional>

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace supercalc {

Monomial Monomial::var(int index, unsigned power) {
  return Monomial{}.with_exponent(index, power);
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (int i = 0; i < kMaxVars; ++i) d += exponent(i);
  return d;
}

// Byte-wise carries and borrows show up in the low bit of the next byte.
constexpr std::uint64_t kByteCarry = 0x0101010101010100ULL;

Monomial Monomial::operator*(Monomial other) const {
  Monomial out;
  out.key_ = key_ + other.key_;
  if (((key_ ^ other.key_ ^ out.key_) & kByteCarry) || out.key_ < key_)
    throw std::overflow_error("monomial exponent overflow");
  return out;
}

bool Monomial::divisible_by(Monomial other) const {
  const std::uint64_t diff = key_ - other.key_;
  return !((key_ ^ other.key_ ^ diff) & kByteCarry) && key_ >= other.key_;
}

Monomial Monomial::operator/(Monomial other) const {
  Monomial out;
  out.key_ = key_ - other.key_;
  return out;
}

Monomial Monomial::with_exponent(int index, unsigned power) const {
  if (power > kMaxExponent) throw std::overflow_error("monomial exponent overflow");
  Monomial out;
  const std::uint64_t mask = std::uint64_t{0xFF} << shift(index);
  out.key_ = (key_ & ~mask) | (std::uint64_t{power} << shift(index));
  return out;
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(int nvars, const Rational& constant) : nvars_(nvars) {
  if (constant != 0) terms_.emplace_back(Monomial{}, constant);
}

Polynomial Polynomial::variable(int nvars, int index) {
  Polynomial p(nvars);
  p.terms_.emplace_back(Monomial::var(index), Rational(1));
  return p;
}

Polynomial Polynomial::from_terms(int nvars, std::vector<Term> terms) {
  Polynomial p(nvars);
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first > b.first; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().first == t.first) {
      merged.back().second += t.second;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.second == 0; });
  terms_ = std::move(merged);
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first.is_one());
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_.front().first.is_one() && terms_.front().second == 1;
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
  return Rational(0);
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

unsigned Polynomial::degree_in(int var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    nvars_ = std::max(nvars_, other.nvars_);
    return *this;
  }
  nvars_ = std::max(nvars_, other.nvars_);
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() && b != other.terms_.end()) {
    if (a->first > b->first) {
      out.push_back(std::move(*a++));
    } else if (b->first > a->first) {
      out.push_back(*b++);
    } else {
      Rational c = a->second + b->second;
      if (c != 0) out.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  for (; a != terms_.end(); ++a) out.push_back(std::move(*a));
  for (; b != other.terms_.end(); ++b) out.push_back(*b);
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(a.nvars_, b.nvars_));
  if (a.is_zero() || b.is_zero()) return out;
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.terms_.emplace_back(ma * mb, ca * cb);
  out.normalize();
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(nvars_, Rational(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_) {
    unsigned e = m.exponent(var);
    if (e == 0) continue;
    out.terms_.emplace_back(m.with_exponent(var, e - 1), c * e);
  }
  out.normalize();
  return out;
}

std::vector<Polynomial> Polynomial::coefficients_in(int var) const {
  std::vector<Polynomial> coeffs(degree_in(var) + 1, Polynomial(nvars_));
  std::vector<std::vector<Term>> buckets(coeffs.size());
  for (const auto& [m, c] : terms_) buckets[m.exponent(var)].emplace_back(m.with_exponent(var, 0), c);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = from_terms(nvars_, std::move(buckets[i]));
  return coeffs;
}

Polynomial Polynomial::exact_divide(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  if (divisor.is_constant()) {
    Polynomial out = *this;
    out *= Rational(1) / divisor.leading().second;
    return out;
  }
  // remainder keyed by descending monomial; each step touches |divisor| entries
  std::map<Monomial, Rational, std::greater<>> remainder;
  for (const auto& [m, c] : terms_) remainder.emplace(m, c);
  std::vector<Term> quotient;
  const auto& [lm, lc] = divisor.leading();
  while (!remainder.empty()) {
    const auto top = remainder.begin();
    if (!top->first.divisible_by(lm)) throw std::domain_error("polynomial division is not exact");
    const Monomial qm = top->first / lm;
    const Rational qc = top->second / lc;
    remainder.erase(top);
    for (auto it = std::next(divisor.terms_.begin()); it != divisor.terms_.end(); ++it) {
      const Monomial m = qm * it->first;
      auto [slot, fresh] = remainder.try_emplace(m, 0);
      slot->second -= qc * it->second;
      if (slot->second == 0) remainder.erase(slot);
    }
    quotient.emplace_back(qm, qc);
  }
  Polynomial out(std::max(nvars_, divisor.nvars_));
  out.terms_ = std::move(quotient);  // produced in descending order
  return out;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial out = *this;
  out *= Rational(1) / leading().second;
  return out;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  // graded order for display: higher total degree first, then lex
  std::vector<const Term*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](const Term* a, const Term* b) {
    return a->first.degree() > b->first.degree();
  });
  std::ostringstream os;
  bool first = true;
  for (const Term* t : order) {
    Rational c = t->second;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    c = abs(c);
    const bool unit = c == 1;
    if (!unit || t->first.is_one()) {
      os << c.get_str();
      if (!t->first.is_one()) os << "*";
    }
    bool first_factor = true;
    for (int i = 0; i < nvars_; ++i) {
      unsigned e = t->first.exponent(i);
      if (e == 0) continue;
      if (!first_factor) os << "*";
      first_factor = false;
      os << names[static_cast<std::size_t>(i)];
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

/// Main variable for the remainder sequence: one present in only one operand
/// if any (its content step removes it), else the one of least degree.
int main_variable(const Polynomial& a, const Polynomial& b) {
  int best = -1;
  unsigned best_degree = 0;
  for (int v = 0; v < std::max(a.nvars(), b.nvars()); ++v) {
    const unsigned da = a.degree_in(v), db = b.degree_in(v);
    if (!da && !db) continue;
    if (!da || !db) return v;
    const unsigned d = std::max(da, db);
    if (best < 0 || d < best_degree) {
      best = v;
      best_degree = d;
    }
  }
  return best;
}

/// Scales to integer coefficients with unit content and positive leading term.
Polynomial integer_primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  mpz_class den = 1;
  mpz_class num = 0;
  for (const auto& [m, c] : p.terms()) {
    den = lcm(den, mpz_class(c.get_den()));
    num = gcd(num, mpz_class(c.get_num()));
  }
  Rational scale(den, num);
  scale.canonicalize();
  if (p.leading().second < 0) scale = -scale;
  return p * scale;
}

constexpr std::uint64_t kPrime = 2147483647;  // 2^31 - 1

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (b %= kPrime; e; e >>= 1, b = b * b % kPrime)
    if (e & 1) r = r * b % kPrime;
  return r;
}

std::uint64_t to_mod(const Rational& c) {
  mpz_class n = c.get_num() % static_cast<unsigned long>(kPrime);
  if (n < 0) n += static_cast<unsigned long>(kPrime);
  mpz_class d = c.get_den() % static_cast<unsigned long>(kPrime);
  return n.get_ui() * mod_pow(d.get_ui(), kPrime - 2) % kPrime;
}

/// Image of p in Z_p[v] after evaluating every other variable at `point`.
std::vector<std::uint64_t> univariate_image(const Polynomial& p, int v, const std::vector<std::uint64_t>& point) {
  std::vector<std::uint64_t> out(p.degree_in(v) + 1, 0);
  for (const auto& [m, c] : p.terms()) {
    std::uint64_t t = to_mod(c);
    for (int i = 0; i < p.nvars(); ++i)
      if (i != v && m.exponent(i)) t = t * mod_pow(point[static_cast<std::size_t>(i)], m.exponent(i)) % kPrime;
    auto& slot = out[m.exponent(v)];
    slot = (slot + t) % kPrime;
  }
  return out;
}

void trim(std::vector<std::uint64_t>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Degree of gcd in Z_p[v]; -1 when both are zero.
int univariate_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t inv = mod_pow(b.back(), kPrime - 2);
    while (a.size() >= b.size()) {
      const std::uint64_t f = a.back() * inv % kPrime;
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[i + shift] = (a[i + shift] + kPrime - f * b[i] % kPrime) % kPrime;
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

/// Upper bound on deg_v gcd(a, b) from one modular image; nullopt when the
/// evaluation point is unlucky (a leading coefficient vanishes).
std::optional<int> gcd_degree_bound(const Polynomial& a, const Polynomial& b, int v) {
  std::vector<std::uint64_t> point(static_cast<std::size_t>(a.nvars()));
  for (std::size_t i = 0; i < point.size(); ++i) point[i] = 1000003 + 7919 * i * i + 104729 * i;
  auto ia = univariate_image(a, v, point);
  auto ib = univariate_image(b, v, point);
  if (ia.back() == 0 || ib.back() == 0) return std::nullopt;
  return univariate_gcd_degree(std::move(ia), std::move(ib));
}

Polynomial content_in(const Polynomial& p, int var) {
  Polynomial g(p.nvars());
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Polynomial primitive_part(const Polynomial& p, int var) {
  if (p.is_zero()) return p;
  return p.exact_divide(content_in(p, var));
}

mpz_class max_norm(const Polynomial& p) {
  mpz_class n = 0;
  for (const auto& [m, c] : p.terms()) n = std::max(n, mpz_class(abs(c.get_num())));
  return n;
}

mpz_class integer_content(const Polynomial& p) {
  mpz_class g = 0;
  for (const auto& [m, c] : p.terms()) g = gcd(g, mpz_class(c.get_num()));
  return g;
}

/// p with variable v set to the integer x.
Polynomial evaluate_at(const Polynomial& p, int v, const mpz_class& x) {
  std::vector<Polynomial::Term> terms;
  for (const auto& [m, c] : p.terms()) {
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), x.get_mpz_t(), m.exponent(v));
    terms.emplace_back(m.with_exponent(v, 0), c * Rational(power));
  }
  return Polynomial::from_terms(p.nvars(), std::move(terms));
}

/// Inverse of evaluate_at for a value with small coefficients: expands each
/// integer coefficient in base x with digits in (-x/2, x/2].
Polynomial interpolate_at(Polynomial h, int v, const mpz_class& x) {
  const mpz_class half = x / 2;
  std::vector<Polynomial::Term> out;
  for (unsigned i = 0; !h.is_zero(); ++i) {
    if (i > Monomial::kMaxExponent) throw std::overflow_error("monomial exponent overflow");
    std::vector<Polynomial::Term> digit, rest;
    for (const auto& [m, c] : h.terms()) {
      mpz_class d = mpz_class(c.get_num()) % x;  // sign follows the dividend
      if (d > half) d -= x;
      if (d < -half) d += x;
      if (d != 0) {
        digit.emplace_back(m, Rational(d));
        out.emplace_back(m.with_exponent(v, i), Rational(d));
      }
      const mpz_class q = (mpz_class(c.get_num()) - d) / x;
      if (q != 0) rest.emplace_back(m, Rational(q));
    }
    h = Polynomial::from_terms(h.nvars(), std::move(rest));
  }
  return Polynomial::from_terms(h.nvars(), std::move(out));
}

bool divides(const Polynomial& d, const Polynomial& p) {
  try {
    p.exact_divide(d);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

/// Heuristic gcd of integer polynomials: evaluate one variable at a large
/// integer, recurse, rebuild by base-x expansion and keep the candidate only
/// if it divides both inputs. The result carries the common integer content.
std::optional<Polynomial> heuristic_gcd(const Polynomial& f, const Polynomial& g) {
  const int nv = std::max(f.nvars(), g.nvars());
  int v = -1;
  for (int i = 0; i < nv && v < 0; ++i)
    if (f.depends_on(i) || g.depends_on(i)) v = i;
  const mpz_class cf = integer_content(f), cg = integer_content(g);
  const mpz_class common = gcd(cf, cg);
  if (v < 0) return Polynomial(nv, Rational(common));
  const Polynomial pf = f * Rational(mpz_class(1), cf), pg = g * Rational(mpz_class(1), cg);
  const mpz_class nf = max_norm(pf), ng = max_norm(pg);
  const mpz_class b = 2 * std::min(nf, ng) + 29;
  mpz_class x = std::max(mpz_class(std::min(b, mpz_class(99 * sqrt(b)))),
                         mpz_class(2 * std::min(nf / abs(mpz_class(pf.leading().second.get_num())),
                                                ng / abs(mpz_class(pg.leading().second.get_num()))) +
                                   4));
  for (int attempt = 0; attempt < 6; ++attempt) {
    const Polynomial ef = evaluate_at(pf, v, x), eg = evaluate_at(pg, v, x);
    if (!ef.is_zero() && !eg.is_zero()) {
      if (auto eh = heuristic_gcd(ef, eg)) {
        Polynomial h = interpolate_at(*eh, v, x);
        if (!h.is_zero()) {
          h *= Rational(mpz_class(1), integer_content(h));
          if (divides(h, pf) && divides(h, pg)) return h * Rational(common);
        }
      }
    }
    x = 73794 * x * sqrt(sqrt(x)) / 27011;
  }
  return std::nullopt;
}

/// Remainder of a by b in var up to a factor lc(b)^k. The factor does not
/// matter here since the caller takes primitive parts.
Polynomial sparse_pseudo_remainder(const Polynomial& a, const Polynomial& b, int var) {
  const unsigned db = b.degree_in(var);
  const Polynomial lc = b.coefficients_in(var).back();
  Polynomial r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    const unsigned dr = r.degree_in(var);
    const Polynomial lr = r.coefficients_in(var).back();
    const Polynomial shift = Polynomial::from_terms(r.nvars(), {{Monomial::var(var, dr - db), Rational(1)}});
    r = lc * r - lr * shift * b;
  }
  return r;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const int nv = std::max(a.nvars(), b.nvars());
  if (a.is_constant() || b.is_constant()) return Polynomial(nv, Rational(1));
  // constant gcd when no variable survives in the modular images
  bool coprime = true;
  for (int w = 0; w < nv && coprime; ++w) {
    if (!a.depends_on(w) || !b.depends_on(w)) continue;
    const auto bound = gcd_degree_bound(a, b, w);
    coprime = bound && *bound == 0;
  }
  if (coprime) return Polynomial(nv, Rational(1));
  const int v = main_variable(a, b);
  if (!a.depends_on(v)) return gcd(a, content_in(b, v));
  if (!b.depends_on(v)) return gcd(content_in(a, v), b);

  try {
    if (auto h = heuristic_gcd(integer_primitive(a), integer_primitive(b))) return h->monic();
  } catch (const std::overflow_error&) {
  }

  Polynomial ca = content_in(a, v);
  Polynomial cb = content_in(b, v);
  Polynomial p = integer_primitive(a.exact_divide(ca));
  Polynomial q = integer_primitive(b.exact_divide(cb));
  if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);
  // a modular image bounds the degree of the gcd from above
  if (auto bound = gcd_degree_bound(p, q, v)) {
    if (*bound == 0) return gcd(ca, cb);
    if (*bound == static_cast<int>(q.degree_in(v))) {
      try {
        p.exact_divide(q);
        return (gcd(ca, cb) * q).monic();
      } catch (const std::domain_error&) {
      }
    }
  }
  while (!q.is_zero()) {
    Polynomial r = sparse_pseudo_remainder(p, q, v);
    p = std::move(q);
    q = integer_primitive(primitive_part(r, v));
  }
  Polynomial g = gcd(ca, cb);
  if (p.degree_in(v) > 0) g = g * primitive_part(p, v);
  return g.monic();
}

}  // namespace supercalc
