#include "supercalc/ratfunc.hpp"

#include <map>
#include <stdexcept>

namespace supercalc {

RatFunc::RatFunc(Polynomial p) : num_(std::move(p)), den_(num_.nvars(), Rational(1)) {}

RatFunc::RatFunc(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  reduce();
}

void RatFunc::reduce() {
  const int nv = std::max(num_.nvars(), den_.nvars());
  if (num_.is_zero()) {
    num_ = Polynomial(nv);
    den_ = Polynomial(nv, Rational(1));
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = num_.exact_divide(g);
      den_ = den_.exact_divide(g);
    }
  }
  Rational lc = den_.leading().second;
  if (lc != 1) {
    Rational inv = Rational(1) / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc out = *this;
  out.num_ = -out.num_;
  return out;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_one()) reduce();
    else if (num_.is_zero()) reduce();
    return *this;
  }
  if (den_.is_one()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
  } else if (o.den_.is_one()) {
    num_ += o.num_ * den_;
  } else {
    Polynomial g = gcd(den_, o.den_);
    Polynomial a = o.den_.exact_divide(g);
    Polynomial b = den_.exact_divide(g);
    num_ = num_ * a + o.num_ * b;
    den_ = den_ * a;
  }
  reduce();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RatFunc(std::max(nvars(), o.nvars()));
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  // cross-cancel before multiplying to keep operands small
  Polynomial g1 = gcd(num_, o.den_);
  Polynomial g2 = gcd(o.num_, den_);
  num_ = num_.exact_divide(g1) * o.num_.exact_divide(g2);
  den_ = den_.exact_divide(g2) * o.den_.exact_divide(g1);
  Rational lc = den_.leading().second;
  if (lc != 1) {
    num_ *= Rational(1) / lc;
    den_ *= Rational(1) / lc;
  }
  return *this;
}

RatFunc& RatFunc::operator*=(const Rational& c) {
  if (c == 0) return *this = RatFunc(nvars());
  num_ *= c;
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::derivative(int var) const {
  if (den_.is_one()) return RatFunc(num_.derivative(var));
  const Polynomial dd = den_.derivative(var);
  if (dd.is_zero()) return RatFunc(num_.derivative(var), den_);
  // (n/d)' = (n' d - n d') / d^2; factors of d that depend on var cancel exactly through gcd(d, d')
  const Polynomial g = gcd(den_, dd);
  RatFunc out;
  out.num_ = num_.derivative(var) * den_.exact_divide(g) - num_ * dd.exact_divide(g);
  out.den_ = den_ * den_.exact_divide(g);
  if (out.num_.is_zero()) return RatFunc(nvars());
  // factors of d free of var survive in g with full multiplicity and may still cancel
  if (!g.is_constant()) {
    const Polynomial g2 = gcd(out.num_, g);
    if (!g2.is_constant()) {
      out.num_ = out.num_.exact_divide(g2);
      out.den_ = out.den_.exact_divide(g2);
    }
  }
  const Rational lc = out.den_.leading().second;
  if (lc != 1) {
    out.num_ *= Rational(1) / lc;
    out.den_ *= Rational(1) / lc;
  }
  return out;
}

RatFunc RatFunc::pow(unsigned e) const {
  RatFunc out;
  out.num_ = num_.pow(e);
  out.den_ = den_.pow(e);
  return out;
}

std::string RatFunc::to_string(std::span<const std::string> names) const {
  if (den_.is_one()) return num_.to_string(names);
  std::string n = num_.to_string(names);
  std::string d = den_.to_string(names);
  if (num_.terms().size() > 1) n = "(" + n + ")";
  // a lone power of one variable binds tighter than '/', anything else needs parentheses
  const bool atomic = den_.terms().size() == 1 && den_.terms().front().second == 1 &&
                      [&] {
                        int factors = 0;
                        for (int i = 0; i < den_.nvars(); ++i)
                          if (den_.terms().front().first.exponent(i) > 0) ++factors;
                        return factors == 1;
                      }();
  if (!atomic) d = "(" + d + ")";
  return n + "/" + d;
}

RatFunc compose(const Polynomial& p, std::span<const RatFunc> args) {
  const int nv = args.empty() ? p.nvars() : args.front().nvars();
  RatFunc out(nv);
  std::map<std::pair<int, unsigned>, RatFunc> powers;
  auto power = [&](int var, unsigned e) -> const RatFunc& {
    auto it = powers.find({var, e});
    if (it == powers.end()) it = powers.emplace(std::pair{var, e}, args[static_cast<std::size_t>(var)].pow(e)).first;
    return it->second;
  };
  for (const auto& [m, c] : p.terms()) {
    RatFunc term(nv, c);
    for (int i = 0; i < p.nvars(); ++i)
      if (unsigned e = m.exponent(i)) term *= power(i, e);
    out += term;
  }
  return out;
}

RatFunc compose(const RatFunc& f, std::span<const RatFunc> args) {
  RatFunc n = compose(f.num(), args);
  if (f.is_polynomial()) return n;
  return n * compose(f.den(), args).inverse();
}

}  // namespace supercalc
