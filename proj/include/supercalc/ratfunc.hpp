#pragma once

#include "supercalc/polynomial.hpp"

#include <span>
#include <string>

namespace supercalc {

/// Reduced fraction of polynomials over the rationals. The denominator is
/// monic and coprime to the numerator; zero is 0/1.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(int nvars) : num_(nvars), den_(nvars, Rational(1)) {}
  RatFunc(int nvars, const Rational& c) : num_(nvars, c), den_(nvars, Rational(1)) {}
  explicit RatFunc(Polynomial p);
  RatFunc(Polynomial num, Polynomial den);

  int nvars() const { return num_.nvars(); }
  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  /// Constant value; only meaningful when is_constant().
  Rational constant_value() const { return num_.constant_term(); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator*=(const Rational& c);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator*(RatFunc a, const Rational& c) { return a *= c; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Multiplicative inverse; throws std::domain_error on zero.
  RatFunc inverse() const;
  RatFunc derivative(int var) const;
  RatFunc pow(unsigned e) const;

  std::string to_string(std::span<const std::string> names) const;

 private:
  void reduce();

  Polynomial num_;
  Polynomial den_;
};

/// Evaluates `p` with variable i replaced by `args[i]`.
RatFunc compose(const Polynomial& p, std::span<const RatFunc> args);
RatFunc compose(const RatFunc& f, std::span<const RatFunc> args);

}  // namespace supercalc
