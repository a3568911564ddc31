#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace supercalc {

using Rational = mpq_class;

/// Exponent vector packed 8 bits per variable, variable 0 in the most
/// significant byte, so integer order on the key is lexicographic order.
class Monomial {
 public:
  static constexpr int kMaxVars = 8;
  static constexpr unsigned kMaxExponent = 255;

  constexpr Monomial() = default;
  static Monomial var(int index, unsigned power = 1);

  unsigned exponent(int index) const {
    return static_cast<unsigned>((key_ >> shift(index)) & 0xFFu);
  }
  unsigned degree() const;
  bool is_one() const { return key_ == 0; }
  std::uint64_t key() const { return key_; }

  Monomial operator*(Monomial other) const;
  /// True when every exponent of `other` is <= the matching exponent here.
  bool divisible_by(Monomial other) const;
  Monomial operator/(Monomial other) const;
  Monomial with_exponent(int index, unsigned power) const;

  friend bool operator==(Monomial a, Monomial b) { return a.key_ == b.key_; }
  friend auto operator<=>(Monomial a, Monomial b) { return a.key_ <=> b.key_; }

 private:
  static constexpr int shift(int index) { return 8 * (kMaxVars - 1 - index); }
  std::uint64_t key_ = 0;
};

/// Multivariate polynomial over the rationals in a fixed number of variables.
/// Terms are kept sorted by descending monomial with no zero coefficients, so
/// structural equality is mathematical equality.
class Polynomial {
 public:
  using Term = std::pair<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}
  Polynomial(int nvars, const Rational& constant);
  static Polynomial variable(int nvars, int index);
  static Polynomial from_terms(int nvars, std::vector<Term> terms);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  /// Constant term (zero if absent).
  Rational constant_term() const;
  const std::vector<Term>& terms() const { return terms_; }
  /// Lex-leading term; polynomial must be nonzero.
  const Term& leading() const { return terms_.front(); }
  unsigned total_degree() const;
  unsigned degree_in(int var) const;
  bool depends_on(int var) const { return degree_in(var) > 0; }

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }

  Polynomial pow(unsigned e) const;
  Polynomial derivative(int var) const;

  /// Coefficients of this polynomial viewed as univariate in `var`; entry i
  /// multiplies var^i and does not involve var.
  std::vector<Polynomial> coefficients_in(int var) const;

  /// Exact quotient; throws std::domain_error when `divisor` does not divide.
  Polynomial exact_divide(const Polynomial& divisor) const;

  /// Scales so the leading coefficient is 1 (zero stays zero).
  Polynomial monic() const;

  std::string to_string(std::span<const std::string> names) const;

 private:
  void normalize();

  int nvars_ = 0;
  std::vector<Term> terms_;  // descending monomial order
};

/// Greatest common divisor, normalized monic. gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace supercalc
