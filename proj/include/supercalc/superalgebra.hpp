#pragma once

#include "supercalc/ratfunc.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace supercalc {

/// Z/2 grade.
enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline constexpr int as_int(Parity p) { return static_cast<int>(p); }
inline constexpr Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>((as_int(a) + as_int(b)) & 1);
}
/// (-1)^e as +1/-1.
inline constexpr int sign_of(int e) { return (e & 1) ? -1 : 1; }

class SupercalcError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ChartMismatch : public SupercalcError {
 public:
  ChartMismatch() : SupercalcError("operands live on different charts") {}
};
class UnknownCoordinate : public SupercalcError {
 public:
  using SupercalcError::SupercalcError;
};
class NonHomogeneous : public SupercalcError {
 public:
  NonHomogeneous() : SupercalcError("superfunction is not homogeneous") {}
};
class ZeroInput : public SupercalcError {
 public:
  ZeroInput() : SupercalcError("parity of zero is undefined") {}
};
class ParityViolation : public SupercalcError {
 public:
  using SupercalcError::SupercalcError;
};
class NotInvertible : public SupercalcError {
 public:
  using SupercalcError::SupercalcError;
};

/// Ordered coordinates of R^{p|q}; even coordinates come first.
class CoordSystem {
 public:
  CoordSystem(std::vector<std::string> even, std::vector<std::string> odd);

  int size() const { return static_cast<int>(names_.size()); }
  int n_even() const { return n_even_; }
  int n_odd() const { return size() - n_even_; }
  const std::vector<std::string>& names() const { return names_; }
  std::span<const std::string> even_names() const {
    return std::span(names_).first(static_cast<std::size_t>(n_even_));
  }
  const std::string& name(int a) const { return names_.at(static_cast<std::size_t>(a)); }
  Parity parity(int a) const { return a < n_even_ ? Parity::Even : Parity::Odd; }
  int p(int a) const { return a < n_even_ ? 0 : 1; }
  /// Index of a coordinate name; throws UnknownCoordinate.
  int index_of(const std::string& name) const;
  bool contains(const std::string& name) const;

  friend bool operator==(const CoordSystem& a, const CoordSystem& b) {
    return a.names_ == b.names_ && a.n_even_ == b.n_even_;
  }

 private:
  std::vector<std::string> names_;
  int n_even_;
};

using Chart = std::shared_ptr<const CoordSystem>;

Chart make_chart(std::vector<std::string> even, std::vector<std::string> odd);
bool same_chart(const Chart& a, const Chart& b);
void require_same_chart(const Chart& a, const Chart& b);

/// Bitmask of odd-coordinate indices (bit i = i-th odd coordinate). Members
/// are multiplied in increasing index order.
using GrassmannMask = std::uint32_t;

struct GrassmannLess {
  bool operator()(GrassmannMask a, GrassmannMask b) const;
};

/// Sign and product of two Grassmann monomials; sign 0 when they overlap.
int grassmann_product_sign(GrassmannMask a, GrassmannMask b);

/// Element of Q(x)[theta]: rational functions of the even coordinates times
/// Grassmann monomials in the odd ones, kept in normal form. Derivatives act
/// from the left.
class SuperFunction {
 public:
  using TermMap = std::map<GrassmannMask, RatFunc, GrassmannLess>;

  SuperFunction() = default;
  explicit SuperFunction(Chart chart);
  SuperFunction(Chart chart, const Rational& constant);
  SuperFunction(Chart chart, RatFunc body);
  static SuperFunction coordinate(Chart chart, int a);
  static SuperFunction monomial(Chart chart, RatFunc coeff, GrassmannMask mask);

  const Chart& chart() const { return chart_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Grassmann-degree-zero part.
  RatFunc body() const;
  /// Parity of a homogeneous nonzero element; throws ZeroInput / NonHomogeneous.
  Parity parity() const;
  bool is_homogeneous() const;
  bool is_even() const;  // zero counts as both even and odd
  bool is_odd() const;
  SuperFunction even_part() const;
  SuperFunction odd_part() const;
  bool is_polynomial() const;
  /// Highest Grassmann degree present (-1 for zero).
  int grassmann_degree() const;

  SuperFunction operator-() const;
  SuperFunction& operator+=(const SuperFunction& o);
  SuperFunction& operator-=(const SuperFunction& o);
  SuperFunction& operator*=(const Rational& c);
  friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) { return a += b; }
  friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) { return a -= b; }
  friend SuperFunction operator*(const SuperFunction& a, const SuperFunction& b);
  friend SuperFunction operator*(SuperFunction a, const Rational& c) { return a *= c; }
  friend SuperFunction operator*(const Rational& c, SuperFunction a) { return a *= c; }
  friend bool operator==(const SuperFunction& a, const SuperFunction& b);

  /// Left partial derivative with respect to coordinate index a.
  SuperFunction partial(int a) const;
  SuperFunction pow(unsigned e) const;
  /// Inverse of an element with nonzero body (finite geometric series).
  SuperFunction inverse() const;

  /// Composition with a coordinate map: coordinate i of this chart is replaced
  /// by images[i], all living on a common target chart. Images must respect
  /// parity.
  SuperFunction substitute(std::span<const SuperFunction> images) const;

  /// Canonical text; parse(print(f)) == f.
  std::string to_string() const;

 private:
  void erase_zeros();
  int nvars() const { return chart_ ? chart_->n_even() : 0; }

  Chart chart_;
  TermMap terms_;
};

/// Graded commutator sign helper: (-1)^{p(a) p(b)}.
inline int koszul(int pa, int pb) { return sign_of(pa * pb); }

}  // namespace supercalc
