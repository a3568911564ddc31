#pragma once

#include "supercalc/superalgebra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace supercalc {

/// Normal-ordered monomial of partial derivatives: even derivatives with
/// multiplicities first, then distinct odd derivatives in increasing index.
struct DerivKey {
  Monomial even;
  GrassmannMask odd = 0;

  unsigned degree() const;
  friend bool operator==(const DerivKey&, const DerivKey&) = default;
};

struct DerivLess {
  bool operator()(const DerivKey& a, const DerivKey& b) const;
};

/// Finite sum  sum_K c_K d^K  with all derivatives to the right of their
/// coefficient. Acts on coefficient functions of half-densities.
class DiffOperator {
 public:
  using TermMap = std::map<DerivKey, SuperFunction, DerivLess>;

  DiffOperator() = default;
  explicit DiffOperator(Chart chart);
  static DiffOperator multiplication(const SuperFunction& f);
  static DiffOperator partial(Chart chart, int a);
  static DiffOperator term(const SuperFunction& coeff, DerivKey key);

  const Chart& chart() const { return chart_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Highest derivative degree with nonzero coefficient; nullopt for zero.
  std::optional<int> order() const;
  /// Parity of a homogeneous nonzero operator; throws otherwise.
  Parity parity() const;
  SuperFunction coefficient(const DerivKey& key) const;
  /// Part of exactly the given derivative degree.
  DiffOperator homogeneous_part(int degree) const;

  DiffOperator operator-() const;
  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  DiffOperator& operator*=(const Rational& c);
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
  friend DiffOperator operator*(DiffOperator a, const Rational& c) { return a *= c; }
  friend bool operator==(const DiffOperator& a, const DiffOperator& b);

  /// Left multiplication by a function: f o D.
  DiffOperator left_multiply(const SuperFunction& f) const;
  /// d_a o D, normal ordered.
  DiffOperator left_partial(int a) const;

  SuperFunction apply(const SuperFunction& f) const;

  std::string to_string() const;

 private:
  void add_term(const DerivKey& key, SuperFunction coeff);

  Chart chart_;
  TermMap terms_;
};

/// Operator product D1 o D2 in normal order.
DiffOperator compose(const DiffOperator& d1, const DiffOperator& d2);

/// Graded formal adjoint with respect to (s1, s2) -> integral of s1 s2 Dz:
/// d_A^dagger = -d_A, f^dagger = f, (PQ)^dagger = (-1)^{p(P)p(Q)} Q^dagger P^dagger.
DiffOperator formal_adjoint(const DiffOperator& d);

/// Derivative keys of a monomial listed left to right as coordinate indices.
std::vector<int> derivative_sequence(const DerivKey& key, const CoordSystem& chart);

}  // namespace supercalc
