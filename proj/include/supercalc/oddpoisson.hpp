#pragma once

#include "supercalc/diffop.hpp"
#include "supercalc/supertensor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace supercalc {

/// X = X^A d_A with components on the left of the derivatives.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(Chart chart);
  VectorField(Chart chart, std::vector<SuperFunction> components);

  const Chart& chart() const { return chart_; }
  const std::vector<SuperFunction>& components() const { return components_; }
  const SuperFunction& operator[](int a) const { return components_[static_cast<std::size_t>(a)]; }
  SuperFunction& operator[](int a) { return components_[static_cast<std::size_t>(a)]; }
  bool is_zero() const;
  /// Parity of a homogeneous nonzero field; throws otherwise.
  Parity parity() const;
  bool is_homogeneous() const;

  SuperFunction apply(const SuperFunction& f) const;
  DiffOperator as_operator() const;

  VectorField operator-() const;
  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const VectorField& a, const Rational& c);
  friend bool operator==(const VectorField& a, const VectorField& b);

  std::string to_string() const;

 private:
  Chart chart_;
  std::vector<SuperFunction> components_;
};

/// Graded commutator [X, Y] of homogeneous fields.
VectorField commutator(const VectorField& x, const VectorField& y);

enum class JacobiState : std::uint8_t { Unknown, Holds, Fails };

/// One nonzero value of the Jacobi defect on coordinate functions.
struct JacobiWitness {
  int a, b, c;
  SuperFunction value;
};

/// An odd graded-symmetric upper tensor E; the bracket is
/// {f,g} = sum (-1)^{p(f)p(A)} d_A f E^{AB} d_B g, so {x^i, theta_j} = delta.
class OddPoissonStructure {
 public:
  explicit OddPoissonStructure(Tensor2 e);

  const Tensor2& tensor() const { return e_; }
  const Chart& chart() const { return e_.chart(); }
  JacobiState jacobi_state() const { return state_; }
  const std::vector<JacobiWitness>& witnesses() const { return witnesses_; }
  /// Computes the Jacobiator table and caches the verdict.
  const std::vector<JacobiWitness>& verify_jacobi();

 private:
  Tensor2 e_;
  JacobiState state_ = JacobiState::Unknown;
  std::vector<JacobiWitness> witnesses_;
};

/// Odd bracket; non-homogeneous arguments are decomposed bilinearly.
SuperFunction bracket(const SuperFunction& f, const SuperFunction& g, const Tensor2& e);
inline SuperFunction bracket(const SuperFunction& f, const SuperFunction& g, const OddPoissonStructure& p) {
  return bracket(f, g, p.tensor());
}

/// Nonzero entries of {z^A,{z^B,z^C}} - {{z^A,z^B},z^C} - (-1)^{(p(A)+1)(p(B)+1)} {z^B,{z^A,z^C}}.
std::vector<JacobiWitness> jacobiator(const Tensor2& e);

/// D_phi = {phi, .}; parity p(phi) + 1. Throws NonHomogeneous.
VectorField hamiltonian_vf(const SuperFunction& phi, const Tensor2& e);

/// Graded Lie derivative of a rank-2 tensor along a homogeneous field.
Tensor2 lie_derivative(const VectorField& x, const Tensor2& t);

struct PreservationResult {
  bool preserved;
  Tensor2 defect;
};
/// Whether L_X T vanishes; the defect is L_X T.
PreservationResult lie_preserves(const VectorField& x, const Tensor2& t);

}  // namespace supercalc
