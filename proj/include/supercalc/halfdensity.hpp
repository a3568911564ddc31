#pragma once

#include "supercalc/diffop.hpp"
#include "supercalc/oddpoisson.hpp"
#include "supercalc/supertensor.hpp"

namespace supercalc {

class JacobiFails : public SupercalcError {
 public:
  JacobiFails() : SupercalcError("tensor does not satisfy the Jacobi identity") {}
};

/// Delta = 1/2 (d_B o E^{BA} o d_A + U), i.e. s -> 1/2 (d_B(E^{BA} d_A s) + U s).
/// E must be odd and graded symmetric, U odd or zero.
DiffOperator build_delta(const Tensor2& e, const SuperFunction& u);

/// Field X with Delta^2 = L_X:
/// X^A = 1/4 d_C(E^{CD} d_D d_B E^{BA}) + 1/2 (-1)^{p(A)} E^{AB} d_B U. Throws JacobiFails.
VectorField modular_vf(const Tensor2& e, const SuperFunction& u);

/// L_X on half-densities: 1/2 (D - D^dagger) with D = X^A d_A.
DiffOperator lie_derivative_halfdensity(const VectorField& x);

/// Potential of the canonical operator: zero in Darboux coordinates.
/// Throws SingularBody, JacobiFails.
SuperFunction canonical_potential(const Tensor2& e);

/// Field 1/4 d_C(E^{CD} d_D d_B E^{BA}) d_A, the part of the modular field
/// that does not depend on the potential.
VectorField modular_vf_divergence_part(const Tensor2& e);

}  // namespace supercalc
