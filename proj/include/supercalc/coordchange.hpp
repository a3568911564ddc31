#pragma once

#include "supercalc/diffop.hpp"
#include "supercalc/supertensor.hpp"

#include <vector>

namespace supercalc {

/// Coordinate change z -> z' = phi(z): image[A'] is z'^{A'} written in the
/// source coordinates. Parities are preserved and the body Jacobian is
/// invertible.
class SuperDiffeo {
 public:
  SuperDiffeo(Chart source, Chart target, std::vector<SuperFunction> images);
  static SuperDiffeo identity(Chart chart);

  const Chart& source() const { return source_; }
  const Chart& target() const { return target_; }
  const std::vector<SuperFunction>& images() const { return images_; }
  const SuperFunction& image(int a) const { return images_[static_cast<std::size_t>(a)]; }

  /// f o phi^{-1}: a source-chart function rewritten in target coordinates.
  SuperFunction pull_back_inverse(const SuperFunction& f) const;
  /// Source coordinates as functions of the target ones.
  const std::vector<SuperFunction>& inverse_images() const { return inverse_; }
  SuperDiffeo inverse() const;

 private:
  Chart source_;
  Chart target_;
  std::vector<SuperFunction> images_;
  std::vector<SuperFunction> inverse_;
};

/// psi o phi: first phi, then psi.
SuperDiffeo compose(const SuperDiffeo& psi, const SuperDiffeo& phi);

/// Matrix (z'^{A'} d<_B): row A' is the target coordinate, column B the
/// source coordinate, entries are right derivatives. Chain rule is the plain
/// matrix product.
SuperMatrix jacobian(const SuperDiffeo& phi);
/// J = Ber of the Jacobian as a function of the source coordinates, so that
/// Dz' = J Dz.
SuperFunction ber_jacobian(const SuperDiffeo& phi);

/// Transport of a contravariant tensor, expressed in target coordinates.
Tensor2 pushforward_tensor(const Tensor2& t, const SuperDiffeo& phi);

/// Potential of the transported operator: U' = U + 1/2 d_A'(E'^{A'B'} d_B' log J)
/// - 1/4 d_A' log J E'^{A'B'} d_B' log J with J = Dz'/Dz, all in target coordinates.
SuperFunction transform_potential(const SuperFunction& u, const Tensor2& e, const SuperDiffeo& phi);

/// J^{-1/2} D J^{1/2} rewritten in the target chart, acting on half-density
/// coefficients.
DiffOperator conjugate_operator(const DiffOperator& d, const SuperDiffeo& phi);

/// True when E is exactly the constant S pattern.
bool is_darboux(const Tensor2& e);

}  // namespace supercalc
