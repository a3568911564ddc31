#pragma once

#include "supercalc/superalgebra.hpp"

#include <string>
#include <vector>

namespace supercalc {

class SingularBody : public SupercalcError {
 public:
  SingularBody(int rank, int size)
      : SupercalcError("matrix body is singular (rank " + std::to_string(rank) + " of " +
                       std::to_string(size) + ")"),
        rank_(rank) {}
  int rank() const { return rank_; }

 private:
  int rank_;
};

class SingularOddBlock : public SupercalcError {
 public:
  SingularOddBlock() : SupercalcError("odd-odd block has a singular body") {}
};

/// Square matrix of superfunctions over a chart, laid out in the chart's
/// coordinate order (even rows/columns first). Entry (A,B) of a homogeneous
/// matrix has parity p(A) + p(B) + intrinsic parity.
class SuperMatrix {
 public:
  SuperMatrix() = default;
  SuperMatrix(Chart chart, Parity intrinsic = Parity::Even);
  static SuperMatrix identity(Chart chart);

  const Chart& chart() const { return chart_; }
  int size() const { return n_; }
  Parity intrinsic_parity() const { return parity_; }

  const SuperFunction& operator()(int r, int c) const { return data_[idx(r, c)]; }
  SuperFunction& operator()(int r, int c) { return data_[idx(r, c)]; }

  /// True when every entry has the parity its position demands.
  bool parity_consistent() const;
  /// Grassmann-degree-zero part.
  std::vector<std::vector<RatFunc>> body() const;
  /// Rank of the body over the field of rational functions.
  int body_rank() const;

  friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b);
  friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b);
  friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b);
  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b);

  /// Two-sided inverse; throws SingularBody.
  SuperMatrix inverse() const;

 private:
  std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r * n_ + c); }

  Chart chart_;
  int n_ = 0;
  Parity parity_ = Parity::Even;
  std::vector<SuperFunction> data_;
};

/// Inverse of a square matrix of superfunctions (plain ordered products, no
/// block signs) with invertible body.
std::vector<std::vector<SuperFunction>> invert_matrix(const std::vector<std::vector<SuperFunction>>& m,
                                                      const Chart& chart);

/// Determinant of a matrix whose entries are even (hence commute).
SuperFunction even_determinant(const std::vector<std::vector<SuperFunction>>& m, const Chart& chart);

/// Ber [[A,B],[C,D]] = det(A - B D^{-1} C) / det(D). Requires even intrinsic
/// parity; throws SingularOddBlock.
SuperFunction berezinian(const SuperMatrix& m);
/// The same quantity through det(A) / det(D - C A^{-1} B); needs A invertible.
SuperFunction berezinian_via_even_block(const SuperMatrix& m);

enum class Variance : std::uint8_t { Upper, Lower };
enum class SymmetryType : std::uint8_t { GradedSymmetric, GradedAntisymmetric, Neither };

std::string to_string(SymmetryType s);

/// Rank-2 tensor field E^{AB} (upper) or E_{AB} (lower) with homogeneous
/// components of parity p(A) + p(B) + intrinsic parity.
class Tensor2 {
 public:
  Tensor2() = default;
  Tensor2(Chart chart, Variance variance, Parity intrinsic);
  Tensor2(SuperMatrix components, Variance variance);

  const Chart& chart() const { return components_.chart(); }
  Variance variance() const { return variance_; }
  Parity intrinsic_parity() const { return components_.intrinsic_parity(); }
  int size() const { return components_.size(); }
  const SuperMatrix& components() const { return components_; }

  const SuperFunction& operator()(int a, int b) const { return components_(a, b); }
  /// Sets a component after checking its parity.
  void set(int a, int b, SuperFunction value);

  bool is_constant() const;
  bool is_zero() const;
  friend bool operator==(const Tensor2& a, const Tensor2& b) {
    return a.variance_ == b.variance_ && a.components_ == b.components_;
  }

 private:
  SuperMatrix components_;
  Variance variance_ = Variance::Upper;
};

/// Classifies against E^{BA} = +-(-1)^{p(A)p(B)} E^{AB}. The zero tensor
/// counts as symmetric.
SymmetryType symmetry_type(const Tensor2& t);
/// Classifies against X^{AB} = +-(-1)^{(p(A)+1)(p(B)+1)} X^{BA}, symmetry
/// with respect to reversed parity.
SymmetryType shifted_symmetry_type(const Tensor2& t);
/// X^{AB} -> (-1)^{p(A)} X^{AB}.
Tensor2 parity_shift(const Tensor2& t);
/// Tensor of opposite variance with sum_B T^{AB} L_{BC} = delta^A_C. Throws
/// SingularBody carrying the body rank.
Tensor2 invert(const Tensor2& t);

/// Constant S = [[0, I], [I, 0]] on R^{n|n}.
Tensor2 darboux_tensor(const Chart& chart);
/// Constant G = [[0, I], [-I, 0]] on R^{n|n}.
Tensor2 odd_riemannian_tensor(const Chart& chart);

}  // namespace supercalc
