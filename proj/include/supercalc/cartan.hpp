#pragma once

#include "supercalc/oddpoisson.hpp"
#include "supercalc/supertensor.hpp"

#include <map>
#include <vector>

namespace supercalc {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Sparse row of a linear system: column index -> coefficient.
using SparseRow = std::map<std::size_t, Rational>;

/// Basis of {c : row . c = 0 for every row}, read off the reduced row echelon
/// form: one vector per free column, with a 1 in that column.
std::vector<std::vector<Rational>> nullspace(std::vector<SparseRow> rows, std::size_t ncols);

/// Rank of a dense matrix over Q.
std::size_t rank(const RationalMatrix& m);

/// Linear Lie (super)algebra g inside gl(V) for V = R^{p|q}. Matrices act as
/// A^i_j, i the row.
class LinearLieAlgebra {
 public:
  /// Explicit basis; linearly dependent generators are reduced.
  LinearLieAlgebra(std::vector<int> parities, std::vector<RationalMatrix> generators);
  /// Stabilizer {A : L_Y Q = 0} of a constant tensor, Y^i = z^j A^i_j.
  static LinearLieAlgebra stabilizer(const Tensor2& form);

  int dim_space() const { return static_cast<int>(parities_.size()); }
  const std::vector<int>& parities() const { return parities_; }
  const std::vector<RationalMatrix>& basis() const { return basis_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  /// Linear functionals on gl(V), flattened row-major, cutting out g.
  const std::vector<std::vector<Rational>>& annihilator() const { return annihilator_; }
  bool contains(const RationalMatrix& a) const;

 private:
  std::vector<int> parities_;
  std::vector<RationalMatrix> basis_;
  std::vector<std::vector<Rational>> annihilator_;
};

LinearLieAlgebra orthogonal_algebra(int n);
/// sp(n) for even n, preserving sum dx^i ^ dx^{i+n/2}.
LinearLieAlgebra symplectic_algebra(int n);

/// Sorted multiset of lower indices; odd indices appear at most once.
using IndexSet = std::vector<int>;

/// Sorted multisets of the given size; odd indices appear at most once.
std::vector<IndexSet> index_sets(const std::vector<int>& parities, int size);

/// Tensor T^i_{j m_1 .. m_k}, graded symmetric in the lower indices, stored
/// by upper index and sorted lower multiset.
struct ProlongationTensor {
  std::map<std::pair<int, IndexSet>, Rational> entries;
};

struct ProlongationResult {
  int k = 0;
  int dimension = 0;
  std::vector<IndexSet> lower_sets;  // column layout of the basis
  std::vector<ProlongationTensor> basis;
};

/// k-th Cartan prolongation: graded symmetric T^i_{j m_1..m_k} whose slices
/// with frozen m lie in g. k = 0 gives g itself.
ProlongationResult prolongation(const LinearLieAlgebra& g, int k);

/// Value of T^i_{l_1 .. l_r} for an arbitrary index tuple, including the
/// Koszul sign of sorting.
Rational prolongation_entry(const ProlongationTensor& t, int i, const std::vector<int>& lower,
                            const std::vector<int>& parities);

struct KillingResult {
  int degree_bound = 0;
  int dimension = 0;
  int max_degree = 0;  // highest total degree among basis fields, -1 if none
  std::vector<VectorField> basis;
};

/// Polynomial vector fields of total degree <= d (even and Grassmann degree
/// together) with L_X T = 0, for a constant tensor T.
KillingResult killing_fields(const Tensor2& structure, int degree_bound);

/// Symmetric tensors of rank k + 2 on R^n raised by the inverse of the
/// symplectic form; each lands in sp(n)_k.
std::vector<ProlongationTensor> symplectic_prolongation_witnesses(int n, int k);

}  // namespace supercalc
