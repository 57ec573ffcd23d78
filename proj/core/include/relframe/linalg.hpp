#pragma once

// Dense complex linear algebra shared by every other module. Operators,
// effects and states are all plain square complex matrices; the extra
// structure (Hermitian, PSD, ...) is a predicate checked against the
// process tolerance.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "relframe/tolerance.hpp"

namespace relframe {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

ComplexMatrix identity(Index dim);
ComplexMatrix zeros(Index dim);
/// |row><col| in dimension dim.
ComplexMatrix matrix_unit(Index dim, Index row, Index col);
ComplexMatrix diagonal(std::initializer_list<Complex> entries);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

/// Column-major flattening; vec(A X B) = (B^T ⊗ A) vec(X).
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols);
ComplexMatrix unvec(const ComplexVector& v, Index dim);

/// Largest absolute entry of a - b. Dimension mismatch yields +inf.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& m);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = tolerance());

Complex trace(const ComplexMatrix& m);
/// Hilbert-Schmidt inner product tr(a† b).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double hs_norm(const ComplexMatrix& m);
ComplexMatrix hermitian_part(const ComplexMatrix& m);

bool is_square(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = tolerance());
/// Hermitian within tol and smallest eigenvalue >= -tol * dim.
bool is_psd(const ComplexMatrix& m, double tol = tolerance());
bool is_projection(const ComplexMatrix& m, double tol = tolerance());
bool is_unitary(const ComplexMatrix& m, double tol = tolerance());
/// PSD with unit trace.
bool is_density_matrix(const ComplexMatrix& m, double tol = tolerance());

/// Ascending eigenvalues of the Hermitian part.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m);
double min_eigenvalue(const ComplexMatrix& m);

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// tr_A of an operator on H_A ⊗ H_B; throws DimensionError unless
/// dim(m) = dim_a * dim_b.
ComplexMatrix partial_trace_first(const ComplexMatrix& m, Index dim_a, Index dim_b);
ComplexMatrix partial_trace_second(const ComplexMatrix& m, Index dim_a, Index dim_b);

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

/// A linearly independent list of square matrices of one dimension, with
/// the Hilbert-Schmidt Gram matrix factored once for projections.
class MatrixSubspaceBasis {
 public:
  /// Empty subspace of the given ambient dimension.
  explicit MatrixSubspaceBasis(Index ambient_dim);
  /// Throws ValidationError if the elements are dependent or mis-sized.
  MatrixSubspaceBasis(Index ambient_dim, std::vector<ComplexMatrix> elements,
                      double tol = tolerance());

  /// Orthonormal basis of span(generators) by modified Gram-Schmidt in the
  /// given order; generators with residual HS norm <= tol are dropped.
  static MatrixSubspaceBasis span_of(Index ambient_dim,
                                     std::span<const ComplexMatrix> generators,
                                     double tol = tolerance());
  /// The d^2 matrix units in column-major order of (row, col).
  static MatrixSubspaceBasis full(Index ambient_dim);

  Index ambient_dim() const noexcept { return ambient_dim_; }
  Index size() const noexcept { return static_cast<Index>(elements_.size()); }
  bool empty() const noexcept { return elements_.empty(); }
  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
  const ComplexMatrix& operator[](Index i) const { return elements_[static_cast<std::size_t>(i)]; }

  /// Coefficients c with sum_i c_i b_i = hs_project(m).
  ComplexVector coordinates(const ComplexMatrix& m) const;
  ComplexMatrix combine(const ComplexVector& coefficients) const;
  ComplexMatrix project(const ComplexMatrix& m) const;
  /// Largest entry of m - project(m).
  double residual(const ComplexMatrix& m) const;
  bool contains(const ComplexMatrix& m, double tol = tolerance()) const;
  /// Columns vec(b_i); d^2 x size().
  const ComplexMatrix& stacked() const noexcept { return stacked_; }

 private:
  Index ambient_dim_;
  std::vector<ComplexMatrix> elements_;
  ComplexMatrix stacked_;
  Eigen::LLT<ComplexMatrix> gram_;
};

/// Orthogonal projection of m onto span(v) under tr(A† B).
ComplexMatrix hs_project(const ComplexMatrix& m, const MatrixSubspaceBasis& v);

/// True when the two bases span the same subspace within tol.
bool same_span(const MatrixSubspaceBasis& a, const MatrixSubspaceBasis& b,
               double tol = tolerance());

/// Orthonormal basis of {x : r·x = 0 for every row r}. `rows` is an
/// m x n matrix; with m == 0 the whole of C^n is returned.
std::vector<ComplexVector> null_space(const ComplexMatrix& rows, double tol = tolerance());
/// Same, with each row given as a flattened matrix of dimension ambient_dim
/// and the kernel reshaped into ambient_dim x ambient_dim matrices.
MatrixSubspaceBasis null_space(std::span<const ComplexMatrix> rows, Index ambient_dim,
                               double tol = tolerance());

/// Numerical rank with the same threshold as null_space.
Index numerical_rank(const ComplexMatrix& m, double tol = tolerance());

}  // namespace relframe
