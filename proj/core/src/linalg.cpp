#include "relframe/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "relframe/errors.hpp"

namespace relframe {

ComplexMatrix identity(Index dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix zeros(Index dim) { return ComplexMatrix::Zero(dim, dim); }

ComplexMatrix matrix_unit(Index dim, Index row, Index col) {
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(row, col) = 1.0;
  return m;
}

ComplexMatrix diagonal(std::initializer_list<Complex> entries) {
  const auto n = static_cast<Index>(entries.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  Index i = 0;
  for (const auto& e : entries) {
    m(i, i) = e;
    ++i;
  }
  return m;
}

namespace pauli {
ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}
ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    throw Error(ErrorKind::DimensionError, "unvec: length " + std::to_string(v.size()) +
                                               " does not match " + std::to_string(rows) +
                                               "x" + std::to_string(cols));
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

ComplexMatrix unvec(const ComplexVector& v, Index dim) { return unvec(v, dim, dim); }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  return max_abs_diff(a, b) <= tol;
}

Complex trace(const ComplexMatrix& m) { return m.trace(); }

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.adjoint() * b).trace();
}

double hs_norm(const ComplexMatrix& m) { return m.norm(); }

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + m.adjoint()) / 2.0; }

bool is_square(const ComplexMatrix& m) { return m.rows() == m.cols(); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return is_square(m) && max_abs_diff(m, m.adjoint()) <= tol;
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m),
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double min_eigenvalue(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return hermitian_eigenvalues(m).minCoeff();
}

bool is_psd(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  return min_eigenvalue(m) >= -tol * static_cast<double>(m.rows());
}

bool is_projection(const ComplexMatrix& m, double tol) {
  return is_hermitian(m, tol) && max_abs_diff(m * m, m) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  return is_square(m) && max_abs_diff(m.adjoint() * m, identity(m.rows())) <= tol;
}

bool is_density_matrix(const ComplexMatrix& m, double tol) {
  return is_psd(m, tol) &&
         std::abs(trace(m) - 1.0) <= tol * static_cast<double>(std::max<Index>(1, m.rows()));
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {
void check_bipartite(const ComplexMatrix& m, Index dim_a, Index dim_b) {
  if (dim_a <= 0 || dim_b <= 0 || !is_square(m) || m.rows() != dim_a * dim_b) {
    throw Error(ErrorKind::DimensionError,
                "partial trace: operator of dimension " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + " is not on a " + std::to_string(dim_a) +
                    "*" + std::to_string(dim_b) + " space");
  }
}
}  // namespace

ComplexMatrix partial_trace_first(const ComplexMatrix& m, Index dim_a, Index dim_b) {
  check_bipartite(m, dim_a, dim_b);
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (Index i = 0; i < dim_a; ++i) {
    out += m.block(i * dim_b, i * dim_b, dim_b, dim_b);
  }
  return out;
}

ComplexMatrix partial_trace_second(const ComplexMatrix& m, Index dim_a, Index dim_b) {
  check_bipartite(m, dim_a, dim_b);
  ComplexMatrix out(dim_a, dim_a);
  for (Index i = 0; i < dim_a; ++i) {
    for (Index j = 0; j < dim_a; ++j) {
      out(i, j) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    }
  }
  return out;
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

// ---------------------------------------------------------------------------
// MatrixSubspaceBasis

MatrixSubspaceBasis::MatrixSubspaceBasis(Index ambient_dim)
    : ambient_dim_(ambient_dim), stacked_(ambient_dim * ambient_dim, 0) {}

MatrixSubspaceBasis::MatrixSubspaceBasis(Index ambient_dim,
                                         std::vector<ComplexMatrix> elements, double tol)
    : ambient_dim_(ambient_dim), elements_(std::move(elements)) {
  const Index n2 = ambient_dim_ * ambient_dim_;
  stacked_.resize(n2, size());
  for (Index i = 0; i < size(); ++i) {
    const auto& b = elements_[static_cast<std::size_t>(i)];
    if (b.rows() != ambient_dim_ || b.cols() != ambient_dim_) {
      throw Error(ErrorKind::ValidationError,
                  "basis element " + std::to_string(i) + " is not " +
                      std::to_string(ambient_dim_) + "x" + std::to_string(ambient_dim_));
    }
    stacked_.col(i) = vec(b);
  }
  if (empty()) return;
  if (numerical_rank(stacked_, tol) != size()) {
    throw Error(ErrorKind::ValidationError, "basis elements are linearly dependent");
  }
  gram_.compute(stacked_.adjoint() * stacked_);
}

MatrixSubspaceBasis MatrixSubspaceBasis::span_of(Index ambient_dim,
                                                 std::span<const ComplexMatrix> generators,
                                                 double tol) {
  std::vector<ComplexMatrix> ortho;
  for (const auto& g : generators) {
    if (g.rows() != ambient_dim || g.cols() != ambient_dim) {
      throw Error(ErrorKind::DimensionError,
                  "span generator is " + std::to_string(g.rows()) + "x" +
                      std::to_string(g.cols()) + ", expected " + std::to_string(ambient_dim));
    }
    const double scale = std::max(1.0, hs_norm(g));
    ComplexMatrix r = g;
    // Two passes of modified Gram-Schmidt keep the basis orthonormal to
    // machine precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : ortho) r -= hs_inner(q, r) * q;
    }
    const double norm = hs_norm(r);
    if (norm > tol * scale) ortho.push_back(r / norm);
  }
  return MatrixSubspaceBasis(ambient_dim, std::move(ortho), tol);
}

MatrixSubspaceBasis MatrixSubspaceBasis::full(Index ambient_dim) {
  std::vector<ComplexMatrix> units;
  units.reserve(static_cast<std::size_t>(ambient_dim * ambient_dim));
  for (Index col = 0; col < ambient_dim; ++col) {
    for (Index row = 0; row < ambient_dim; ++row) {
      units.push_back(matrix_unit(ambient_dim, row, col));
    }
  }
  return MatrixSubspaceBasis(ambient_dim, std::move(units));
}

ComplexVector MatrixSubspaceBasis::coordinates(const ComplexMatrix& m) const {
  if (m.rows() != ambient_dim_ || m.cols() != ambient_dim_) {
    throw Error(ErrorKind::DimensionError,
                "operator of dimension " + std::to_string(m.rows()) +
                    " projected onto a subspace of dimension-" +
                    std::to_string(ambient_dim_) + " operators");
  }
  if (empty()) return ComplexVector(0);
  return gram_.solve(stacked_.adjoint() * vec(m));
}

ComplexMatrix MatrixSubspaceBasis::combine(const ComplexVector& coefficients) const {
  if (coefficients.size() != size()) {
    throw Error(ErrorKind::DimensionError, "coefficient vector length does not match basis");
  }
  if (empty()) return zeros(ambient_dim_);
  return unvec(stacked_ * coefficients, ambient_dim_);
}

ComplexMatrix MatrixSubspaceBasis::project(const ComplexMatrix& m) const {
  return combine(coordinates(m));
}

double MatrixSubspaceBasis::residual(const ComplexMatrix& m) const {
  return max_abs_diff(m, project(m));
}

bool MatrixSubspaceBasis::contains(const ComplexMatrix& m, double tol) const {
  return residual(m) <= tol;
}

ComplexMatrix hs_project(const ComplexMatrix& m, const MatrixSubspaceBasis& v) {
  return v.project(m);
}

bool same_span(const MatrixSubspaceBasis& a, const MatrixSubspaceBasis& b, double tol) {
  if (a.ambient_dim() != b.ambient_dim() || a.size() != b.size()) return false;
  return std::all_of(a.elements().begin(), a.elements().end(),
                     [&](const ComplexMatrix& m) { return b.contains(m, tol); });
}

// ---------------------------------------------------------------------------
// Kernels

namespace {
double rank_threshold(double sigma_max, double tol) { return tol * std::max(1.0, sigma_max); }
}  // namespace

Index numerical_rank(const ComplexMatrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double thr = rank_threshold(s(0), tol);
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > thr) ++rank;
  }
  return rank;
}

std::vector<ComplexVector> null_space(const ComplexMatrix& rows, double tol) {
  const Index n = rows.cols();
  std::vector<ComplexVector> kernel;
  if (rows.rows() == 0) {
    for (Index i = 0; i < n; ++i) kernel.push_back(ComplexVector::Unit(n, i));
    return kernel;
  }
  Eigen::JacobiSVD<ComplexMatrix, Eigen::ColPivHouseholderQRPreconditioner> svd(
      rows, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double thr = rank_threshold(s.size() > 0 ? s(0) : 0.0, tol);
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > thr) ++rank;
  }
  const ComplexMatrix& v = svd.matrixV();
  for (Index i = rank; i < n; ++i) kernel.push_back(v.col(i));
  return kernel;
}

MatrixSubspaceBasis null_space(std::span<const ComplexMatrix> rows, Index ambient_dim,
                               double tol) {
  const Index n = ambient_dim * ambient_dim;
  ComplexMatrix stacked(static_cast<Index>(rows.size()), n);
  for (Index i = 0; i < stacked.rows(); ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    if (r.size() != n) {
      throw Error(ErrorKind::DimensionError, "null_space: row " + std::to_string(i) +
                                                 " has " + std::to_string(r.size()) +
                                                 " entries, expected " + std::to_string(n));
    }
    stacked.row(i) = vec(r).transpose();
  }
  std::vector<ComplexMatrix> kernel;
  for (const auto& k : null_space(stacked, tol)) kernel.push_back(unvec(k, ambient_dim));
  return MatrixSubspaceBasis(ambient_dim, std::move(kernel), tol);
}

}  // namespace relframe
