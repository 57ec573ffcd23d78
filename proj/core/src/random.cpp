#include "relframe/random.hpp"

#include <cmath>

namespace relframe {

double RandomMatrices::real() { return normal_(engine_); }

Complex RandomMatrices::complex() {
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

ComplexMatrix RandomMatrices::ginibre(Index rows, Index cols) {
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = complex();
  }
  return m;
}

ComplexMatrix RandomMatrices::hermitian(Index dim) { return hermitian_part(ginibre(dim)); }

ComplexMatrix RandomMatrices::unitary(Index dim) {
  const ComplexMatrix g = ginibre(dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity of QR so the distribution is Haar.
  for (Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    if (a > 0.0) q.col(i) *= d / a;
  }
  return q;
}

ComplexMatrix RandomMatrices::density_matrix(Index dim) {
  const ComplexMatrix g = ginibre(dim);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

ComplexVector RandomMatrices::unit_vector(Index dim) {
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = complex();
  return v / v.norm();
}

ComplexMatrix RandomMatrices::pure_state(Index dim) {
  const ComplexVector v = unit_vector(dim);
  return v * v.adjoint();
}

}  // namespace relframe
