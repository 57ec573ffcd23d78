#pragma once

// Shared objects and independent oracles for the unit tests.

#include <memory>

#include <unsupported/Eigen/KroneckerProduct>

#include "relframe/channels.hpp"
#include "relframe/frame.hpp"
#include "relframe/group.hpp"
#include "relframe/linalg.hpp"
#include "relframe/relativization.hpp"
#include "relframe/system.hpp"

namespace fixtures {

using namespace relframe;

inline ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline ComplexMatrix I2() { return identity(2); }
inline ComplexMatrix X() { return mat2(0, 1, 1, 0); }
inline ComplexMatrix Y() { return mat2(0, -kI, kI, 0); }
inline ComplexMatrix Z() { return mat2(1, 0, 0, -1); }
inline ComplexMatrix P0() { return mat2(1, 0, 0, 0); }
inline ComplexMatrix P1() { return mat2(0, 0, 0, 1); }
inline ComplexMatrix S() { return mat2(1, 0, 0, kI); }
inline ComplexMatrix Had() { return mat2(1, 1, 1, -1) / std::sqrt(2.0); }

/// Kronecker product via Eigen's unsupported module, independent of
/// relframe::tensor_product.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

inline std::shared_ptr<const FiniteGroup> z(int n) {
  return std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(n));
}

/// Z2 acting by X on a qubit.
inline UnitaryRep z2_flip() { return UnitaryRep(z(2), {I2(), X()}); }

/// Z_n acting on C^n by cyclic shift.
inline UnitaryRep shift_rep(int n) {
  auto g = z(n);
  std::vector<ComplexMatrix> mats;
  for (int k = 0; k < n; ++k) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) m((i + k) % n, i) = 1.0;
    mats.push_back(m);
  }
  return UnitaryRep(g, mats);
}

inline FramePtr z2_ideal() { return principal_frame_from_seed(z2_flip(), P0()); }
/// Seed (I + Z/2)/2.
inline FramePtr z2_smeared() { return principal_frame_from_seed(z2_flip(), (I2() + Z() / 2.0) / 2.0); }
inline FramePtr z2_unlocalized() { return principal_frame_from_seed(z2_flip(), I2() / 2.0); }
inline SystemPtr qubit() { return full_system(z2_flip()); }

/// sum_g E(g) ⊗ U(g) a U(g)† written out with the oracle Kronecker product.
inline ComplexMatrix relativize_oracle(const FrameObservable& f, const UnitaryRep& rep,
                                       const ComplexMatrix& a) {
  ComplexMatrix out = ComplexMatrix::Zero(f.dim() * a.rows(), f.dim() * a.rows());
  for (Element g = 0; g < f.group().order(); ++g) {
    out += kron(f.effect(g), rep.matrix(g) * a * rep.matrix(g).adjoint());
  }
  return out;
}

inline ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  return es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace fixtures
