#pragma once

// The relativization map A -> sum_g E(g) ⊗ g.A, the spaces of relative
// observables it generates, the induced maps between them, and checks of
// the laws these constructions obey.

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "relframe/frame.hpp"
#include "relframe/report.hpp"
#include "relframe/system.hpp"

namespace relframe {

class RelativizationMap {
 public:
  /// Throws GroupMismatch when the frame and system carry different groups.
  RelativizationMap(FramePtr frame, SystemPtr system);

  const FramePtr& frame() const noexcept { return frame_; }
  const SystemPtr& system() const noexcept { return system_; }
  /// g -> U_R(g) ⊗ U_S(g).
  const UnitaryRep& joint_rep() const noexcept { return joint_rep_; }
  Index joint_dim() const noexcept { return joint_rep_.dim(); }
  /// Images of the system basis elements.
  const std::vector<ComplexMatrix>& images() const noexcept { return images_; }

  /// Relativizes a system operator; throws OperatorOutsideSystem unless
  /// a lies in the system's span.
  ComplexMatrix operator()(const ComplexMatrix& a) const;
  /// The defining sum, for any operator on H_S.
  ComplexMatrix apply_unchecked(const ComplexMatrix& a) const;
  /// sum_g g^-1.tr_R[(E(g) ⊗ I) t]; satisfies tr[predual(t) A] = tr[t rel(A)].
  ComplexMatrix predual(const ComplexMatrix& t) const;
  /// Columns vec(images_i).
  ComplexMatrix superoperator() const;

 private:
  FramePtr frame_;
  SystemPtr system_;
  UnitaryRep joint_rep_;
  std::vector<ComplexMatrix> images_;
};

using RelativizationPtr = std::shared_ptr<const RelativizationMap>;

/// sum_g E(g) ⊗ g.a with a checked to lie in the system.
ComplexMatrix relativize(const FramePtr& frame, const SystemPtr& system, const ComplexMatrix& a);

/// Span of the relativized system basis, as an invariant semi-quantum
/// system on the joint representation, plus the kernel of the map on the
/// system span. dim(space) + dim(kernel) = dim(system).
class RelativeSubspace {
  struct Token {};

 public:
  RelativeSubspace(Token, RelativizationPtr map, SystemPtr relative_system,
                   MatrixSubspaceBasis kernel, ComplexMatrix pseudo_inverse);
  static std::shared_ptr<const RelativeSubspace> build(FramePtr frame, SystemPtr system);

  const RelativizationMap& map() const noexcept { return *map_; }
  const RelativizationPtr& shared_map() const noexcept { return map_; }
  const SystemPtr& relative_system() const noexcept { return relative_system_; }
  const MatrixSubspaceBasis& space() const noexcept { return relative_system_->space(); }
  /// System operators annihilated by the map (in the system ambient space).
  const MatrixSubspaceBasis& kernel() const noexcept { return kernel_; }

  /// Minimum-norm system coordinates c with rel(sum_i c_i b_i) = b.
  ComplexVector preimage_coordinates(const ComplexMatrix& b) const;

 private:
  RelativizationPtr map_;
  SystemPtr relative_system_;
  MatrixSubspaceBasis kernel_;
  ComplexMatrix pseudo_inverse_;
};

using RelativeSubspacePtr = std::shared_ptr<const RelativeSubspace>;

RelativeSubspacePtr build_relative_subspace(const FramePtr& frame, const SystemPtr& system);

/// The map rel(psi, phi) : rel(A) -> rel'(phi(A)) between relative spaces.
class YenMorphism {
 public:
  YenMorphism(RelativeSubspacePtr source, RelativeSubspacePtr target, FrameMorphism psi,
              ChannelMap phi, ChannelMap channel, double kernel_defect);

  const RelativeSubspacePtr& source() const noexcept { return source_; }
  const RelativeSubspacePtr& target() const noexcept { return target_; }
  const FrameMorphism& frame_morphism() const noexcept { return psi_; }
  const ChannelMap& system_channel() const noexcept { return phi_; }
  const ChannelMap& channel() const noexcept { return channel_; }
  /// max ||rel'(phi(k))|| over the kernel basis of the source map.
  double kernel_defect() const noexcept { return kernel_defect_; }
  ComplexMatrix apply(const ComplexMatrix& b) const { return channel_.apply(b); }

 private:
  RelativeSubspacePtr source_;
  RelativeSubspacePtr target_;
  FrameMorphism psi_;
  ChannelMap phi_;
  ChannelMap channel_;
  double kernel_defect_;
};

/// Builds rel(psi, phi) by linear extension through the pseudo-inverse of
/// the source map. Throws IllDefined (with the offending kernel element)
/// when ker rel is not inside ker(rel' ∘ phi), and ObjectMismatch when psi
/// and phi live on different groups.
YenMorphism build_yen_morphism(const FrameMorphism& psi, const ChannelMap& phi,
                               const SamplingOptions& options = {});

/// second ∘ first as a channel between relative spaces.
ChannelMap compose_yen_morphisms(const YenMorphism& first, const YenMorphism& second);

// ---------------------------------------------------------------------------
// Law checks. Each returns a CheckReport with one item per property.

/// linearity, unitality, invariance, positivity (Choi PSD on full
/// algebras, sampled otherwise), contraction and contraction strictness.
CheckReport check_channel_axioms(const RelativizationMap& map, const SamplingOptions& options = {});

/// Operator-norm ratio ||rel(a)|| / ||a||.
double contraction_ratio(const RelativizationMap& map, const ComplexMatrix& a);

/// multiplicativity, isometry and adjoint deviations over the matrix-unit
/// basis, plus `ideal_iff`: homomorphism exactly when the frame is ideal.
/// Throws RequiresFullAlgebra.
CheckReport check_ideal_isomorphism(const RelativizationMap& map);

using FunctorLink = std::pair<FrameMorphism, ChannelMap>;

/// Identity law at every object of the chain and composition law for every
/// prefix of the chain. Throws ObjectMismatch for non-composable links.
CheckReport check_functor_laws(const std::vector<FunctorLink>& chain,
                               const SamplingOptions& options = {});

/// rel(psi, phi) against (psi ⊗ phi) restricted to the relative space.
/// Throws PhiNotEquivariant.
CheckReport check_equivariant_tensor_form(const FrameMorphism& psi, const ChannelMap& phi,
                                          const SamplingOptions& options = {});

/// rel ∘ phi against (id ⊗ phi) ∘ rel on the source basis. Throws
/// PhiNotEquivariant.
CheckReport check_naturality(const FramePtr& frame, const ChannelMap& phi);

// ---------------------------------------------------------------------------
// Relative states

/// Predual of the relativization map applied to a joint state; throws
/// NotAState.
StateClass predual_relativize(const FramePtr& frame, const SystemPtr& system,
                              const ComplexMatrix& joint_state);

/// sum_g mu_omega(g) g^-1.rho, the predual of rel on omega ⊗ rho.
StateClass product_relative_state(const FramePtr& frame, const SystemPtr& system,
                                  const ComplexMatrix& omega, const ComplexMatrix& rho);

struct ExternalTransform {
  StateClass target_side;     // rho^(omega') relative to the target frame
  StateClass source_side;     // rho^(psi_*(omega')) relative to the source frame
  ComplexMatrix pulled_back;  // psi_*(omega')
  double deviation = 0.0;     // distance between the two canonical forms
};

/// Both sides of the external frame transformation along psi for a
/// product state. psi_* is taken on the full frame algebra: directly when
/// psi acts between full algebras, otherwise through `extension`, which
/// must agree with psi on the source value system. Throws NotAState or
/// RequiresFullAlgebra.
ExternalTransform external_frame_transform(const FrameMorphism& psi, const SystemPtr& system,
                                           const ComplexMatrix& omega_target,
                                           const ComplexMatrix& rho,
                                           const ChannelMap* extension = nullptr);

}  // namespace relframe
