#pragma once

// Semi-quantum systems: action-closed operator subspaces containing the
// identity, channels between them, and operational state classes.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relframe/group.hpp"
#include "relframe/linalg.hpp"
#include "relframe/report.hpp"

namespace relframe {

inline constexpr std::uint64_t kDefaultSeed = 0x5EEDULL;

/// Controls the randomized parts of validation (positivity probes).
struct SamplingOptions {
  std::uint64_t seed = kDefaultSeed;
  int random_samples = 32;
};

class SemiQuantumSystem;
using SystemPtr = std::shared_ptr<const SemiQuantumSystem>;

class SemiQuantumSystem {
  struct Token {};

 public:
  /// Validates that I is in the span and the span is closed under the
  /// group action; throws InvalidSystem otherwise.
  static SystemPtr from_basis(UnitaryRep rep, MatrixSubspaceBasis space,
                              bool saturation_added = false);

  SemiQuantumSystem(Token, UnitaryRep rep, MatrixSubspaceBasis space, bool saturation_added);

  const UnitaryRep& rep() const noexcept { return rep_; }
  const MatrixSubspaceBasis& space() const noexcept { return space_; }
  /// Span of {A† : A in space}; states are compared against it.
  const MatrixSubspaceBasis& adjoint_space() const noexcept { return adjoint_space_; }
  Index ambient_dim() const noexcept { return space_.ambient_dim(); }
  Index dim() const noexcept { return space_.size(); }

  bool is_full_algebra() const noexcept { return full_algebra_; }
  bool is_vn_algebra() const noexcept { return vn_algebra_; }
  bool is_invariant() const noexcept { return invariant_; }
  /// True when building the system had to add translates of the
  /// generators to make it action-closed.
  bool saturation_added() const noexcept { return saturation_added_; }

  /// Coordinates of `a` in the basis; throws OperatorOutsideSystem when a
  /// is not in the span.
  ComplexVector expand(const ComplexMatrix& a) const;
  bool contains(const ComplexMatrix& a, double tol = tolerance()) const {
    return space_.contains(a, tol);
  }

 private:
  UnitaryRep rep_;
  MatrixSubspaceBasis space_;
  MatrixSubspaceBasis adjoint_space_;
  bool full_algebra_ = false;
  bool vn_algebra_ = false;
  bool invariant_ = false;
  bool saturation_added_ = false;
};

/// All of B(H) with the matrix units as basis.
SystemPtr full_system(const UnitaryRep& rep);
/// span(gens ∪ {I} ∪ {g.x}); never fails for well-sized generators.
SystemPtr subspace_system(const UnitaryRep& rep, std::span<const ComplexMatrix> gens);
/// Commutant {X : [X, U(g)] = 0 for all g}.
SystemPtr invariant_subalgebra(const UnitaryRep& rep);

/// Same representation and same span.
bool same_system(const SemiQuantumSystem& a, const SemiQuantumSystem& b,
                 double tol = tolerance());

/// Deterministic family of PSD operators inside the system's span used to
/// probe positivity. Full algebras get rank-one projectors on a lattice of
/// Bloch-like directions; proper subspaces get shifted Hermitian elements
/// H - λmin(H)·I. Both are topped up with seeded random draws.
std::vector<ComplexMatrix> positive_samples(const SemiQuantumSystem& system,
                                            const SamplingOptions& options);

struct PositivityRecord {
  Evidence evidence = Evidence::Sampled;
  bool choi_psd = false;
  double min_eigenvalue = 0.0;  // worst over Choi or the probe images
  int samples = 0;
};

/// Linear map between semi-quantum systems, stored by its images of the
/// source basis. Construction validates image membership, unitality and
/// positivity.
class ChannelMap {
 public:
  ChannelMap(SystemPtr source, SystemPtr target, std::vector<ComplexMatrix> images,
             const SamplingOptions& options = {});

  const SystemPtr& source() const noexcept { return source_; }
  const SystemPtr& target() const noexcept { return target_; }
  const std::vector<ComplexMatrix>& images() const noexcept { return images_; }
  const PositivityRecord& positivity() const noexcept { return positivity_; }

  /// Throws OperatorOutsideSystem when a is not in the source span.
  ComplexMatrix apply(const ComplexMatrix& a) const;
  /// Columns vec(image_i); (target ambient)^2 x source dim.
  ComplexMatrix superoperator() const;

 private:
  SystemPtr source_;
  SystemPtr target_;
  std::vector<ComplexMatrix> images_;
  PositivityRecord positivity_;
};

ChannelMap build_channel(SystemPtr source, SystemPtr target, std::vector<ComplexMatrix> images,
                         const SamplingOptions& options = {});

struct EquivarianceResult {
  bool equivariant = true;
  double deviation = 0.0;
  std::optional<Element> element;
  std::optional<Index> basis_index;
  std::optional<ComplexMatrix> basis_element;
};

/// Checks φ(g.b) = g.φ(b) on every source basis element; throws
/// GroupMismatch when source and target carry different groups.
EquivarianceResult is_equivariant(const ChannelMap& channel, double tol = tolerance());
/// Same check restricted to the given operators of the source.
EquivarianceResult is_equivariant_on(const ChannelMap& channel,
                                     std::span<const ComplexMatrix> operators,
                                     double tol = tolerance());

/// φ_*(t) with tr[φ_*(t) A] = tr[t φ(A)]; both sides must be full algebras.
ComplexMatrix predual_channel(const ChannelMap& channel, const ComplexMatrix& t);

/// Operational class of a density matrix: its HS projection onto the
/// adjoint span of the system.
struct StateClass {
  SystemPtr system;
  ComplexMatrix canonical;
};

StateClass state_class(SystemPtr system, const ComplexMatrix& rho);
bool same_state_class(const StateClass& a, const StateClass& b, double tol = tolerance());
double state_class_distance(const StateClass& a, const StateClass& b);

/// d^2 minus the dimension of the trace-pairing annihilator of the space.
Index quotient_dimension(const SemiQuantumSystem& system, double tol = tolerance());

}  // namespace relframe
