#pragma once

// Covariant POVM frame observables on finite groups and the morphisms
// between them.

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "relframe/channels.hpp"
#include "relframe/group.hpp"
#include "relframe/system.hpp"

namespace relframe {

class FrameObservable;
using FramePtr = std::shared_ptr<const FrameObservable>;

/// A POVM on G stored on singletons, E(g), with E(X) = sum over X.
/// Invariants: effects PSD, sum to I, E(gh) = g.E(h), and all effects lie
/// in the value system.
class FrameObservable {
  struct Token {};

 public:
  /// Throws InvalidFrame naming the first violated invariant. A null value
  /// system means the full algebra on the representation space.
  static FramePtr create(const UnitaryRep& rep, std::vector<ComplexMatrix> effects,
                         SystemPtr value_system = nullptr);

  FrameObservable(Token, UnitaryRep rep, std::vector<ComplexMatrix> effects,
                  SystemPtr value_system, bool ideal);

  const UnitaryRep& rep() const noexcept { return rep_; }
  const FiniteGroup& group() const noexcept { return rep_.group(); }
  Index dim() const noexcept { return rep_.dim(); }
  const std::vector<ComplexMatrix>& effects() const noexcept { return effects_; }
  const ComplexMatrix& effect(Element g) const { return effects_.at(static_cast<std::size_t>(g)); }
  ComplexMatrix effect_of(std::span<const Element> subset) const;
  const SystemPtr& value_system() const noexcept { return value_system_; }
  /// Every effect is a projection.
  bool is_ideal() const noexcept { return ideal_; }

 private:
  UnitaryRep rep_;
  std::vector<ComplexMatrix> effects_;
  SystemPtr value_system_;
  bool ideal_ = false;
};

/// effects[g] = g.seed. Throws SeedNotPSD or SeedNotNormalizing (with the
/// operator norm of sum_g g.seed - I).
FramePtr principal_frame_from_seed(const UnitaryRep& rep, const ComplexMatrix& seed,
                                   SystemPtr value_system = nullptr);
/// Regular representation with seed |e><e|.
FramePtr canonical_ideal_frame(const FiniteGroup& group);
/// Effects (1 - weight) E(g) + weight tr(E(g))/d I on the same value system.
FramePtr smeared_frame(const FramePtr& frame, double weight);

/// p[g] = tr[omega E(g)]; throws NotAState.
std::vector<double> born_measure(const FrameObservable& frame, const ComplexMatrix& omega);
/// Clips to [0, 1] and renormalizes to sum 1.
std::vector<double> clamp_to_simplex(std::vector<double> p);

bool same_frame(const FrameObservable& a, const FrameObservable& b, double tol = tolerance());

/// A channel between value systems through which the target frame
/// factorizes: E'(g) = psi(E(g)).
class FrameMorphism {
 public:
  /// Throws ObjectMismatch, FactorizationFails(g) or
  /// EffectSpanNotEquivariant(g).
  FrameMorphism(FramePtr source, FramePtr target, ChannelMap channel);

  const FramePtr& source() const noexcept { return source_; }
  const FramePtr& target() const noexcept { return target_; }
  const ChannelMap& channel() const noexcept { return channel_; }
  /// Equivariance on the span of the source effects (forced by
  /// factorization) and on the whole value system (reported only).
  const EquivarianceResult& effect_span_equivariance() const noexcept { return effect_span_; }
  const EquivarianceResult& full_equivariance() const noexcept { return full_; }

 private:
  FramePtr source_;
  FramePtr target_;
  ChannelMap channel_;
  EquivarianceResult effect_span_;
  EquivarianceResult full_;
};

FrameMorphism build_frame_morphism(FramePtr source, FramePtr target, ChannelMap channel);
FrameMorphism identity_frame_morphism(const FramePtr& frame);
/// second ∘ first; throws ObjectMismatch unless first.target is second.source.
FrameMorphism compose_frame_morphisms(const FrameMorphism& first, const FrameMorphism& second);
/// psi = h.(-) from `frame` to the frame with effects h.E(g) = E(hg).
/// Throws NotCentral(h) when that family is not covariant.
FrameMorphism reorientation_morphism(const FramePtr& frame, Element h);
/// Depolarizing channel from `frame` to smeared_frame(frame, weight).
FrameMorphism smearing_morphism(const FramePtr& frame, double weight);

struct IsomorphismReport {
  bool isomorphic = false;
  double forward_deviation = 0.0;   // max_g |t E1(g) t† - E2(g)|
  double backward_deviation = 0.0;  // max_g |t† E2(g) t - E1(g)|
  std::optional<Element> failing_element;
  std::string reason;
};

/// Verifies that A -> t A t† is a frame morphism f1 -> f2 with inverse
/// A -> t† A t. Throws NotUnitary.
IsomorphismReport frames_isomorphic_by(const FramePtr& first, const FramePtr& second,
                                       const ComplexMatrix& t);

}  // namespace relframe
