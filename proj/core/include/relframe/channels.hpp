#pragma once

// Constructors for common channels and channel algebra (composition and
// parallel application).

#include <functional>
#include <span>

#include "relframe/system.hpp"

namespace relframe {

using OperatorMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// Evaluates `f` on the source basis and validates the result.
ChannelMap channel_from_function(SystemPtr source, SystemPtr target, const OperatorMap& f,
                                 const SamplingOptions& options = {});

/// Channel determined by its values on operators spanning the source;
/// dependent inputs must carry consistent outputs (ValidationError).
ChannelMap channel_from_pairs(SystemPtr source, SystemPtr target,
                              std::span<const ComplexMatrix> inputs,
                              std::span<const ComplexMatrix> outputs,
                              const SamplingOptions& options = {});

ChannelMap identity_channel(SystemPtr system);
/// A -> u A u†; throws NotUnitary.
ChannelMap conjugation_channel(SystemPtr source, SystemPtr target, const ComplexMatrix& u,
                               const SamplingOptions& options = {});
/// Heisenberg-picture Kraus form A -> sum_i K_i† A K_i with
/// K_i : H_target -> H_source.
ChannelMap kraus_channel(SystemPtr source, SystemPtr target,
                         std::span<const ComplexMatrix> kraus,
                         const SamplingOptions& options = {});
/// A -> (1 - weight) A + weight tr(A)/d I, equivariant for every
/// representation.
ChannelMap depolarizing_channel(SystemPtr system, double weight,
                                const SamplingOptions& options = {});
/// A -> A ⊗ I_k into a system on H ⊗ C^k.
ChannelMap ampliation_channel(SystemPtr source, SystemPtr target,
                              const SamplingOptions& options = {});
/// A -> g.A on an action-closed system.
ChannelMap action_channel(SystemPtr system, Element g, const SamplingOptions& options = {});

/// second ∘ first; throws ObjectMismatch unless first's target is
/// second's source.
ChannelMap compose_channels(const ChannelMap& first, const ChannelMap& second,
                            const SamplingOptions& options = {});

/// (left ⊗ right)(b) for b in span(left.source ⊗ right.source), computed by
/// expanding b in the product basis. Throws OperatorOutsideSystem when b is
/// not in the algebraic tensor product of the two sources.
ComplexMatrix apply_parallel(const ChannelMap& left, const ChannelMap& right,
                             const ComplexMatrix& b);

/// Largest entrywise gap between two channels on the source basis of `a`.
double channel_distance(const ChannelMap& a, const ChannelMap& b);

}  // namespace relframe
