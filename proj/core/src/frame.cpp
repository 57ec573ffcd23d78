#include "relframe/frame.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "relframe/errors.hpp"

namespace relframe {

FrameObservable::FrameObservable(Token, UnitaryRep rep, std::vector<ComplexMatrix> effects,
                                 SystemPtr value_system, bool ideal)
    : rep_(std::move(rep)),
      effects_(std::move(effects)),
      value_system_(std::move(value_system)),
      ideal_(ideal) {}

FramePtr FrameObservable::create(const UnitaryRep& rep, std::vector<ComplexMatrix> effects,
                                 SystemPtr value_system) {
  const double tol = tolerance();
  const FiniteGroup& group = rep.group();
  const Index d = rep.dim();
  if (static_cast<int>(effects.size()) != group.order()) {
    throw Error(ErrorKind::InvalidFrame, "expected one effect per group element (" +
                                             std::to_string(group.order()) + "), got " +
                                             std::to_string(effects.size()));
  }
  if (!value_system) value_system = full_system(rep);
  if (!same_representation(value_system->rep(), rep, tol)) {
    throw Error(ErrorKind::InvalidFrame, "value system carries a different representation");
  }

  ComplexMatrix total = zeros(d);
  for (Element g = 0; g < group.order(); ++g) {
    const auto& e = effects[static_cast<std::size_t>(g)];
    if (e.rows() != d || e.cols() != d) {
      throw Error(ErrorKind::InvalidFrame, "effect " + group.label(g) + " has the wrong dimension");
    }
    if (!is_psd(e, tol)) {
      throw Error(ErrorKind::InvalidFrame, "effect " + group.label(g) + " is not PSD",
                  {Witness{"E(" + group.label(g) + ")", e, min_eigenvalue(e)}});
    }
    if (!value_system->contains(e, tol)) {
      throw Error(ErrorKind::InvalidFrame,
                  "effect " + group.label(g) + " is outside the value system",
                  {Witness{"E(" + group.label(g) + ")", e, value_system->space().residual(e)}});
    }
    total += e;
  }
  const double norm_dev = max_abs_diff(total, identity(d));
  if (norm_dev > tol) {
    throw Error(ErrorKind::InvalidFrame, "effects do not sum to the identity",
                {Witness{"sum_g E(g) - I", total - identity(d), norm_dev}});
  }
  for (Element g = 0; g < group.order(); ++g) {
    for (Element h = 0; h < group.order(); ++h) {
      const ComplexMatrix expected = act(rep, g, effects[static_cast<std::size_t>(h)]);
      const double dev = max_abs_diff(effects[static_cast<std::size_t>(group.multiply(g, h))], expected);
      if (dev > tol) {
        throw Error(ErrorKind::InvalidFrame,
                    "covariance fails: E(" + group.label(g) + "*" + group.label(h) + ") != " +
                        group.label(g) + ".E(" + group.label(h) + ")",
                    {Witness{"g.E(h)", expected, dev}});
      }
    }
  }
  const bool ideal = std::all_of(effects.begin(), effects.end(),
                                 [&](const ComplexMatrix& e) { return is_projection(e, tol); });
  return std::make_shared<const FrameObservable>(Token{}, rep, std::move(effects),
                                                 std::move(value_system), ideal);
}

ComplexMatrix FrameObservable::effect_of(std::span<const Element> subset) const {
  ComplexMatrix out = zeros(dim());
  for (Element g : subset) out += effect(g);
  return out;
}

FramePtr principal_frame_from_seed(const UnitaryRep& rep, const ComplexMatrix& seed,
                                   SystemPtr value_system) {
  const double tol = tolerance();
  if (seed.rows() != rep.dim() || seed.cols() != rep.dim()) {
    throw Error(ErrorKind::DimensionError, "seed dimension does not match the representation");
  }
  if (!is_psd(seed, tol)) {
    throw Error(ErrorKind::SeedNotPSD, "seed is not positive semidefinite",
                {Witness{"seed", seed, min_eigenvalue(seed)}});
  }
  std::vector<ComplexMatrix> effects;
  ComplexMatrix total = zeros(rep.dim());
  for (Element g = 0; g < rep.group().order(); ++g) {
    effects.push_back(act(rep, g, seed));
    total += effects.back();
  }
  const ComplexMatrix deviation = total - identity(rep.dim());
  if (max_abs(deviation) > tol) {
    const double norm = operator_norm(deviation);
    throw Error(ErrorKind::SeedNotNormalizing,
                "translates of the seed sum to I + D with ||D|| = " + std::to_string(norm),
                {Witness{"D", deviation, norm}});
  }
  return FrameObservable::create(rep, std::move(effects), std::move(value_system));
}

FramePtr canonical_ideal_frame(const FiniteGroup& group) {
  const UnitaryRep rep = regular_representation(group);
  const Index e = group.identity();
  return principal_frame_from_seed(rep, matrix_unit(group.order(), e, e));
}

FramePtr smeared_frame(const FramePtr& frame, double weight) {
  const Index d = frame->dim();
  std::vector<ComplexMatrix> effects;
  for (const auto& e : frame->effects()) {
    effects.push_back((1.0 - weight) * e + weight * e.trace() / static_cast<double>(d) * identity(d));
  }
  return FrameObservable::create(frame->rep(), std::move(effects), frame->value_system());
}

std::vector<double> born_measure(const FrameObservable& frame, const ComplexMatrix& omega) {
  if (omega.rows() != frame.dim() || !is_density_matrix(omega)) {
    throw Error(ErrorKind::NotAState,
                "frame state is not a density matrix of dimension " + std::to_string(frame.dim()),
                {Witness{"omega", omega, 0.0}});
  }
  std::vector<double> p;
  p.reserve(frame.effects().size());
  for (const auto& e : frame.effects()) p.push_back((omega * e).trace().real());
  return p;
}

std::vector<double> clamp_to_simplex(std::vector<double> p) {
  for (double& x : p) x = std::clamp(x, 0.0, 1.0);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (total > 0.0) {
    for (double& x : p) x /= total;
  }
  return p;
}

bool same_frame(const FrameObservable& a, const FrameObservable& b, double tol) {
  if (&a == &b) return true;
  if (!same_representation(a.rep(), b.rep(), tol)) return false;
  for (Element g = 0; g < a.group().order(); ++g) {
    if (!approx_equal(a.effect(g), b.effect(g), tol)) return false;
  }
  return same_system(*a.value_system(), *b.value_system(), tol);
}

// ---------------------------------------------------------------------------

FrameMorphism::FrameMorphism(FramePtr source, FramePtr target, ChannelMap channel)
    : source_(std::move(source)), target_(std::move(target)), channel_(std::move(channel)) {
  const double tol = tolerance();
  require_same_group(source_->rep(), target_->rep(), "frame morphism");
  if (!same_system(*channel_.source(), *source_->value_system(), tol) ||
      !same_system(*channel_.target(), *target_->value_system(), tol)) {
    throw Error(ErrorKind::ObjectMismatch,
                "channel does not connect the value systems of the two frames");
  }
  const FiniteGroup& group = source_->group();
  for (Element g = 0; g < group.order(); ++g) {
    const ComplexMatrix pushed = channel_.apply(source_->effect(g));
    const double dev = max_abs_diff(pushed, target_->effect(g));
    if (dev > tol) {
      throw Error(ErrorKind::FactorizationFails,
                  "target effect " + group.label(g) + " is not the image of the source effect",
                  {Witness{"element " + group.label(g), pushed, dev},
                   Witness{"expected", target_->effect(g), dev}});
    }
  }
  effect_span_ = is_equivariant_on(channel_, source_->effects(), tol);
  if (!effect_span_.equivariant) {
    const Element g = *effect_span_.element;
    throw Error(ErrorKind::EffectSpanNotEquivariant,
                "channel is not equivariant on the source effects at element " + group.label(g),
                {Witness{"element " + group.label(g), effect_span_.basis_element,
                         effect_span_.deviation}});
  }
  full_ = is_equivariant(channel_, tol);
}

FrameMorphism build_frame_morphism(FramePtr source, FramePtr target, ChannelMap channel) {
  return FrameMorphism(std::move(source), std::move(target), std::move(channel));
}

FrameMorphism identity_frame_morphism(const FramePtr& frame) {
  return FrameMorphism(frame, frame, identity_channel(frame->value_system()));
}

FrameMorphism compose_frame_morphisms(const FrameMorphism& first, const FrameMorphism& second) {
  if (!same_frame(*first.target(), *second.source())) {
    throw Error(ErrorKind::ObjectMismatch,
                "cannot compose frame morphisms: target of the first is not the source of the second");
  }
  return FrameMorphism(first.source(), second.target(),
                       compose_channels(first.channel(), second.channel()));
}

FrameMorphism reorientation_morphism(const FramePtr& frame, Element h) {
  const UnitaryRep& rep = frame->rep();
  std::vector<ComplexMatrix> moved;
  for (const auto& e : frame->effects()) moved.push_back(act(rep, h, e));
  FramePtr target;
  try {
    target = FrameObservable::create(rep, std::move(moved), frame->value_system());
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::InvalidFrame) throw;
    throw Error(ErrorKind::NotCentral,
                "reorienting by " + frame->group().label(h) +
                    " does not give a covariant frame (" + err.what() + ")",
                err.witnesses());
  }
  return FrameMorphism(frame, std::move(target), action_channel(frame->value_system(), h));
}

FrameMorphism smearing_morphism(const FramePtr& frame, double weight) {
  return FrameMorphism(frame, smeared_frame(frame, weight),
                       depolarizing_channel(frame->value_system(), weight));
}

IsomorphismReport frames_isomorphic_by(const FramePtr& first, const FramePtr& second,
                                       const ComplexMatrix& t) {
  const double tol = tolerance();
  if (!is_unitary(t, tol) || t.rows() != first->dim() || t.rows() != second->dim()) {
    throw Error(ErrorKind::NotUnitary, "frame isomorphism requires a unitary of matching dimension",
                {Witness{"t", t, 0.0}});
  }
  IsomorphismReport report;
  if (!same_group(first->rep(), second->rep())) {
    report.reason = "frames live on different groups";
    return report;
  }
  const FiniteGroup& group = first->group();
  for (Element g = 0; g < group.order(); ++g) {
    const double fwd = max_abs_diff(t * first->effect(g) * t.adjoint(), second->effect(g));
    const double bwd = max_abs_diff(t.adjoint() * second->effect(g) * t, first->effect(g));
    report.forward_deviation = std::max(report.forward_deviation, fwd);
    report.backward_deviation = std::max(report.backward_deviation, bwd);
    if ((fwd > tol || bwd > tol) && !report.failing_element) report.failing_element = g;
  }
  if (report.failing_element) {
    report.reason = "factorization fails at element " + group.label(*report.failing_element);
    return report;
  }
  for (const auto& b : first->value_system()->space().elements()) {
    if (!second->value_system()->contains(t * b * t.adjoint(), tol)) {
      report.reason = "conjugation does not map the first value system into the second";
      return report;
    }
  }
  for (const auto& b : second->value_system()->space().elements()) {
    if (!first->value_system()->contains(t.adjoint() * b * t, tol)) {
      report.reason = "inverse conjugation does not map the second value system into the first";
      return report;
    }
  }
  report.isomorphic = true;
  return report;
}

}  // namespace relframe
