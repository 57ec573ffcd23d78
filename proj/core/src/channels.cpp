#include "relframe/channels.hpp"

#include <algorithm>
#include <string>

#include "relframe/errors.hpp"

namespace relframe {

ChannelMap channel_from_function(SystemPtr source, SystemPtr target, const OperatorMap& f,
                                 const SamplingOptions& options) {
  std::vector<ComplexMatrix> images;
  images.reserve(source->space().elements().size());
  for (const auto& b : source->space().elements()) images.push_back(f(b));
  return ChannelMap(std::move(source), std::move(target), std::move(images), options);
}

ChannelMap channel_from_pairs(SystemPtr source, SystemPtr target,
                              std::span<const ComplexMatrix> inputs,
                              std::span<const ComplexMatrix> outputs,
                              const SamplingOptions& options) {
  const double tol = tolerance();
  if (inputs.size() != outputs.size()) {
    throw Error(ErrorKind::DimensionError, "channel_from_pairs: " +
                                               std::to_string(inputs.size()) + " inputs but " +
                                               std::to_string(outputs.size()) + " outputs");
  }
  const Index k = source->dim();
  const Index dt = target->ambient_dim();
  const auto n = static_cast<Index>(inputs.size());
  // Columns are source coordinates of the inputs.
  ComplexMatrix coords(k, n);
  ComplexMatrix values(dt * dt, n);
  for (Index j = 0; j < n; ++j) {
    coords.col(j) = source->expand(inputs[static_cast<std::size_t>(j)]);
    const auto& out = outputs[static_cast<std::size_t>(j)];
    if (out.rows() != dt || out.cols() != dt) {
      throw Error(ErrorKind::DimensionError, "output " + std::to_string(j) + " has the wrong size");
    }
    values.col(j) = vec(out);
  }
  if (numerical_rank(coords, tol) != k) {
    throw Error(ErrorKind::ValidationError, "inputs do not span the source system");
  }
  // Solve superop * coords = values in the least-squares sense, then check
  // that dependent inputs were consistent.
  const ComplexMatrix superop =
      coords.transpose().completeOrthogonalDecomposition().solve(values.transpose()).transpose();
  const double residual = max_abs_diff(superop * coords, values);
  if (residual > tol) {
    throw Error(ErrorKind::ValidationError,
                "outputs are inconsistent with linearity (residual " + std::to_string(residual) + ")");
  }
  std::vector<ComplexMatrix> images;
  for (Index i = 0; i < k; ++i) images.push_back(unvec(superop.col(i), dt));
  return ChannelMap(std::move(source), std::move(target), std::move(images), options);
}

ChannelMap identity_channel(SystemPtr system) {
  return ChannelMap(system, system, system->space().elements());
}

ChannelMap conjugation_channel(SystemPtr source, SystemPtr target, const ComplexMatrix& u,
                               const SamplingOptions& options) {
  if (!is_unitary(u) || u.rows() != source->ambient_dim() || u.rows() != target->ambient_dim()) {
    throw Error(ErrorKind::NotUnitary, "conjugation requires a unitary of matching dimension",
                {Witness{"u", u, 0.0}});
  }
  return channel_from_function(
      std::move(source), std::move(target),
      [&](const ComplexMatrix& a) -> ComplexMatrix { return u * a * u.adjoint(); }, options);
}

ChannelMap kraus_channel(SystemPtr source, SystemPtr target,
                         std::span<const ComplexMatrix> kraus, const SamplingOptions& options) {
  const Index ds = source->ambient_dim();
  const Index dt = target->ambient_dim();
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    if (kraus[i].rows() != ds || kraus[i].cols() != dt) {
      throw Error(ErrorKind::DimensionError,
                  "Kraus operator " + std::to_string(i) + " must be " + std::to_string(ds) +
                      "x" + std::to_string(dt));
    }
  }
  return channel_from_function(
      std::move(source), std::move(target),
      [&](const ComplexMatrix& a) -> ComplexMatrix {
        ComplexMatrix out = ComplexMatrix::Zero(dt, dt);
        for (const auto& k : kraus) out += k.adjoint() * a * k;
        return out;
      },
      options);
}

ChannelMap depolarizing_channel(SystemPtr system, double weight, const SamplingOptions& options) {
  const Index d = system->ambient_dim();
  return channel_from_function(
      system, system,
      [&](const ComplexMatrix& a) -> ComplexMatrix {
        return (1.0 - weight) * a + weight * a.trace() / static_cast<double>(d) * identity(d);
      },
      options);
}

ChannelMap ampliation_channel(SystemPtr source, SystemPtr target, const SamplingOptions& options) {
  const Index ds = source->ambient_dim();
  const Index dt = target->ambient_dim();
  if (dt % ds != 0) {
    throw Error(ErrorKind::DimensionError, "target dimension " + std::to_string(dt) +
                                               " is not a multiple of " + std::to_string(ds));
  }
  const ComplexMatrix pad = identity(dt / ds);
  return channel_from_function(
      std::move(source), std::move(target),
      [&](const ComplexMatrix& a) -> ComplexMatrix { return tensor_product(a, pad); }, options);
}

ChannelMap action_channel(SystemPtr system, Element g, const SamplingOptions& options) {
  const UnitaryRep& rep = system->rep();
  return channel_from_function(
      system, system, [&](const ComplexMatrix& a) -> ComplexMatrix { return act(rep, g, a); },
      options);
}

ChannelMap compose_channels(const ChannelMap& first, const ChannelMap& second,
                            const SamplingOptions& options) {
  if (!same_system(*first.target(), *second.source())) {
    throw Error(ErrorKind::ObjectMismatch,
                "cannot compose: target of the first channel is not the source of the second");
  }
  std::vector<ComplexMatrix> images;
  images.reserve(first.images().size());
  for (const auto& img : first.images()) images.push_back(second.apply(img));
  return ChannelMap(first.source(), second.target(), std::move(images), options);
}

ComplexMatrix apply_parallel(const ChannelMap& left, const ChannelMap& right,
                             const ComplexMatrix& b) {
  const auto& lbasis = left.source()->space();
  const auto& rbasis = right.source()->space();
  const Index dl = lbasis.ambient_dim();
  const Index dr = rbasis.ambient_dim();
  if (b.rows() != dl * dr || b.cols() != dl * dr) {
    throw Error(ErrorKind::DimensionError, "apply_parallel: operator has the wrong dimension");
  }
  // Realign b so that l ⊗ r becomes the rank-one matrix vec(l) vec(r)^T.
  ComplexMatrix realigned(dl * dl, dr * dr);
  for (Index j = 0; j < dl; ++j) {
    for (Index i = 0; i < dl; ++i) {
      for (Index q = 0; q < dr; ++q) {
        for (Index p = 0; p < dr; ++p) {
          realigned(j * dl + i, q * dr + p) = b(i * dr + p, j * dr + q);
        }
      }
    }
  }
  // realigned = L C R^T with L, R the stacked bases; peel off each side.
  ComplexMatrix half(lbasis.size(), dr * dr);
  for (Index col = 0; col < dr * dr; ++col) {
    half.col(col) = lbasis.coordinates(unvec(realigned.col(col), dl));
  }
  ComplexMatrix coeffs(lbasis.size(), rbasis.size());
  for (Index k = 0; k < lbasis.size(); ++k) {
    coeffs.row(k) = rbasis.coordinates(unvec(half.row(k).transpose(), dr)).transpose();
  }

  const Index tl = left.target()->ambient_dim();
  const Index tr = right.target()->ambient_dim();
  ComplexMatrix rebuilt = ComplexMatrix::Zero(dl * dr, dl * dr);
  ComplexMatrix out = ComplexMatrix::Zero(tl * tr, tl * tr);
  for (Index k = 0; k < lbasis.size(); ++k) {
    for (Index l = 0; l < rbasis.size(); ++l) {
      const Complex c = coeffs(k, l);
      if (c == Complex(0.0)) continue;
      rebuilt += c * tensor_product(lbasis[k], rbasis[l]);
      out += c * tensor_product(left.images()[static_cast<std::size_t>(k)],
                                right.images()[static_cast<std::size_t>(l)]);
    }
  }
  const double residual = max_abs_diff(b, rebuilt);
  if (residual > tolerance()) {
    throw Error(ErrorKind::OperatorOutsideSystem,
                "operator is not in the tensor product of the two source systems",
                {Witness{"operator", b, residual}});
  }
  return out;
}

double channel_distance(const ChannelMap& a, const ChannelMap& b) {
  double worst = 0.0;
  for (const auto& basis : a.source()->space().elements()) {
    worst = std::max(worst, max_abs_diff(a.apply(basis), b.apply(basis)));
  }
  return worst;
}

}  // namespace relframe
