#include "relframe/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "relframe/errors.hpp"
#include "relframe/random.hpp"

namespace relframe {

namespace {

MatrixSubspaceBasis adjoint_basis(const MatrixSubspaceBasis& space) {
  std::vector<ComplexMatrix> adjoints;
  adjoints.reserve(space.elements().size());
  for (const auto& b : space.elements()) adjoints.push_back(b.adjoint());
  return MatrixSubspaceBasis::span_of(space.ambient_dim(), adjoints);
}

bool closed_under_products(const MatrixSubspaceBasis& space, double tol) {
  for (const auto& a : space.elements()) {
    if (!space.contains(a.adjoint(), tol)) return false;
    for (const auto& b : space.elements()) {
      if (!space.contains(a * b, tol)) return false;
    }
  }
  return true;
}

}  // namespace

SemiQuantumSystem::SemiQuantumSystem(Token, UnitaryRep rep, MatrixSubspaceBasis space,
                                     bool saturation_added)
    : rep_(std::move(rep)),
      space_(std::move(space)),
      adjoint_space_(adjoint_basis(space_)),
      saturation_added_(saturation_added) {
  const double tol = tolerance();
  const Index d = space_.ambient_dim();
  full_algebra_ = space_.size() == d * d;
  vn_algebra_ = full_algebra_ || closed_under_products(space_, tol);
  invariant_ = true;
  for (Element g = 0; g < rep_.group().order() && invariant_; ++g) {
    for (const auto& b : space_.elements()) {
      if (!approx_equal(act(rep_, g, b), b, tol)) {
        invariant_ = false;
        break;
      }
    }
  }
}

SystemPtr SemiQuantumSystem::from_basis(UnitaryRep rep, MatrixSubspaceBasis space,
                                        bool saturation_added) {
  const double tol = tolerance();
  if (space.ambient_dim() != rep.dim()) {
    throw Error(ErrorKind::InvalidSystem,
                "subspace of dimension-" + std::to_string(space.ambient_dim()) +
                    " operators on a representation of dimension " + std::to_string(rep.dim()));
  }
  if (!space.contains(identity(rep.dim()), tol)) {
    throw Error(ErrorKind::InvalidSystem, "identity is not in the subspace");
  }
  for (Element g = 0; g < rep.group().order(); ++g) {
    for (Index i = 0; i < space.size(); ++i) {
      const ComplexMatrix moved = act(rep, g, space[i]);
      const double residual = space.residual(moved);
      if (residual > tol) {
        throw Error(ErrorKind::InvalidSystem,
                    "subspace is not closed under the action of element " + rep.group().label(g),
                    {Witness{"g.b", moved, residual}});
      }
    }
  }
  return std::make_shared<const SemiQuantumSystem>(Token{}, std::move(rep), std::move(space),
                                                   saturation_added);
}

ComplexVector SemiQuantumSystem::expand(const ComplexMatrix& a) const {
  if (a.rows() != ambient_dim() || a.cols() != ambient_dim()) {
    throw Error(ErrorKind::DimensionError,
                "operator of dimension " + std::to_string(a.rows()) +
                    " on a system of dimension " + std::to_string(ambient_dim()));
  }
  const ComplexVector c = space_.coordinates(a);
  const double residual = max_abs_diff(a, space_.combine(c));
  if (residual > tolerance()) {
    throw Error(ErrorKind::OperatorOutsideSystem,
                "operator is not in the system's span (residual " + std::to_string(residual) + ")",
                {Witness{"operator", a, residual}});
  }
  return c;
}

SystemPtr full_system(const UnitaryRep& rep) {
  return SemiQuantumSystem::from_basis(rep, MatrixSubspaceBasis::full(rep.dim()));
}

SystemPtr subspace_system(const UnitaryRep& rep, std::span<const ComplexMatrix> gens) {
  const Index d = rep.dim();
  std::vector<ComplexMatrix> generators{identity(d)};
  generators.insert(generators.end(), gens.begin(), gens.end());
  const Index before = MatrixSubspaceBasis::span_of(d, generators).size();
  for (const auto& x : gens) {
    for (Element g = 0; g < rep.group().order(); ++g) {
      if (g != rep.group().identity()) generators.push_back(act(rep, g, x));
    }
  }
  auto space = MatrixSubspaceBasis::span_of(d, generators);
  const bool added = space.size() > before;
  return SemiQuantumSystem::from_basis(rep, std::move(space), added);
}

SystemPtr invariant_subalgebra(const UnitaryRep& rep) {
  const Index d = rep.dim();
  const ComplexMatrix id = identity(d);
  std::vector<ComplexMatrix> blocks;
  for (Element g = 0; g < rep.group().order(); ++g) {
    if (g == rep.group().identity()) continue;
    const auto& u = rep.matrix(g);
    // vec(XU - UX) = (U^T ⊗ I - I ⊗ U) vec(X)
    blocks.push_back(tensor_product(u.transpose(), id) - tensor_product(id, u));
  }
  ComplexMatrix constraints(static_cast<Index>(blocks.size()) * d * d, d * d);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    constraints.middleRows(static_cast<Index>(i) * d * d, d * d) = blocks[i];
  }
  std::vector<ComplexMatrix> commutant;
  for (const auto& v : null_space(constraints)) commutant.push_back(unvec(v, d));
  return SemiQuantumSystem::from_basis(rep, MatrixSubspaceBasis::span_of(d, commutant));
}

bool same_system(const SemiQuantumSystem& a, const SemiQuantumSystem& b, double tol) {
  if (&a == &b) return true;
  return same_representation(a.rep(), b.rep(), tol) && same_span(a.space(), b.space(), tol);
}

// ---------------------------------------------------------------------------
// Positivity probes

namespace {

ComplexMatrix projector_onto(const ComplexVector& v) { return v * v.adjoint(); }

std::vector<ComplexMatrix> lattice_projectors(Index d) {
  std::vector<ComplexMatrix> out;
  const double r = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < d; ++i) out.push_back(projector_onto(ComplexVector::Unit(d, i)));
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      for (const Complex phase : {Complex(1.0), Complex(-1.0), kI, -kI}) {
        ComplexVector v = ComplexVector::Zero(d);
        v(i) = r;
        v(j) = r * phase;
        out.push_back(projector_onto(v));
      }
    }
  }
  return out;
}

// Real-orthonormal Hermitian elements spanning the Hermitian part of the
// subspace (for *-closed subspaces; otherwise a subset of it).
std::vector<ComplexMatrix> hermitian_elements(const MatrixSubspaceBasis& space, double tol) {
  std::vector<ComplexMatrix> out;
  const auto push = [&](ComplexMatrix h) {
    if (!space.contains(h, tol)) return;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : out) h -= hs_inner(q, h).real() * q;
    }
    const double n = hs_norm(h);
    if (n > tol) out.push_back(h / n);
  };
  for (const auto& b : space.elements()) {
    push((b + b.adjoint()) / 2.0);
    push((b - b.adjoint()) / (2.0 * kI));
  }
  return out;
}

void push_shifted(std::vector<ComplexMatrix>& out, const ComplexMatrix& h, double tol) {
  const ComplexMatrix herm = hermitian_part(h);
  ComplexMatrix p = herm - min_eigenvalue(herm) * identity(herm.rows());
  const double n = operator_norm(p);
  if (n > tol) out.push_back(hermitian_part(p / n));
}

}  // namespace

std::vector<ComplexMatrix> positive_samples(const SemiQuantumSystem& system,
                                            const SamplingOptions& options) {
  const double tol = tolerance();
  const Index d = system.ambient_dim();
  RandomMatrices rng(options.seed);
  std::vector<ComplexMatrix> out;
  if (system.is_full_algebra()) {
    out = lattice_projectors(d);
    for (int s = 0; s < options.random_samples; ++s) {
      out.push_back(s % 2 == 0 ? rng.pure_state(d) : rng.density_matrix(d));
    }
    return out;
  }
  const auto herm = hermitian_elements(system.space(), tol);
  constexpr std::size_t kPairCap = 12;
  for (std::size_t k = 0; k < herm.size(); ++k) {
    push_shifted(out, herm[k], tol);
    push_shifted(out, -herm[k], tol);
  }
  for (std::size_t k = 0; k < std::min(herm.size(), kPairCap); ++k) {
    for (std::size_t l = k + 1; l < std::min(herm.size(), kPairCap); ++l) {
      push_shifted(out, herm[k] + herm[l], tol);
      push_shifted(out, herm[k] - herm[l], tol);
    }
  }
  for (int s = 0; s < options.random_samples && !herm.empty(); ++s) {
    ComplexMatrix h = ComplexMatrix::Zero(d, d);
    for (const auto& q : herm) h += rng.real() * q;
    push_shifted(out, h, tol);
  }
  out.push_back(identity(d));
  return out;
}

// ---------------------------------------------------------------------------
// ChannelMap

ChannelMap::ChannelMap(SystemPtr source, SystemPtr target, std::vector<ComplexMatrix> images,
                       const SamplingOptions& options)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  const double tol = tolerance();
  if (static_cast<Index>(images_.size()) != source_->dim()) {
    throw Error(ErrorKind::DimensionError,
                "expected " + std::to_string(source_->dim()) + " images, got " +
                    std::to_string(images_.size()));
  }
  const Index dt = target_->ambient_dim();
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const auto& img = images_[i];
    if (img.rows() != dt || img.cols() != dt) {
      throw Error(ErrorKind::DimensionError,
                  "image " + std::to_string(i) + " is not " + std::to_string(dt) + "x" +
                      std::to_string(dt));
    }
    const double residual = target_->space().residual(img);
    if (residual > tol) {
      throw Error(ErrorKind::ImageOutsideTarget,
                  "image of basis element " + std::to_string(i) + " is outside the target",
                  {Witness{"basis element", (*source_).space()[static_cast<Index>(i)], residual},
                   Witness{"image", img, residual}});
    }
  }

  const ComplexMatrix unit_image = apply(identity(source_->ambient_dim()));
  const double unital_dev = max_abs_diff(unit_image, identity(dt));
  if (unital_dev > tol) {
    throw Error(ErrorKind::NotUnital,
                "identity maps to an operator at distance " + std::to_string(unital_dev) +
                    " from the identity",
                {Witness{"phi(I)", unit_image, unital_dev}});
  }

  const double psd_floor = -tol * static_cast<double>(dt);
  if (source_->is_full_algebra()) {
    const Index ds = source_->ambient_dim();
    ComplexMatrix choi = ComplexMatrix::Zero(ds * dt, ds * dt);
    for (Index col = 0; col < ds; ++col) {
      for (Index row = 0; row < ds; ++row) {
        choi.block(row * dt, col * dt, dt, dt) = apply(matrix_unit(ds, row, col));
      }
    }
    positivity_.choi_psd = is_hermitian(choi, tol) &&
                           min_eigenvalue(choi) >= -tol * static_cast<double>(choi.rows());
    positivity_.min_eigenvalue = min_eigenvalue(choi);
    if (positivity_.choi_psd) {
      positivity_.evidence = Evidence::Exact;
      return;
    }
  }

  // Sampled fallback: a non-CP map may still be positive.
  positivity_.evidence = Evidence::Sampled;
  const auto samples = positive_samples(*source_, options);
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& p : samples) {
    const ComplexMatrix img = apply(p);
    const double herm_dev = max_abs_diff(img, img.adjoint());
    const double lowest = min_eigenvalue(img);
    worst = std::min(worst, lowest);
    if (herm_dev > tol || lowest < psd_floor) {
      throw Error(ErrorKind::NotPositive,
                  "a positive input maps to a non-positive operator (min eigenvalue " +
                      std::to_string(lowest) + ")",
                  {Witness{"input", p, lowest}, Witness{"image", img, lowest}});
    }
  }
  positivity_.samples = static_cast<int>(samples.size());
  if (!source_->is_full_algebra()) positivity_.min_eigenvalue = worst;
}

ComplexMatrix ChannelMap::apply(const ComplexMatrix& a) const {
  const ComplexVector c = source_->expand(a);
  const Index dt = target_->ambient_dim();
  ComplexMatrix out = ComplexMatrix::Zero(dt, dt);
  for (Index i = 0; i < c.size(); ++i) out += c(i) * images_[static_cast<std::size_t>(i)];
  return out;
}

ComplexMatrix ChannelMap::superoperator() const {
  const Index dt = target_->ambient_dim();
  ComplexMatrix s(dt * dt, static_cast<Index>(images_.size()));
  for (std::size_t i = 0; i < images_.size(); ++i) s.col(static_cast<Index>(i)) = vec(images_[i]);
  return s;
}

ChannelMap build_channel(SystemPtr source, SystemPtr target, std::vector<ComplexMatrix> images,
                         const SamplingOptions& options) {
  return ChannelMap(std::move(source), std::move(target), std::move(images), options);
}

// ---------------------------------------------------------------------------

EquivarianceResult is_equivariant_on(const ChannelMap& channel,
                                     std::span<const ComplexMatrix> operators, double tol) {
  const auto& src = channel.source()->rep();
  const auto& dst = channel.target()->rep();
  require_same_group(src, dst, "is_equivariant");
  EquivarianceResult result;
  for (Element g = 0; g < src.group().order(); ++g) {
    for (std::size_t i = 0; i < operators.size(); ++i) {
      const auto& b = operators[i];
      const double dev =
          max_abs_diff(channel.apply(act(src, g, b)), act(dst, g, channel.apply(b)));
      if (dev > result.deviation) result.deviation = dev;
      if (dev > tol && result.equivariant) {
        result.equivariant = false;
        result.element = g;
        result.basis_index = static_cast<Index>(i);
        result.basis_element = b;
      }
    }
  }
  return result;
}

EquivarianceResult is_equivariant(const ChannelMap& channel, double tol) {
  return is_equivariant_on(channel, channel.source()->space().elements(), tol);
}

ComplexMatrix predual_channel(const ChannelMap& channel, const ComplexMatrix& t) {
  if (!channel.source()->is_full_algebra() || !channel.target()->is_full_algebra()) {
    throw Error(ErrorKind::RequiresFullAlgebra,
                "predual is only computed for channels between full algebras");
  }
  const Index ds = channel.source()->ambient_dim();
  const Index dt = channel.target()->ambient_dim();
  if (t.rows() != dt || t.cols() != dt) {
    throw Error(ErrorKind::DimensionError, "predual argument must be " + std::to_string(dt) +
                                               "x" + std::to_string(dt));
  }
  // For the matrix unit E_{row,col}: tr[X E_{row,col}] = X(col,row).
  ComplexMatrix out(ds, ds);
  for (Index col = 0; col < ds; ++col) {
    for (Index row = 0; row < ds; ++row) {
      out(col, row) = (t * channel.apply(matrix_unit(ds, row, col))).trace();
    }
  }
  return out;
}

StateClass state_class(SystemPtr system, const ComplexMatrix& rho) {
  if (rho.rows() != system->ambient_dim() || !is_density_matrix(rho)) {
    throw Error(ErrorKind::NotAState, "operator is not a density matrix of dimension " +
                                          std::to_string(system->ambient_dim()),
                {Witness{"rho", rho, 0.0}});
  }
  ComplexMatrix canonical = system->adjoint_space().project(rho);
  return StateClass{std::move(system), std::move(canonical)};
}

double state_class_distance(const StateClass& a, const StateClass& b) {
  return max_abs_diff(a.canonical, b.canonical);
}

bool same_state_class(const StateClass& a, const StateClass& b, double tol) {
  return state_class_distance(a, b) <= tol;
}

Index quotient_dimension(const SemiQuantumSystem& system, double tol) {
  const Index d = system.ambient_dim();
  // tr[T A] = sum_ij T_ij A_ji, i.e. the constraint matrix for A is A^T.
  std::vector<ComplexMatrix> rows;
  for (const auto& a : system.space().elements()) rows.push_back(a.transpose());
  const auto annihilator = null_space(rows, d, tol);
  return d * d - annihilator.size();
}

}  // namespace relframe
