#include "relframe/relativization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

#include "relframe/channels.hpp"
#include "relframe/errors.hpp"
#include "relframe/random.hpp"

namespace relframe {

namespace {

double commutator_gap(const ComplexMatrix& a, const ComplexMatrix& u) {
  return max_abs(a * u - u * a);
}

ComplexMatrix random_in_span(const MatrixSubspaceBasis& space, RandomMatrices& rng) {
  ComplexVector c(space.size());
  for (Index i = 0; i < c.size(); ++i) c(i) = rng.complex();
  return space.combine(c);
}

[[noreturn]] void throw_not_equivariant(const ChannelMap& phi, const EquivarianceResult& eq) {
  const FiniteGroup& group = phi.source()->rep().group();
  const std::string g = group.label(*eq.element);
  throw Error(ErrorKind::PhiNotEquivariant,
              "system channel is not equivariant at element " + g,
              {Witness{"element " + g, eq.basis_element, eq.deviation}});
}

void require_equivariant(const ChannelMap& phi) {
  const EquivarianceResult eq = is_equivariant(phi, tolerance());
  if (!eq.equivariant) throw_not_equivariant(phi, eq);
}

CheckItem deviation_item(std::string name, double dev, double tol) {
  CheckItem item;
  item.name = std::move(name);
  item.deviation = dev;
  item.passed = dev <= tol;
  return item;
}

}  // namespace

// ---------------------------------------------------------------------------
// RelativizationMap

RelativizationMap::RelativizationMap(FramePtr frame, SystemPtr system)
    : frame_(std::move(frame)),
      system_(std::move(system)),
      joint_rep_(tensor_rep(frame_->rep(), system_->rep())) {
  images_.reserve(static_cast<std::size_t>(system_->dim()));
  for (const auto& b : system_->space().elements()) images_.push_back(apply_unchecked(b));
}

ComplexMatrix RelativizationMap::apply_unchecked(const ComplexMatrix& a) const {
  if (a.rows() != system_->ambient_dim() || a.cols() != system_->ambient_dim()) {
    throw Error(ErrorKind::DimensionError, "operator does not act on the system space");
  }
  const Index d = joint_dim();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Element g = 0; g < frame_->group().order(); ++g) {
    out += tensor_product(frame_->effect(g), act(system_->rep(), g, a));
  }
  return out;
}

ComplexMatrix RelativizationMap::operator()(const ComplexMatrix& a) const {
  const ComplexVector c = system_->expand(a);
  const Index d = joint_dim();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < c.size(); ++i) out += c(i) * images_[static_cast<std::size_t>(i)];
  return out;
}

ComplexMatrix RelativizationMap::predual(const ComplexMatrix& t) const {
  const Index dr = frame_->dim();
  const Index ds = system_->ambient_dim();
  if (t.rows() != dr * ds || t.cols() != dr * ds) {
    throw Error(ErrorKind::DimensionError, "joint operator has the wrong dimension");
  }
  const FiniteGroup& group = frame_->group();
  ComplexMatrix out = ComplexMatrix::Zero(ds, ds);
  for (Element g = 0; g < group.order(); ++g) {
    const ComplexMatrix weighted = tensor_product(frame_->effect(g), identity(ds)) * t;
    out += act(system_->rep(), group.inverse(g), partial_trace_first(weighted, dr, ds));
  }
  return out;
}

ComplexMatrix RelativizationMap::superoperator() const {
  const Index d = joint_dim();
  ComplexMatrix s(d * d, static_cast<Index>(images_.size()));
  for (std::size_t i = 0; i < images_.size(); ++i) s.col(static_cast<Index>(i)) = vec(images_[i]);
  return s;
}

ComplexMatrix relativize(const FramePtr& frame, const SystemPtr& system, const ComplexMatrix& a) {
  return RelativizationMap(frame, system)(a);
}

// ---------------------------------------------------------------------------
// RelativeSubspace

RelativeSubspace::RelativeSubspace(Token, RelativizationPtr map, SystemPtr relative_system,
                                   MatrixSubspaceBasis kernel, ComplexMatrix pseudo_inverse)
    : map_(std::move(map)),
      relative_system_(std::move(relative_system)),
      kernel_(std::move(kernel)),
      pseudo_inverse_(std::move(pseudo_inverse)) {}

std::shared_ptr<const RelativeSubspace> RelativeSubspace::build(FramePtr frame, SystemPtr system) {
  const double tol = tolerance();
  auto map = std::make_shared<const RelativizationMap>(std::move(frame), std::move(system));
  const ComplexMatrix s = map->superoperator();
  Eigen::JacobiSVD<ComplexMatrix> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double cutoff = tol * std::max(1.0, sigma.size() > 0 ? sigma(0) : 0.0);
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;

  const Index d = map->joint_dim();
  std::vector<ComplexMatrix> space;
  for (Index k = 0; k < rank; ++k) space.push_back(unvec(svd.matrixU().col(k), d));

  const MatrixSubspaceBasis& sys = map->system()->space();
  std::vector<ComplexMatrix> kernel;
  for (Index k = rank; k < s.cols(); ++k) kernel.push_back(sys.combine(svd.matrixV().col(k)));

  ComplexMatrix pinv = ComplexMatrix::Zero(s.cols(), s.rows());
  for (Index k = 0; k < rank; ++k) {
    pinv += (svd.matrixV().col(k) / sigma(k)) * svd.matrixU().col(k).adjoint();
  }

  SystemPtr relative = SemiQuantumSystem::from_basis(
      map->joint_rep(), MatrixSubspaceBasis(d, std::move(space), tol));
  MatrixSubspaceBasis kernel_basis(map->system()->ambient_dim(), std::move(kernel), tol);
  return std::make_shared<const RelativeSubspace>(Token{}, std::move(map), std::move(relative),
                                                  std::move(kernel_basis), std::move(pinv));
}

ComplexVector RelativeSubspace::preimage_coordinates(const ComplexMatrix& b) const {
  if (!relative_system_->contains(b)) {
    throw Error(ErrorKind::OperatorOutsideSystem, "operator is not a relative observable",
                {Witness{"operator", b, relative_system_->space().residual(b)}});
  }
  return pseudo_inverse_ * vec(b);
}

RelativeSubspacePtr build_relative_subspace(const FramePtr& frame, const SystemPtr& system) {
  return RelativeSubspace::build(frame, system);
}

// ---------------------------------------------------------------------------
// Induced morphisms between relative spaces

YenMorphism::YenMorphism(RelativeSubspacePtr source, RelativeSubspacePtr target, FrameMorphism psi,
                         ChannelMap phi, ChannelMap channel, double kernel_defect)
    : source_(std::move(source)),
      target_(std::move(target)),
      psi_(std::move(psi)),
      phi_(std::move(phi)),
      channel_(std::move(channel)),
      kernel_defect_(kernel_defect) {}

YenMorphism build_yen_morphism(const FrameMorphism& psi, const ChannelMap& phi,
                               const SamplingOptions& options) {
  const double tol = tolerance();
  if (!same_group(psi.source()->rep(), phi.source()->rep()) ||
      !same_group(psi.target()->rep(), phi.target()->rep())) {
    throw Error(ErrorKind::ObjectMismatch,
                "frame morphism and system channel live on different groups");
  }
  auto source = build_relative_subspace(psi.source(), phi.source());
  auto target = build_relative_subspace(psi.target(), phi.target());
  const RelativizationMap& target_map = target->map();

  double defect = 0.0;
  for (const auto& k : source->kernel().elements()) {
    const ComplexMatrix pushed = target_map.apply_unchecked(phi.apply(k));
    const double norm = operator_norm(pushed);
    defect = std::max(defect, norm);
    if (norm > tol) {
      throw Error(ErrorKind::IllDefined,
                  "a kernel element of the source relativization survives the target side",
                  {Witness{"kernel element", k, norm}, Witness{"image", pushed, norm}});
    }
  }

  std::vector<ComplexMatrix> generator_images;
  for (const auto& img : phi.images()) generator_images.push_back(target_map.apply_unchecked(img));

  const Index dt = target_map.joint_dim();
  std::vector<ComplexMatrix> images;
  for (const auto& b : source->space().elements()) {
    const ComplexVector c = source->preimage_coordinates(b);
    ComplexMatrix out = ComplexMatrix::Zero(dt, dt);
    for (Index i = 0; i < c.size(); ++i) out += c(i) * generator_images[static_cast<std::size_t>(i)];
    images.push_back(std::move(out));
  }
  ChannelMap channel(source->relative_system(), target->relative_system(), std::move(images),
                     options);
  return YenMorphism(std::move(source), std::move(target), psi, phi, std::move(channel), defect);
}

ChannelMap compose_yen_morphisms(const YenMorphism& first, const YenMorphism& second) {
  return compose_channels(first.channel(), second.channel());
}

// ---------------------------------------------------------------------------
// Channel axioms

double contraction_ratio(const RelativizationMap& map, const ComplexMatrix& a) {
  const double denom = operator_norm(a);
  if (denom == 0.0) return 0.0;
  return operator_norm(map(a)) / denom;
}

CheckReport check_channel_axioms(const RelativizationMap& map, const SamplingOptions& options) {
  const double tol = tolerance();
  const SemiQuantumSystem& system = *map.system();
  const MatrixSubspaceBasis& space = system.space();
  const Index ds = system.ambient_dim();
  const Index dj = map.joint_dim();
  RandomMatrices rng(options.seed);
  CheckReport report{"channel_axioms", {}};

  {
    double dev = 0.0;
    for (int s = 0; s < options.random_samples; ++s) {
      const ComplexMatrix a = random_in_span(space, rng);
      const ComplexMatrix b = random_in_span(space, rng);
      const Complex alpha = rng.complex();
      const Complex beta = rng.complex();
      dev = std::max(dev, max_abs_diff(map(alpha * a + beta * b), alpha * map(a) + beta * map(b)));
    }
    CheckItem item = deviation_item("linearity", dev, tol);
    item.evidence = Evidence::Sampled;
    report.items.push_back(std::move(item));
  }

  {
    const ComplexMatrix unit = map(identity(ds));
    CheckItem item = deviation_item("unitality", max_abs_diff(unit, identity(dj)), tol);
    if (!item.passed) item.witnesses.push_back(Witness{"image of I", unit, item.deviation});
    report.items.push_back(std::move(item));
  }

  {
    CheckItem item;
    item.name = "invariance";
    const auto& rep = map.joint_rep();
    for (std::size_t i = 0; i < map.images().size(); ++i) {
      for (Element g = 0; g < rep.group().order(); ++g) {
        const double gap = commutator_gap(map.images()[i], rep.matrix(g));
        if (gap > item.deviation) {
          item.deviation = gap;
          item.witnesses = {Witness{"element " + rep.group().label(g), map.images()[i], gap}};
        }
      }
    }
    item.passed = item.deviation <= tol;
    if (item.passed) item.witnesses.clear();
    report.items.push_back(std::move(item));
  }

  {
    CheckItem item;
    item.name = "positivity";
    double lowest = std::numeric_limits<double>::infinity();
    const auto samples = positive_samples(system, options);
    for (const auto& p : samples) {
      const ComplexMatrix img = map(p);
      const double herm = max_abs_diff(img, img.adjoint());
      const double low = min_eigenvalue(hermitian_part(img));
      if (low < lowest) lowest = low;
      const double violation = std::max(herm, -low);
      if (violation > item.deviation) {
        item.deviation = violation;
        item.witnesses = {Witness{"input", p, low}, Witness{"image", img, low}};
      }
    }
    item.evidence = Evidence::Sampled;
    item.note = std::to_string(samples.size()) + " sampled inputs";
    if (system.is_full_algebra()) {
      ComplexMatrix choi = ComplexMatrix::Zero(ds * dj, ds * dj);
      for (Index row = 0; row < ds; ++row) {
        for (Index col = 0; col < ds; ++col) {
          choi.block(row * dj, col * dj, dj, dj) = map(matrix_unit(ds, row, col));
        }
      }
      const double choi_low = min_eigenvalue(hermitian_part(choi));
      lowest = std::min(lowest, choi_low);
      if (-choi_low > item.deviation) {
        item.deviation = -choi_low;
        item.witnesses = {Witness{"Choi matrix", choi, choi_low}};
      }
      if (is_psd(choi, tol)) item.evidence = Evidence::Exact;
      item.note += "; Choi matrix checked";
    }
    item.value = lowest;
    item.deviation = std::max(item.deviation, 0.0);
    item.passed = item.deviation <= tol;
    if (item.passed) item.witnesses.clear();
    report.items.push_back(std::move(item));
  }

  {
    std::vector<ComplexMatrix> probes = space.elements();
    for (int s = 0; s < options.random_samples; ++s) probes.push_back(random_in_span(space, rng));
    for (auto& p : positive_samples(system, options)) probes.push_back(std::move(p));
    double worst = 0.0;
    double best = std::numeric_limits<double>::infinity();
    const ComplexMatrix* tightest = nullptr;
    const ComplexMatrix* loosest = nullptr;
    for (const auto& p : probes) {
      if (operator_norm(p) <= tol) continue;
      const double r = contraction_ratio(map, p);
      if (r >= worst) {
        worst = r;
        tightest = &p;
      }
      if (r < best) {
        best = r;
        loosest = &p;
      }
    }
    CheckItem item = deviation_item("contraction", std::max(0.0, worst - 1.0), tol);
    item.value = worst;
    item.evidence = Evidence::Sampled;
    if (!item.passed && tightest) item.witnesses.push_back(Witness{"input", *tightest, worst});
    report.items.push_back(std::move(item));

    CheckItem strict;
    strict.name = "contraction_strictness";
    strict.value = std::isfinite(best) ? best : 1.0;
    strict.evidence = Evidence::Sampled;
    if (best < 1.0 - tol && loosest) {
      strict.note = "strict contraction observed";
      strict.witnesses.push_back(Witness{"input", *loosest, best});
    } else {
      strict.note = "no strict contraction observed";
    }
    report.items.push_back(std::move(strict));
  }
  return report;
}

// ---------------------------------------------------------------------------

CheckReport check_ideal_isomorphism(const RelativizationMap& map) {
  const double tol = tolerance();
  const SemiQuantumSystem& system = *map.system();
  if (!system.is_full_algebra()) {
    throw Error(ErrorKind::RequiresFullAlgebra,
                "the homomorphism check needs the full algebra on the system space");
  }
  const auto& basis = system.space().elements();
  CheckReport report{"ideal_isomorphism", {}};

  CheckItem mult;
  mult.name = "multiplicativity";
  for (const auto& a : basis) {
    for (const auto& b : basis) {
      const double dev = operator_norm(map(a * b) - map(a) * map(b));
      if (dev > mult.deviation) {
        mult.deviation = dev;
        mult.witnesses = {Witness{"left factor", a, dev}, Witness{"right factor", b, dev}};
      }
    }
  }
  mult.passed = mult.deviation <= tol;

  CheckItem iso;
  iso.name = "isometry";
  CheckItem adj;
  adj.name = "adjoint";
  for (const auto& a : basis) {
    const ComplexMatrix img = map(a);
    const double dev = std::abs(operator_norm(img) - operator_norm(a));
    if (dev > iso.deviation) {
      iso.deviation = dev;
      iso.witnesses = {Witness{"operator", a, dev}};
    }
    const double adev = max_abs_diff(map(a.adjoint()), img.adjoint());
    if (adev > adj.deviation) {
      adj.deviation = adev;
      adj.witnesses = {Witness{"operator", a, adev}};
    }
  }
  iso.passed = iso.deviation <= tol;
  adj.passed = adj.deviation <= tol;

  const bool homomorphism = mult.passed && iso.passed && adj.passed;
  const bool ideal = map.frame()->is_ideal();
  CheckItem iff;
  iff.name = "ideal_iff";
  iff.passed = homomorphism == ideal;
  iff.value = ideal ? 1.0 : 0.0;
  iff.note = std::string(ideal ? "ideal frame" : "non-ideal frame") +
             (homomorphism ? ", homomorphism" : ", not a homomorphism");

  for (auto* item : {&mult, &iso, &adj}) {
    if (item->passed) item->witnesses.clear();
    report.items.push_back(std::move(*item));
  }
  report.items.push_back(std::move(iff));
  return report;
}

// ---------------------------------------------------------------------------
// Functor laws

CheckReport check_functor_laws(const std::vector<FunctorLink>& chain,
                               const SamplingOptions& options) {
  const double tol = tolerance();
  CheckReport report{"functor_laws", {}};
  if (chain.empty()) return report;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    if (!same_frame(*chain[k].first.target(), *chain[k + 1].first.source()) ||
        !same_system(*chain[k].second.target(), *chain[k + 1].second.source())) {
      throw Error(ErrorKind::ObjectMismatch,
                  "link " + std::to_string(k + 1) + " does not start where link " +
                      std::to_string(k) + " ends");
    }
  }

  std::vector<std::pair<FramePtr, SystemPtr>> objects;
  objects.emplace_back(chain.front().first.source(), chain.front().second.source());
  for (const auto& link : chain) objects.emplace_back(link.first.target(), link.second.target());

  CheckItem ident;
  ident.name = "identity";
  for (std::size_t k = 0; k < objects.size(); ++k) {
    const auto& [frame, system] = objects[k];
    const YenMorphism yen = build_yen_morphism(identity_frame_morphism(frame),
                                               identity_channel(system), options);
    for (const auto& b : yen.source()->space().elements()) {
      const double dev = max_abs_diff(yen.apply(b), b);
      if (dev > ident.deviation) {
        ident.deviation = dev;
        ident.witnesses = {Witness{"object " + std::to_string(k), b, dev}};
      }
    }
  }
  ident.passed = ident.deviation <= tol;
  if (ident.passed) ident.witnesses.clear();

  CheckItem comp;
  comp.name = "composition";
  std::vector<YenMorphism> steps;
  for (const auto& link : chain) steps.push_back(build_yen_morphism(link.first, link.second, options));
  FrameMorphism psi = chain.front().first;
  ChannelMap phi = chain.front().second;
  for (std::size_t k = 1; k < chain.size(); ++k) {
    psi = compose_frame_morphisms(psi, chain[k].first);
    phi = compose_channels(phi, chain[k].second, options);
    const YenMorphism direct = build_yen_morphism(psi, phi, options);
    for (const auto& b : steps.front().source()->space().elements()) {
      ComplexMatrix stepwise = b;
      for (std::size_t j = 0; j <= k; ++j) stepwise = steps[j].apply(stepwise);
      const double dev = max_abs_diff(stepwise, direct.apply(b));
      if (dev > comp.deviation) {
        comp.deviation = dev;
        comp.witnesses = {Witness{"prefix of length " + std::to_string(k + 1), b, dev}};
      }
    }
  }
  comp.passed = comp.deviation <= tol;
  if (comp.passed) comp.witnesses.clear();
  comp.value = static_cast<double>(chain.size());

  report.items.push_back(std::move(ident));
  report.items.push_back(std::move(comp));
  return report;
}

CheckReport check_equivariant_tensor_form(const FrameMorphism& psi, const ChannelMap& phi,
                                          const SamplingOptions& options) {
  const double tol = tolerance();
  require_equivariant(phi);
  const YenMorphism yen = build_yen_morphism(psi, phi, options);
  CheckItem item;
  item.name = "tensor_form";
  for (const auto& b : yen.source()->space().elements()) {
    const ComplexMatrix expected = apply_parallel(psi.channel(), phi, b);
    const double dev = max_abs_diff(yen.apply(b), expected);
    if (dev > item.deviation) {
      item.deviation = dev;
      item.witnesses = {Witness{"relative observable", b, dev}, Witness{"expected", expected, dev}};
    }
  }
  item.passed = item.deviation <= tol;
  if (item.passed) item.witnesses.clear();
  return CheckReport{"tensor_form", {std::move(item)}};
}

CheckReport check_naturality(const FramePtr& frame, const ChannelMap& phi) {
  const double tol = tolerance();
  require_equivariant(phi);
  const RelativizationMap before(frame, phi.source());
  const RelativizationMap after(frame, phi.target());
  const ChannelMap id = identity_channel(frame->value_system());
  CheckItem item;
  item.name = "naturality";
  for (const auto& b : phi.source()->space().elements()) {
    const ComplexMatrix lhs = after(phi.apply(b));
    const ComplexMatrix rhs = apply_parallel(id, phi, before(b));
    const double dev = max_abs_diff(lhs, rhs);
    if (dev > item.deviation) {
      item.deviation = dev;
      item.witnesses = {Witness{"system operator", b, dev}};
    }
  }
  item.passed = item.deviation <= tol;
  if (item.passed) item.witnesses.clear();
  return CheckReport{"naturality", {std::move(item)}};
}

// ---------------------------------------------------------------------------
// Relative states

StateClass predual_relativize(const FramePtr& frame, const SystemPtr& system,
                              const ComplexMatrix& joint_state) {
  const RelativizationMap map(frame, system);
  if (joint_state.rows() != map.joint_dim() || !is_density_matrix(joint_state)) {
    throw Error(ErrorKind::NotAState, "joint operator is not a density matrix of dimension " +
                                          std::to_string(map.joint_dim()),
                {Witness{"joint state", joint_state, 0.0}});
  }
  return state_class(system, map.predual(joint_state));
}

StateClass product_relative_state(const FramePtr& frame, const SystemPtr& system,
                                  const ComplexMatrix& omega, const ComplexMatrix& rho) {
  require_same_group(frame->rep(), system->rep(), "product_relative_state");
  const std::vector<double> mu = born_measure(*frame, omega);
  if (rho.rows() != system->ambient_dim() || !is_density_matrix(rho)) {
    throw Error(ErrorKind::NotAState, "system operator is not a density matrix",
                {Witness{"rho", rho, 0.0}});
  }
  const FiniteGroup& group = frame->group();
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (Element g = 0; g < group.order(); ++g) {
    out += mu[static_cast<std::size_t>(g)] * act(system->rep(), group.inverse(g), rho);
  }
  return state_class(system, out);
}

ExternalTransform external_frame_transform(const FrameMorphism& psi, const SystemPtr& system,
                                           const ComplexMatrix& omega_target,
                                           const ComplexMatrix& rho,
                                           const ChannelMap* extension) {
  const double tol = tolerance();
  const FramePtr& source = psi.source();
  const FramePtr& target = psi.target();
  if (omega_target.rows() != target->dim() || !is_density_matrix(omega_target)) {
    throw Error(ErrorKind::NotAState, "target frame state is not a density matrix",
                {Witness{"omega", omega_target, 0.0}});
  }
  const ChannelMap* full = &psi.channel();
  if (!full->source()->is_full_algebra() || !full->target()->is_full_algebra()) {
    if (extension == nullptr) {
      throw Error(ErrorKind::RequiresFullAlgebra,
                  "frame morphism acts on a proper value system and no extension was given");
    }
    if (!extension->source()->is_full_algebra() || !extension->target()->is_full_algebra() ||
        !same_representation(extension->source()->rep(), source->rep(), tol) ||
        !same_representation(extension->target()->rep(), target->rep(), tol)) {
      throw Error(ErrorKind::RequiresFullAlgebra,
                  "extension must act between the full algebras of the two frames");
    }
    for (const auto& b : psi.channel().source()->space().elements()) {
      const double dev = max_abs_diff(extension->apply(b), psi.channel().apply(b));
      if (dev > tol) {
        throw Error(ErrorKind::ValidationError,
                    "extension disagrees with the frame morphism on its value system",
                    {Witness{"operator", b, dev}});
      }
    }
    full = extension;
  }
  ExternalTransform out{product_relative_state(target, system, omega_target, rho),
                        StateClass{}, predual_channel(*full, omega_target), 0.0};
  out.pulled_back = hermitian_part(out.pulled_back);
  out.source_side = product_relative_state(source, system, out.pulled_back, rho);
  out.deviation = state_class_distance(out.target_side, out.source_side);
  return out;
}

}  // namespace relframe
