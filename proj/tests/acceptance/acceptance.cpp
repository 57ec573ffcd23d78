// Acceptance suite: one PASS/FAIL line per criterion.
//
// usage: relframe_acceptance <relframe-cli> <fixture-dir>

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "relframe/channels.hpp"
#include "relframe/errors.hpp"
#include "relframe/frame.hpp"
#include "relframe/random.hpp"
#include "relframe/relativization.hpp"
#include "relframe/system.hpp"
#include "relframe/tolerance.hpp"

using namespace relframe;

namespace {

constexpr double kTau = 1e-9;
constexpr double kExact = 1e-12;
constexpr double kWitnessFloor = 1e-3;
constexpr int kDualityPairs = 100;

struct Outcome {
  bool passed = true;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

// ---------------------------------------------------------------------------
// Building blocks

ComplexMatrix qubit_matrix(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const ComplexMatrix kX = qubit_matrix(0, 1, 1, 0);
const ComplexMatrix kZ = qubit_matrix(1, 0, 0, -1);
const ComplexMatrix kP0 = qubit_matrix(1, 0, 0, 0);
const ComplexMatrix kP1 = qubit_matrix(0, 0, 0, 1);
const ComplexMatrix kHadamard = qubit_matrix(1, 1, 1, -1) / std::sqrt(2.0);

std::shared_ptr<const FiniteGroup> cyclic(int n) { return std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(n)); }

UnitaryRep shift_rep(int n) {
  std::vector<ComplexMatrix> mats;
  for (int k = 0; k < n; ++k) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) m((i + k) % n, i) = 1.0;
    mats.push_back(m);
  }
  return UnitaryRep(cyclic(n), mats);
}

/// S3 permuting the basis of C^3; labels are one-line images.
UnitaryRep permutation_rep(const std::shared_ptr<const FiniteGroup>& s3) {
  std::vector<ComplexMatrix> mats;
  for (Element g = 0; g < s3->order(); ++g) {
    const std::string& label = s3->label(g);
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) m(label[i] - '0', i) = 1.0;
    mats.push_back(m);
  }
  return UnitaryRep(s3, mats);
}

struct Objects {
  std::shared_ptr<const FiniteGroup> z1 = cyclic(1);
  std::shared_ptr<const FiniteGroup> s3 = std::make_shared<const FiniteGroup>(FiniteGroup::symmetric(3));
  UnitaryRep flip{cyclic(2), {identity(2), kX}};
  UnitaryRep shift3 = shift_rep(3);
  UnitaryRep shift4 = shift_rep(4);
  UnitaryRep perm = permutation_rep(s3);
  UnitaryRep s3_regular = regular_representation(*s3);

  SystemPtr qubit = full_system(flip);
  SystemPtr c3 = full_system(shift3);
  SystemPtr c4 = full_system(shift4);
  SystemPtr p3 = full_system(perm);
  SystemPtr qubit_invariant = invariant_subalgebra(flip);
  SystemPtr p3_invariant = invariant_subalgebra(perm);

  FramePtr z2_ideal = principal_frame_from_seed(flip, kP0);
  FramePtr z2_quarter = principal_frame_from_seed(flip, (identity(2) + kZ / 4.0) / 2.0);
  FramePtr z2_half = principal_frame_from_seed(flip, (identity(2) + kZ / 2.0) / 2.0);
  FramePtr z2_flat = principal_frame_from_seed(flip, identity(2) / 2.0);
  FramePtr z3_ideal = canonical_ideal_frame(FiniteGroup::cyclic(3));
  FramePtr z3_flat = principal_frame_from_seed(shift3, identity(3) / 3.0);
  FramePtr z4_ideal = canonical_ideal_frame(FiniteGroup::cyclic(4));
  FramePtr z4_smeared = smeared_frame(z4_ideal, 0.5);
  FramePtr s3_ideal = principal_frame_from_seed(s3_regular, matrix_unit(6, 0, 0));
  FramePtr s3_smeared = smeared_frame(s3_ideal, 0.5);
  FramePtr s3_flat = principal_frame_from_seed(s3_regular, identity(6) / 6.0);

  // Frames built by canonical_ideal_frame own their group; systems on the
  // same group must share it.
  SystemPtr c3_for(const FramePtr& f) const { return full_system(UnitaryRep(f->rep().shared_group(), shift3.matrices())); }
  SystemPtr c4_for(const FramePtr& f) const { return full_system(UnitaryRep(f->rep().shared_group(), shift4.matrices())); }
};

struct Scenario {
  std::string name;
  FramePtr frame;
  SystemPtr system;
};

std::vector<Scenario> frame_system_scenarios(const Objects& o) {
  const FramePtr trivial = principal_frame_from_seed(trivial_representation(*o.z1, 1), identity(1));
  const SystemPtr trivial_sys = full_system(UnitaryRep(trivial->rep().shared_group(), {identity(2)}));
  return {
      {"trivial group", trivial, trivial_sys},
      {"Z2 ideal", o.z2_ideal, o.qubit},
      {"Z2 smeared 1/4", o.z2_quarter, o.qubit},
      {"Z2 smeared 1/2", o.z2_half, o.qubit},
      {"Z2 unlocalized", o.z2_flat, o.qubit},
      {"Z2 ideal on invariants", o.z2_ideal, o.qubit_invariant},
      {"Z3 ideal", o.z3_ideal, o.c3_for(o.z3_ideal)},
      {"Z3 unlocalized", o.z3_flat, o.c3},
      {"Z4 ideal", o.z4_ideal, o.c4_for(o.z4_ideal)},
      {"Z4 smeared", o.z4_smeared, o.c4_for(o.z4_smeared)},
      {"S3 ideal", o.s3_ideal, o.p3},
      {"S3 smeared", o.s3_smeared, o.p3},
      {"S3 unlocalized", o.s3_flat, o.p3},
      {"S3 ideal on invariants", o.s3_ideal, o.p3_invariant},
  };
}

// ---------------------------------------------------------------------------
// Criteria

Outcome channel_axioms(const Objects& o) {
  Outcome out;
  double unitality = 0.0, invariance = 0.0, choi_low = 0.0, ratio = 0.0;
  int scenarios = 0, exact = 0;
  for (const Scenario& s : frame_system_scenarios(o)) {
    const CheckReport r = check_channel_axioms(RelativizationMap(s.frame, s.system));
    ++scenarios;
    const CheckItem* pos = r.find("positivity");
    unitality = std::max(unitality, r.find("unitality")->deviation);
    invariance = std::max(invariance, r.find("invariance")->deviation);
    ratio = std::max(ratio, r.find("contraction")->value);
    if (s.system->is_full_algebra()) {
      choi_low = std::min(choi_low, pos->value);
      if (pos->evidence == Evidence::Exact) ++exact;
      else out.passed = false;
    }
    if (!r.passed()) {
      out.passed = false;
      out.detail += "[" + s.name + " failed] ";
    }
  }
  out.passed = out.passed && scenarios >= 12 && unitality <= kTau && invariance <= kTau && choi_low >= -kTau &&
               ratio <= 1.0 + kTau;
  out.detail += std::to_string(scenarios) + " scenarios, " + std::to_string(exact) +
                " Choi-certified; unitality " + sci(unitality) + ", invariance " + sci(invariance) +
                ", min Choi eigenvalue " + sci(choi_low) + ", max norm ratio " + std::to_string(ratio);
  return out;
}

Outcome ideal_iff(const Objects& o) {
  Outcome out;
  double ideal_worst = 0.0;
  double non_ideal_least = std::numeric_limits<double>::infinity();
  int ideal = 0, non_ideal = 0;
  for (const Scenario& s : frame_system_scenarios(o)) {
    if (!s.system->is_full_algebra()) continue;
    const CheckReport r = check_ideal_isomorphism(RelativizationMap(s.frame, s.system));
    const CheckItem* mult = r.find("multiplicativity");
    const CheckItem* iso = r.find("isometry");
    if (s.frame->is_ideal()) {
      ++ideal;
      ideal_worst = std::max({ideal_worst, mult->deviation, iso->deviation});
    } else {
      ++non_ideal;
      non_ideal_least = std::min(non_ideal_least, mult->deviation);
      if (mult->deviation < kWitnessFloor || mult->witnesses.empty()) {
        out.passed = false;
        out.detail += "[" + s.name + " lacks a witness] ";
      }
    }
  }
  out.passed = out.passed && ideal > 0 && non_ideal > 0 && ideal_worst <= kTau;
  out.detail += std::to_string(ideal) + " ideal (worst deviation " + sci(ideal_worst) + "), " +
                std::to_string(non_ideal) + " non-ideal (least multiplicativity gap " + sci(non_ideal_least) + ")";
  return out;
}

Outcome closed_forms(const Objects& o) {
  const ComplexMatrix zz = tensor_product(kZ, kZ);
  const double ideal_dev = max_abs_diff(relativize(o.z2_ideal, o.qubit, kZ), zz);
  const ComplexMatrix half = relativize(o.z2_half, o.qubit, kZ);
  const double half_dev = max_abs_diff(half, 0.5 * zz);
  const double norm = operator_norm(half);
  Outcome out;
  out.passed = ideal_dev <= kExact && half_dev <= kExact && std::abs(norm - 0.5) <= kTau;
  out.detail = "ideal Z->ZxZ deviation " + sci(ideal_dev) + ", smeared deviation " + sci(half_dev) + ", norm " +
               std::to_string(norm);
  return out;
}

Outcome functor_laws(const Objects& o) {
  const SystemPtr c3 = o.c3_for(o.z3_ideal);
  const SystemPtr c4 = o.c4_for(o.z4_ideal);
  const ComplexMatrix shift3 = o.shift3.matrix(1);
  const ComplexMatrix shift4 = o.shift4.matrix(1);
  const ComplexMatrix reflect = identity(3) - ComplexMatrix::Constant(3, 3, 2.0 / 3.0);

  const FrameMorphism z2_smear = smearing_morphism(o.z2_ideal, 0.5);
  const FrameMorphism z2_flip = reorientation_morphism(o.z2_ideal, 1);
  const FrameMorphism z3_a = smearing_morphism(o.z3_ideal, 0.2);
  const FrameMorphism z3_b = smearing_morphism(z3_a.target(), 0.5);
  const FrameMorphism z4_r1 = reorientation_morphism(o.z4_ideal, 1);
  const FrameMorphism z4_r2 = reorientation_morphism(z4_r1.target(), 2);
  const FrameMorphism z4_r3 = reorientation_morphism(z4_r2.target(), 3);
  const FrameMorphism s3_blur = smearing_morphism(o.s3_ideal, 0.4);

  const std::vector<std::pair<std::string, std::vector<FunctorLink>>> chains = {
      {"Z2 identity", {{identity_frame_morphism(o.z2_ideal), identity_channel(o.qubit)}}},
      {"Z2 smear then flip",
       {{z2_smear, identity_channel(o.qubit)},
        {identity_frame_morphism(z2_smear.target()), conjugation_channel(o.qubit, o.qubit, kX)}}},
      {"Z2 reorient twice",
       {{z2_flip, conjugation_channel(o.qubit, o.qubit, kX)},
        {reorientation_morphism(z2_flip.target(), 1), depolarizing_channel(o.qubit, 0.3)}}},
      {"Z2 unlocalized with kernel",
       {{identity_frame_morphism(o.z2_flat), conjugation_channel(o.qubit, o.qubit, kX)},
        {identity_frame_morphism(o.z2_flat), identity_channel(o.qubit)}}},
      {"Z3 smearings",
       {{z3_a, depolarizing_channel(c3, 0.3)},
        {z3_b, conjugation_channel(c3, c3, shift3)},
        {identity_frame_morphism(z3_b.target()), identity_channel(c3)}}},
      {"Z4 reorientations",
       {{z4_r1, identity_channel(c4)},
        {z4_r2, depolarizing_channel(c4, 0.2)},
        {z4_r3, conjugation_channel(c4, c4, shift4)}}},
      {"S3 blur and reflect",
       {{s3_blur, conjugation_channel(o.p3, o.p3, reflect)},
        {identity_frame_morphism(s3_blur.target()), depolarizing_channel(o.p3, 0.5)}}},
  };
  Outcome out;
  double identity_dev = 0.0, composition_dev = 0.0;
  for (const auto& [name, chain] : chains) {
    const CheckReport r = check_functor_laws(chain);
    identity_dev = std::max(identity_dev, r.find("identity")->deviation);
    composition_dev = std::max(composition_dev, r.find("composition")->deviation);
    if (!r.passed()) {
      out.passed = false;
      out.detail += "[" + name + " failed] ";
    }
  }
  out.passed = out.passed && chains.size() >= 6 && identity_dev <= kTau && composition_dev <= kTau;
  out.detail += std::to_string(chains.size()) + " chains; identity " + sci(identity_dev) + ", composition " +
                sci(composition_dev);
  return out;
}

struct EquivariantCase {
  std::string name;
  ChannelMap phi;
  std::vector<FrameMorphism> psis;  // frame morphisms on the same group
};

std::vector<EquivariantCase> equivariant_cases(const Objects& o) {
  const SystemPtr c3 = o.c3_for(o.z3_ideal);
  const SystemPtr c4 = o.c4_for(o.z4_ideal);
  const UnitaryRep wide(o.flip.shared_group(), tensor_rep(o.flip, trivial_representation(o.flip.group(), 2)).matrices());
  const SystemPtr qubit_wide = full_system(wide);
  const ComplexMatrix reflect = identity(3) - ComplexMatrix::Constant(3, 3, 2.0 / 3.0);
  const auto inclusion = [](SystemPtr from, SystemPtr to) {
    return channel_from_function(std::move(from), std::move(to), [](const ComplexMatrix& a) { return a; });
  };

  const std::vector<FrameMorphism> z2 = {identity_frame_morphism(o.z2_ideal), smearing_morphism(o.z2_ideal, 0.5),
                                         reorientation_morphism(o.z2_ideal, 1)};
  const std::vector<FrameMorphism> z3 = {identity_frame_morphism(o.z3_ideal), smearing_morphism(o.z3_ideal, 0.3),
                                         reorientation_morphism(o.z3_ideal, 2)};
  const std::vector<FrameMorphism> z4 = {smearing_morphism(o.z4_ideal, 0.5), reorientation_morphism(o.z4_ideal, 3)};
  const std::vector<FrameMorphism> s3 = {identity_frame_morphism(o.s3_ideal), smearing_morphism(o.s3_ideal, 0.5)};
  return {
      {"Z2 conjugation by X", conjugation_channel(o.qubit, o.qubit, kX), z2},
      {"Z2 depolarizer", depolarizing_channel(o.qubit, 0.3), z2},
      {"Z2 ampliation", ampliation_channel(o.qubit, qubit_wide), z2},
      {"Z2 invariant inclusion", inclusion(o.qubit_invariant, o.qubit), z2},
      {"Z3 shift", conjugation_channel(c3, c3, o.shift3.matrix(1)), z3},
      {"Z3 shift squared", conjugation_channel(c3, c3, o.shift3.matrix(2)), z3},
      {"Z4 shift", conjugation_channel(c4, c4, o.shift4.matrix(1)), z4},
      {"Z4 depolarizer", depolarizing_channel(c4, 0.6), z4},
      {"S3 reflection", conjugation_channel(o.p3, o.p3, reflect), s3},
      {"S3 depolarizer", depolarizing_channel(o.p3, 0.5), s3},
      {"S3 invariant inclusion", inclusion(o.p3_invariant, o.p3), s3},
  };
}

Outcome naturality(const Objects& o) {
  Outcome out;
  double worst = 0.0;
  int channels = 0, squares = 0;
  for (const EquivariantCase& c : equivariant_cases(o)) {
    ++channels;
    for (const FrameMorphism& psi : c.psis) {
      for (const FramePtr& f : {psi.source(), psi.target()}) {
        const CheckReport r = check_naturality(f, c.phi);
        ++squares;
        worst = std::max(worst, r.max_deviation());
        if (!r.passed()) {
          out.passed = false;
          out.detail += "[" + c.name + " failed] ";
        }
      }
    }
  }
  out.passed = out.passed && channels >= 8 && worst <= kTau;
  out.detail += std::to_string(channels) + " equivariant channels, " + std::to_string(squares) +
                " squares; worst deviation " + sci(worst);
  return out;
}

Outcome tensor_form(const Objects& o) {
  Outcome out;
  double worst = 0.0;
  int pairs = 0;
  for (const EquivariantCase& c : equivariant_cases(o)) {
    for (const FrameMorphism& psi : c.psis) {
      const CheckReport r = check_equivariant_tensor_form(psi, c.phi);
      ++pairs;
      worst = std::max(worst, r.max_deviation());
      if (!r.passed()) {
        out.passed = false;
        out.detail += "[" + c.name + " failed] ";
      }
    }
  }
  out.passed = out.passed && worst <= kTau;
  out.detail += std::to_string(pairs) + " equivariant pairs; worst deviation " + sci(worst);
  return out;
}

ComplexMatrix random_in(const SemiQuantumSystem& system, RandomMatrices& rng) {
  ComplexVector c(system.dim());
  for (Index i = 0; i < c.size(); ++i) c(i) = rng.complex();
  return system.space().combine(c);
}

Outcome duality(const Objects& o) {
  Outcome out;
  RandomMatrices rng(2024);
  double worst = 0.0;
  int scenarios = 0, systems = 0;
  std::vector<SystemPtr> declared;
  for (const Scenario& s : frame_system_scenarios(o)) {
    const RelativizationMap map(s.frame, s.system);
    for (int k = 0; k < kDualityPairs; ++k) {
      const ComplexMatrix t = rng.density_matrix(map.joint_dim());
      const ComplexMatrix a = random_in(*s.system, rng);
      const Complex lhs = (map.predual(t) * a).trace();
      const Complex rhs = (t * map(a)).trace();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    ++scenarios;
    declared.push_back(s.system);
    declared.push_back(s.frame->value_system());
    declared.push_back(build_relative_subspace(s.frame, s.system)->relative_system());
  }
  for (const SystemPtr& sys : declared) {
    ++systems;
    if (quotient_dimension(*sys) != sys->dim()) {
      out.passed = false;
      out.detail += "[quotient dimension mismatch at dim " + std::to_string(sys->dim()) + "] ";
    }
  }
  out.passed = out.passed && worst <= kTau;
  out.detail += std::to_string(scenarios) + " scenarios x " + std::to_string(kDualityPairs) +
                " pairs, worst pairing gap " + sci(worst) + "; " + std::to_string(systems) +
                " systems with quotient dimension = span dimension";
  return out;
}

Outcome external_transforms(const Objects& o) {
  Outcome out;
  RandomMatrices rng(77);
  const SystemPtr c3 = o.c3_for(o.z3_ideal);
  const SystemPtr c4 = o.c4_for(o.z4_ideal);
  struct Case {
    FrameMorphism psi;
    SystemPtr system;
  };
  std::vector<Case> cases = {
      {identity_frame_morphism(o.z2_ideal), o.qubit},     {identity_frame_morphism(o.s3_ideal), o.p3},
      {reorientation_morphism(o.z2_ideal, 1), o.qubit},   {reorientation_morphism(o.z3_ideal, 1), c3},
      {reorientation_morphism(o.z3_ideal, 2), c3},        {reorientation_morphism(o.z4_ideal, 1), c4},
      {reorientation_morphism(o.z4_ideal, 2), c4},        {reorientation_morphism(o.z4_ideal, 3), c4},
      {smearing_morphism(o.z2_ideal, 0.5), o.qubit},      {smearing_morphism(o.z3_ideal, 0.25), c3},
      {smearing_morphism(o.s3_ideal, 0.5), o.p3},
  };
  double worst = 0.0;
  for (const Case& c : cases) {
    for (int k = 0; k < 10; ++k) {
      const ExternalTransform t = external_frame_transform(c.psi, c.system, rng.density_matrix(c.psi.target()->dim()),
                                                           rng.density_matrix(c.system->ambient_dim()));
      worst = std::max(worst, t.deviation);
    }
  }
  const ExternalTransform worked = external_frame_transform(smearing_morphism(o.z2_ideal, 0.5), o.qubit, kP0, kP0);
  const double mixture = max_abs_diff(worked.target_side.canonical, 0.75 * kP0 + 0.25 * kP1);
  worst = std::max(worst, worked.deviation);

  double witness = 0.0;
  bool ill_defined = false;
  try {
    build_yen_morphism(identity_frame_morphism(o.z2_flat), conjugation_channel(o.qubit, o.qubit, kHadamard));
  } catch (const Error& e) {
    ill_defined = e.kind() == ErrorKind::IllDefined;
    for (const auto& w : e.witnesses()) witness = std::max(witness, w.value);
  }
  out.passed = worst <= kTau && mixture <= kTau && ill_defined && witness >= kWitnessFloor;
  out.detail = std::to_string(cases.size()) + " morphisms x 10 states, worst gap " + sci(worst) +
               "; Z2 3/4-1/4 mixture deviation " + sci(mixture) + "; kernel violation " +
               (ill_defined ? "IllDefined" : "not raised") + " with witness norm " + std::to_string(witness);
  return out;
}

struct CliRun {
  int exit_code = -1;
  std::string output;
};

CliRun run_cli(const std::string& cli, const std::string& args) {
  CliRun r;
  const std::string command = "'" + cli + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome cli_determinism(const std::string& cli, const std::string& fixtures) {
  Outcome out;
  for (const char* name : {"z2_golden", "s3_golden"}) {
    const std::string args = "run '" + fixtures + "/" + name + ".json' --report machine";
    const CliRun first = run_cli(cli, args);
    const CliRun second = run_cli(cli, args);
    const bool same = !first.output.empty() && first.output == second.output;
    out.passed = out.passed && same && first.exit_code == 0;
    out.detail += std::string(name) + (same ? " identical" : " DIFFERS") + " (" +
                  std::to_string(first.output.size()) + " bytes); ";
  }
  const std::array<std::pair<const char*, int>, 3> trio = {{{"z2_golden", 0}, {"z2_fail", 1}, {"z2_error", 2}}};
  out.detail += "exit codes";
  for (const auto& [name, want] : trio) {
    const int got = run_cli(cli, "run '" + fixtures + "/" + name + ".json'").exit_code;
    out.passed = out.passed && got == want;
    out.detail += " " + std::string(name) + "=" + std::to_string(got);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: relframe_acceptance <relframe-cli> <fixture-dir>\n";
    return 2;
  }
  ToleranceScope scope(kTau);
  const Objects objects;
  const std::string cli = argv[1];
  const std::string fixtures = argv[2];

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"channel axioms", [&] { return channel_axioms(objects); }},
      {"ideal iff homomorphism", [&] { return ideal_iff(objects); }},
      {"closed forms", [&] { return closed_forms(objects); }},
      {"functor laws", [&] { return functor_laws(objects); }},
      {"naturality", [&] { return naturality(objects); }},
      {"tensor form", [&] { return tensor_form(objects); }},
      {"duality", [&] { return duality(objects); }},
      {"external transforms", [&] { return external_transforms(objects); }},
      {"CLI determinism", [&] { return cli_determinism(cli, fixtures); }},
  };
  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    if (!out.passed) ++failures;
    std::cout << (out.passed ? "PASS" : "FAIL") << "  criterion " << i + 1 << " " << criteria[i].first << ": "
              << out.detail << "\n";
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << criteria.size() - failures << "/" << criteria.size() << " criteria passed in " << seconds << " s\n";
  return failures == 0 ? 0 : 1;
}
