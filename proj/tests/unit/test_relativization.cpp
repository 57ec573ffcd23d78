#include <doctest.h>

#include "fixtures.hpp"
#include "relframe/errors.hpp"
#include "relframe/random.hpp"

using namespace relframe;
using namespace fixtures;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ValidationError;
}

}  // namespace

TEST_SUITE("relativization") {

TEST_CASE("relativize worked examples") {
  const UnitaryRep triv_rep = trivial_representation(*z(1), 2);
  const FramePtr triv = principal_frame_from_seed(trivial_representation(*z(1), 1), identity(1));
  RandomMatrices rng(11);
  const ComplexMatrix a = rng.ginibre(2);
  CHECK(max_abs_diff(relativize(triv, full_system(triv_rep), a), kron(identity(1), a)) < 1e-15);

  // |0><0| ⊗ Z + |1><1| ⊗ (-Z)
  const ComplexMatrix two_term = kron(P0(), Z()) + kron(P1(), -Z());
  const ComplexMatrix zz = relativize(z2_ideal(), qubit(), Z());
  CHECK(max_abs_diff(zz, two_term) <= 1e-12);
  CHECK(max_abs_diff(zz, kron(Z(), Z())) <= 1e-12);

  const ComplexMatrix half = relativize(z2_smeared(), qubit(), Z());
  CHECK(max_abs_diff(half, 0.5 * kron(Z(), Z())) <= 1e-12);
  CHECK(operator_norm(half) == doctest::Approx(0.5).epsilon(1e-12));

  const std::vector<ComplexMatrix> zs = {Z()};
  CHECK(kind_of([&] { relativize(z2_ideal(), subspace_system(z2_flip(), zs), X()); }) ==
        ErrorKind::OperatorOutsideSystem);
  CHECK(kind_of([&] { relativize(z2_ideal(), full_system(shift_rep(3)), identity(3)); }) ==
        ErrorKind::GroupMismatch);
}

TEST_CASE("relativize agrees with the Kronecker oracle on random inputs") {
  RandomMatrices rng(12);
  for (const FramePtr& f : {z2_ideal(), z2_smeared(), z2_unlocalized()}) {
    const RelativizationMap map(f, qubit());
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix a = rng.ginibre(2);
      CHECK(max_abs_diff(map(a), relativize_oracle(*f, z2_flip(), a)) < 1e-13);
    }
  }
}

TEST_CASE("relative subspaces and kernels") {
  const UnitaryRep triv_rep = trivial_representation(*z(1), 2);
  const FramePtr triv = principal_frame_from_seed(trivial_representation(*z(1), 1), identity(1));
  const auto t = build_relative_subspace(triv, full_system(triv_rep));
  CHECK(t->space().size() == 4);
  CHECK(t->kernel().size() == 0);

  const auto ideal = build_relative_subspace(z2_ideal(), qubit());
  CHECK(ideal->space().size() == 4);
  CHECK(ideal->kernel().size() == 0);
  CHECK(numerical_rank(RelativizationMap(z2_ideal(), qubit()).superoperator()) == 4);

  const auto flat = build_relative_subspace(z2_unlocalized(), qubit());
  CHECK(flat->space().size() == 2);
  CHECK(flat->kernel().size() == 2);
  CHECK(flat->kernel().contains(Z()));
  CHECK(flat->kernel().contains(Y()));
  CHECK(flat->relative_system()->contains(kron(I2(), X())));
  CHECK(max_abs(relativize(z2_unlocalized(), qubit(), Z())) < 1e-15);

  const SystemPtr commutant = invariant_subalgebra(tensor_rep(z2_flip(), z2_flip()));
  for (const auto& sub : {ideal, flat}) {
    for (const auto& b : sub->space().elements()) CHECK(commutant->contains(b));
  }
}

TEST_CASE("channel axioms") {
  const UnitaryRep triv_rep = trivial_representation(*z(1), 2);
  const FramePtr triv = principal_frame_from_seed(trivial_representation(*z(1), 1), identity(1));
  const RelativizationMap tm(triv, full_system(triv_rep));
  const CheckReport tr = check_channel_axioms(tm);
  CHECK(tr.passed());
  CHECK(tr.find("contraction")->value == doctest::Approx(1.0));
  CHECK(tr.find("contraction_strictness")->value == doctest::Approx(1.0));

  const RelativizationMap im(z2_ideal(), qubit());
  const CheckReport ir = check_channel_axioms(im);
  CHECK(ir.passed());
  CHECK(ir.find("positivity")->evidence == Evidence::Exact);
  CHECK(contraction_ratio(im, Z()) == doctest::Approx(1.0));

  const RelativizationMap sm(z2_smeared(), qubit());
  const CheckReport sr = check_channel_axioms(sm);
  CHECK(sr.passed());
  CHECK(contraction_ratio(sm, Z()) == doctest::Approx(0.5));
  CHECK(sr.find("contraction_strictness")->note == "strict contraction observed");
}

TEST_CASE("ideal frames give homomorphisms and only they do") {
  const RelativizationMap im(z2_ideal(), qubit());
  CHECK(max_abs_diff(im(Z() * X()), im(Z()) * im(X())) < 1e-12);
  CHECK(max_abs_diff(im(Z() * X()), kron(Z(), Z() * X())) < 1e-12);
  const CheckReport ir = check_ideal_isomorphism(im);
  CHECK(ir.passed());

  const RelativizationMap sm(z2_smeared(), qubit());
  CHECK(max_abs_diff(sm(Z() * Z()), kron(I2(), I2())) < 1e-12);
  CHECK(max_abs_diff(sm(Z()) * sm(Z()), 0.25 * kron(I2(), I2())) < 1e-12);
  CHECK(operator_norm(sm(Z() * Z()) - sm(Z()) * sm(Z())) == doctest::Approx(0.75));
  const CheckReport sr = check_ideal_isomorphism(sm);
  CHECK_FALSE(sr.find("multiplicativity")->passed);
  CHECK(sr.find("multiplicativity")->deviation > 1e-3);
  CHECK_FALSE(sr.find("multiplicativity")->witnesses.empty());
  CHECK(sr.find("ideal_iff")->passed);

  const UnitaryRep triv_rep = trivial_representation(*z(1), 2);
  const FramePtr triv = principal_frame_from_seed(trivial_representation(*z(1), 1), identity(1));
  CHECK(check_ideal_isomorphism(RelativizationMap(triv, full_system(triv_rep))).passed());

  const std::vector<ComplexMatrix> zs = {Z()};
  CHECK(kind_of([&] { check_ideal_isomorphism(RelativizationMap(z2_ideal(), subspace_system(z2_flip(), zs))); }) ==
        ErrorKind::RequiresFullAlgebra);
}

TEST_CASE("predual relativization") {
  RandomMatrices rng(13);
  const UnitaryRep triv_rep = trivial_representation(*z(1), 2);
  const FramePtr triv = principal_frame_from_seed(trivial_representation(*z(1), 1), identity(1));
  const ComplexMatrix rho = rng.density_matrix(2);
  CHECK(max_abs_diff(predual_relativize(triv, full_system(triv_rep), kron(identity(1), rho)).canonical, rho) < 1e-14);

  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix r = rng.density_matrix(2);
    CHECK(max_abs_diff(predual_relativize(z2_ideal(), qubit(), kron(P0(), r)).canonical, r) < 1e-14);
  }
  const ComplexMatrix averaged = predual_relativize(z2_ideal(), qubit(), kron(I2() / 2.0, P0())).canonical;
  CHECK(max_abs_diff(averaged, (P0() + X() * P0() * X()) / 2.0) < 1e-14);
  CHECK(max_abs_diff(averaged, I2() / 2.0) < 1e-14);

  const RelativizationMap sm(z2_smeared(), qubit());
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix t = rng.density_matrix(4);
    const ComplexMatrix a = rng.ginibre(2);
    CHECK(std::abs((sm.predual(t) * a).trace() - (t * sm(a)).trace()) < 1e-12);
  }
  CHECK(kind_of([] { predual_relativize(z2_ideal(), qubit(), identity(4)); }) == ErrorKind::NotAState);
}

TEST_CASE("product relative states") {
  RandomMatrices rng(14);
  const UnitaryRep triv_rep = trivial_representation(*z(1), 2);
  const FramePtr triv = principal_frame_from_seed(trivial_representation(*z(1), 1), identity(1));
  const ComplexMatrix rho = rng.density_matrix(2);
  CHECK(max_abs_diff(product_relative_state(triv, full_system(triv_rep), identity(1), rho).canonical, rho) < 1e-14);

  const ComplexMatrix plus = (I2() + X()) / 2.0;
  CHECK(max_abs_diff(product_relative_state(z2_ideal(), qubit(), plus, P0()).canonical, I2() / 2.0) < 1e-14);
  const ComplexMatrix mix = product_relative_state(z2_smeared(), qubit(), P0(), P0()).canonical;
  CHECK(max_abs_diff(mix, 0.75 * P0() + 0.25 * P1()) < 1e-14);

  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix omega = rng.density_matrix(2);
    const ComplexMatrix r = rng.density_matrix(2);
    CHECK(max_abs_diff(product_relative_state(z2_smeared(), qubit(), omega, r).canonical,
                       predual_relativize(z2_smeared(), qubit(), kron(omega, r)).canonical) < 1e-13);
  }
  CHECK(kind_of([] { product_relative_state(z2_ideal(), qubit(), P0(), Z()); }) == ErrorKind::NotAState);
}

TEST_CASE("induced morphisms between relative spaces") {
  const SystemPtr q = qubit();
  const FrameMorphism id = identity_frame_morphism(z2_ideal());
  const YenMorphism trivial = build_yen_morphism(id, identity_channel(q));
  for (const auto& b : trivial.source()->space().elements()) CHECK(max_abs_diff(trivial.apply(b), b) < 1e-13);

  const YenMorphism flip = build_yen_morphism(id, conjugation_channel(q, q, X()));
  CHECK(max_abs_diff(flip.apply(kron(Z(), Z())), -kron(Z(), Z())) < 1e-13);

  const YenMorphism smear = build_yen_morphism(smearing_morphism(z2_ideal(), 0.5), identity_channel(q));
  CHECK(max_abs_diff(smear.apply(kron(Z(), Z())), 0.5 * kron(Z(), Z())) < 1e-13);

  try {
    build_yen_morphism(identity_frame_morphism(z2_unlocalized()), conjugation_channel(q, q, Had()));
    FAIL("expected IllDefined");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IllDefined);
    REQUIRE_FALSE(e.witnesses().empty());
    CHECK(e.witnesses()[0].value >= 1e-3);
  }
  // equivariant channels always respect the kernel
  CHECK_NOTHROW(build_yen_morphism(identity_frame_morphism(z2_unlocalized()), conjugation_channel(q, q, X())));

  const FramePtr z3 = canonical_ideal_frame(FiniteGroup::cyclic(3));
  CHECK(kind_of([&] { build_yen_morphism(identity_frame_morphism(z3), identity_channel(q)); }) ==
        ErrorKind::ObjectMismatch);
}

TEST_CASE("functor laws") {
  const SystemPtr q = qubit();
  const FrameMorphism id = identity_frame_morphism(z2_ideal());
  const CheckReport ident = check_functor_laws({{id, identity_channel(q)}});
  CHECK(ident.passed());
  CHECK(ident.max_deviation() < 1e-12);

  const FrameMorphism smear = smearing_morphism(z2_ideal(), 0.5);
  const CheckReport mixed = check_functor_laws(
      {{smear, identity_channel(q)}, {identity_frame_morphism(smear.target()), conjugation_channel(q, q, X())}});
  CHECK(mixed.passed());

  const FramePtr z4 = canonical_ideal_frame(FiniteGroup::cyclic(4));
  const SystemPtr s4 = full_system(shift_rep(4));
  const FrameMorphism r1 = reorientation_morphism(z4, 1);
  const FrameMorphism r2 = reorientation_morphism(r1.target(), 2);
  const FrameMorphism r3 = reorientation_morphism(r2.target(), 3);
  const CheckReport chain = check_functor_laws({{r1, identity_channel(s4)},
                                                {r2, depolarizing_channel(s4, 0.2)},
                                                {r3, conjugation_channel(s4, s4, shift_rep(4).matrix(1))}});
  CHECK(chain.passed());

  CHECK(kind_of([&] { check_functor_laws({{r2, identity_channel(s4)}, {r2, identity_channel(s4)}}); }) ==
        ErrorKind::ObjectMismatch);
}

TEST_CASE("tensor form for equivariant pairs") {
  const SystemPtr q = qubit();
  CHECK(check_equivariant_tensor_form(identity_frame_morphism(z2_ideal()), identity_channel(q)).passed());
  CHECK(check_equivariant_tensor_form(smearing_morphism(z2_ideal(), 0.5), conjugation_channel(q, q, X())).passed());
  try {
    check_equivariant_tensor_form(smearing_morphism(z2_ideal(), 0.5), conjugation_channel(q, q, S()));
    FAIL("expected PhiNotEquivariant");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PhiNotEquivariant);
    CHECK_FALSE(e.witnesses().empty());
  }
}

TEST_CASE("naturality") {
  const SystemPtr q = qubit();
  const CheckReport id = check_naturality(z2_ideal(), identity_channel(q));
  CHECK(id.passed());
  CHECK(id.max_deviation() == 0.0);
  CHECK(check_naturality(z2_ideal(), conjugation_channel(q, q, X())).passed());

  const double lambda = 0.3;
  const ChannelMap dep = depolarizing_channel(q, 1.0 - lambda);
  CHECK(check_naturality(z2_smeared(), dep).passed());
  // closed form: sum_g E(g) ⊗ (λ g.b + (1 - λ) tr(b) I/2)
  RandomMatrices rng(15);
  const ComplexMatrix b = rng.ginibre(2);
  ComplexMatrix closed = ComplexMatrix::Zero(4, 4);
  for (Element g = 0; g < 2; ++g) {
    closed += kron(z2_smeared()->effect(g),
                   lambda * act(z2_flip(), g, b) + (1.0 - lambda) * b.trace() * I2() / 2.0);
  }
  CHECK(max_abs_diff(relativize(z2_smeared(), q, dep.apply(b)), closed) < 1e-13);

  CHECK(kind_of([&] { check_naturality(z2_ideal(), conjugation_channel(q, q, S())); }) ==
        ErrorKind::PhiNotEquivariant);
}

TEST_CASE("external frame transformations") {
  const SystemPtr q = qubit();
  RandomMatrices rng(16);
  const ComplexMatrix omega = rng.density_matrix(2);
  const ComplexMatrix rho = rng.density_matrix(2);

  const ExternalTransform same = external_frame_transform(identity_frame_morphism(z2_ideal()), q, omega, rho);
  CHECK(same.deviation < 1e-14);
  CHECK(max_abs_diff(same.pulled_back, omega) < 1e-14);

  // reorientation by h: the reoriented frame with ω matches the original with h^-1.ω
  const FrameMorphism flip = reorientation_morphism(z2_ideal(), 1);
  const ExternalTransform reo = external_frame_transform(flip, q, omega, rho);
  CHECK(reo.deviation < 1e-13);
  CHECK(max_abs_diff(reo.pulled_back, act(z2_flip(), 1, omega)) < 1e-14);
  const auto mu = born_measure(*z2_ideal(), act(z2_flip(), 1, omega));
  const ComplexMatrix oracle = mu[0] * rho + mu[1] * act(z2_flip(), 1, rho);
  CHECK(max_abs_diff(reo.source_side.canonical, oracle) < 1e-13);

  // on Z4 the inverse is visible
  const FramePtr z4 = canonical_ideal_frame(FiniteGroup::cyclic(4));
  const SystemPtr c4 = full_system(UnitaryRep(z4->rep().shared_group(), shift_rep(4).matrices()));
  const ComplexMatrix omega4 = rng.density_matrix(4);
  const ExternalTransform quarter = external_frame_transform(reorientation_morphism(z4, 1), c4, omega4,
                                                             rng.density_matrix(4));
  CHECK(quarter.deviation < 1e-13);
  CHECK(max_abs_diff(quarter.pulled_back, act(z4->rep(), 3, omega4)) < 1e-14);
  CHECK(max_abs_diff(quarter.pulled_back, act(z4->rep(), 1, omega4)) > 1e-3);

  const FrameMorphism smear = smearing_morphism(z2_ideal(), 0.5);
  const ExternalTransform s = external_frame_transform(smear, q, P0(), P0());
  CHECK(max_abs_diff(s.target_side.canonical, 0.75 * P0() + 0.25 * P1()) < 1e-14);
  CHECK(s.deviation < 1e-14);
  // pairing identity tr[ψ_*(ω') E(g)] = tr[ω' ψ(E(g))]
  for (Element g = 0; g < 2; ++g) {
    CHECK(std::abs((s.pulled_back * z2_ideal()->effect(g)).trace() -
                   (P0() * smear.channel().apply(z2_ideal()->effect(g))).trace()) < 1e-14);
  }

  CHECK(kind_of([&] { external_frame_transform(smear, q, I2(), P0()); }) == ErrorKind::NotAState);
}

TEST_CASE("external transforms on a proper frame value system need an extension") {
  const std::vector<ComplexMatrix> zs = {Z()};
  const SystemPtr diag = subspace_system(z2_flip(), zs);
  const FramePtr ideal = FrameObservable::create(z2_flip(), {P0(), P1()}, diag);
  const FrameMorphism smear = smearing_morphism(ideal, 0.5);
  const SystemPtr q = qubit();
  CHECK(kind_of([&] { external_frame_transform(smear, q, P0(), P0()); }) == ErrorKind::RequiresFullAlgebra);
  const ChannelMap extension = depolarizing_channel(full_system(z2_flip()), 0.5);
  const ExternalTransform t = external_frame_transform(smear, q, P0(), P0(), &extension);
  CHECK(t.deviation < 1e-14);
  const ChannelMap wrong = conjugation_channel(full_system(z2_flip()), full_system(z2_flip()), X());
  CHECK(kind_of([&] { external_frame_transform(smear, q, P0(), P0(), &wrong); }) == ErrorKind::ValidationError);
}

}  // TEST_SUITE
