#include <cmath>
#include <numbers>

#include "cohfreeze/freeze.hpp"
#include "cohfreeze/sampling.hpp"
#include "helpers.hpp"

using namespace cohfreeze;

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix qubit_state(double theta) {
  const cplx off = std::polar(0.4, theta);
  return DensityMatrix::from_matrix({{0.7, off}, {std::conj(off), 0.3}});
}

const SioChannel& example_qubit_channel() {
  static const SioChannel phi = qubit_freeze_channel(0.3, kPi / 2, 5 * kPi / 6);
  return phi;
}

}  // namespace

TEST_SUITE("freeze") {
  TEST_CASE("identity freezes both measures") {
    const DensityMatrix r = random_in_omega(4, 1);
    const SioChannel id = validate_sio(std::vector<CMatrix>{CMatrix::identity(4)});
    for (Measure m : {Measure::L1, Measure::RelEnt}) {
      const FreezeReport rep = check_frozen(id, r, m);
      CHECK(rep.operational_frozen);
      CHECK(rep.hypothesis_ok);
      CHECK(rep.path == StructuralPath::Omega);
      CHECK(rep.structural_frozen == std::optional<bool>(true));
      CHECK(rep.agreement == std::optional<bool>(true));
      CHECK_FALSE(rep.violation);
    }
  }

  TEST_CASE("qubit example: aligned phases freeze C_l1, broken ones do not") {
    const FreezeReport aligned = check_frozen(example_qubit_channel(), qubit_state(kPi / 3), Measure::L1);
    CHECK(aligned.operational_frozen);
    CHECK(aligned.structural_frozen == std::optional<bool>(true));
    CHECK(std::abs(aligned.c_after.value - 0.8) < 1e-12);

    const FreezeReport broken = check_frozen(example_qubit_channel(), qubit_state(kPi / 4), Measure::L1);
    CHECK_FALSE(broken.operational_frozen);
    CHECK(broken.structural_frozen == std::optional<bool>(false));
    CHECK(std::abs(broken.c_after.value - 0.77716640981) < 1e-10);
  }

  TEST_CASE("qubit example under C_re: two permutations, so C_re drops") {
    const OmegaVerdict v = omega_structural_check(example_qubit_channel(), qubit_state(kPi / 3), Measure::RelEnt);
    CHECK_FALSE(v.frozen);
    CHECK_FALSE(v.operational_frozen);
    CHECK_FALSE(v.violation);
    const DensityMatrix out = apply(example_qubit_channel(), qubit_state(kPi / 3));
    CHECK(std::abs(c_re(qubit_state(kPi / 3)).value - 0.583173385836) < 1e-10);
    CHECK(std::abs(c_re(out).value - 0.538084307233) < 1e-10);
  }

  TEST_CASE("equal diagonals let the mixed qubit channel freeze C_re as well") {
    const cplx off = std::polar(0.4, kPi / 3);
    const DensityMatrix r = DensityMatrix::from_matrix({{0.5, off}, {std::conj(off), 0.5}});
    const OmegaVerdict v = omega_structural_check(example_qubit_channel(), r, Measure::RelEnt);
    CHECK(v.frozen);
    CHECK(v.operational_frozen);
    REQUIRE(v.unitary);
    check_matrix_close(conjugate(r.matrix(), v.unitary->unitary()),
                       apply(example_qubit_channel(), r).matrix(), 1e-9);
  }

  TEST_CASE("mixed-unitary decomposition") {
    const auto form = decompose_mixed_unitary(example_qubit_channel());
    REQUIRE(form);
    REQUIRE(form->terms.size() == 2);
    CHECK(std::abs(form->terms[0].weight - 0.3) < 1e-12);
    CHECK(form->terms[0].f.is_identity());
    CHECK(std::abs(form->terms[0].phases[0] - kPi / 2) < 1e-12);
    CHECK(std::abs(form->terms[0].phases[1]) < 1e-12);
    CHECK(std::abs(form->terms[1].weight - 0.7) < 1e-12);
    CHECK(form->terms[1].f == Permutation({1, 0}));
    // U₂ = [[0, 1], [e^{iθ₂}, 0]] carries e^{iθ₂} on column 1, so the phases are (θ₂, 0).
    CHECK(std::abs(form->terms[1].phases[0] - 5 * kPi / 6) < 1e-12);
    CHECK(std::abs(form->terms[1].phases[1]) < 1e-12);
    CHECK(std::abs(form->total_weight() - 1.0) < 1e-12);
    for (std::size_t a = 0; a < 2; ++a) {
      check_matrix_close(form->terms[a].unitary() * cplx{std::sqrt(form->terms[a].weight)},
                         example_qubit_channel().kraus()[a].dense());
    }

    const double c = std::sqrt(0.5);
    const CMatrix k1{{0.9 * c, 0}, {0, std::polar(0.1 * c, 0.4)}};
    const CMatrix k2{{std::sqrt(1 - 0.81 * 0.5), 0}, {0, std::sqrt(1 - 0.01 * 0.5)}};
    CHECK_FALSE(decompose_mixed_unitary(validate_sio(std::vector<CMatrix>{k1, k2})));

    for (double q = 0.0; q <= 1.0; q += 0.125) CHECK(decompose_mixed_unitary(local_bit_flip(q)));
  }

  TEST_CASE("phase alignment") {
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t d = 2 + trial % 4;
      const UnitaryWitness u = random_si_unitary(d, rng);
      const auto form = decompose_mixed_unitary(channel_of(u));
      REQUIRE(form);
      CHECK(phase_alignment_l1(*form, random_state(d, rng)));
    }
    const auto form = decompose_mixed_unitary(example_qubit_channel());
    CHECK(phase_alignment_l1(*form, qubit_state(kPi / 3)));
    CHECK_FALSE(phase_alignment_l1(*form, qubit_state(kPi / 4)));
  }

  TEST_CASE("bistochastic matrix and majorization of diagonals") {
    const Bistochastic one = bistochastic_of(*decompose_mixed_unitary(channel_of({Permutation({2, 0, 1}), {0, 0, 0}})));
    check_matrix_close(CMatrix(3, {one.entries.begin(), one.entries.end()}),
                       perm_matrix(Permutation({2, 0, 1})), 0.0);

    const Bistochastic q = bistochastic_of(*decompose_mixed_unitary(example_qubit_channel()));
    CHECK(std::abs(q(0, 0) - 0.3) < 1e-12);
    CHECK(std::abs(q(0, 1) - 0.7) < 1e-12);
    CHECK(std::abs(q(1, 0) - 0.7) < 1e-12);
    CHECK(std::abs(q(1, 1) - 0.3) < 1e-12);

    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t d = 2 + trial % 5;
      const AlignedInstance inst = aligned_mixed_unitary_instance(d, 3, rng);
      const Bistochastic dmat = bistochastic_of(inst.form);
      CHECK(dmat.stochastic_defect() <= 1e-9);
      std::vector<double> before, after;
      const DensityMatrix out = apply(inst.phi, inst.rho);
      for (std::size_t i = 0; i < d; ++i) {
        before.push_back(inst.rho(i, i).real());
        after.push_back(out(i, i).real());
      }
      const auto mapped = dmat.apply(before);
      for (std::size_t i = 0; i < d; ++i) CHECK(std::abs(mapped[i] - after[i]) <= 1e-10);
      CHECK(majorizes(before, after));
    }
  }

  TEST_CASE("majorization") {
    const double x[] = {0.5, 0.5}, y[] = {1.0, 0.0};
    CHECK(majorizes(x, x));
    CHECK(majorizes(y, x));
    CHECK_FALSE(majorizes(x, y));
    const double bad[] = {0.5, 0.6};
    CHECK_ERROR_KIND(majorizes(bad, x), ErrorKind::NotProbabilityVector);
    const double neg[] = {1.5, -0.5};
    CHECK_ERROR_KIND(majorizes(x, neg), ErrorKind::NotProbabilityVector);

    // x = D y for random bistochastic D (convex mixtures of permutation matrices).
    Rng rng(10);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t d = 2 + trial % 5;
      MixedUnitaryForm form;
      double total = 0.0;
      for (int t = 0; t < 4; ++t) {
        form.terms.push_back({u(rng), random_si_unitary(d, rng).perm, std::vector<double>(d)});
        total += form.terms.back().weight;
      }
      for (auto& t : form.terms) t.weight /= total;
      std::vector<double> yv(d);
      double s = 0.0;
      for (double& v : yv) s += (v = u(rng));
      for (double& v : yv) v /= s;
      CHECK(majorizes(yv, bistochastic_of(form).apply(yv)));
    }
  }

  TEST_CASE("freezing unitary recovery") {
    const DensityMatrix r = random_in_omega(4, 12);
    const auto same = find_freezing_unitary(r, r);
    REQUIRE(same);
    CHECK(same->perm.is_identity());
    for (double t : same->phases) CHECK(std::abs(t) < 1e-12);

    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
      const DensityMatrix rho = random_in_omega(4, rng);
      const DensityMatrix sigma = apply(channel_of(random_si_unitary(4, rng)), rho);
      const auto w = find_freezing_unitary(rho, sigma);
      REQUIRE(w);
      CHECK(max_abs_diff(conjugate(rho.matrix(), w->unitary()), sigma.matrix()) <= 1e-9);
    }
    CHECK_FALSE(find_freezing_unitary(r, dephase(r)));
    CHECK_ERROR_KIND(find_freezing_unitary(random_state(9, 1), random_state(9, 2)), ErrorKind::DimTooLarge);
  }

  TEST_CASE("structural check on the Omega path") {
    CHECK_ERROR_KIND(omega_structural_check(local_bit_flip(0.5), bell_diagonal(0.6, -0.3, 0.5), Measure::L1),
                     ErrorKind::HypothesisNotMet);

    Rng rng(14);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t d = 2 + trial % 5;
      const DensityMatrix r = random_in_omega(d, rng);
      const SioChannel u = channel_of(random_si_unitary(d, rng));
      for (Measure m : {Measure::L1, Measure::RelEnt}) {
        const OmegaVerdict v = omega_structural_check(u, r, m);
        CHECK(v.frozen);
        CHECK(v.operational_frozen);
      }
      const DensityMatrix bounded = random_in_omega_bounded(d, 0.01, rng);
      const SioChannel nonuniform = random_nonuniform_sio(d, 2, 0.05, rng);
      const OmegaVerdict v = omega_structural_check(nonuniform, bounded, Measure::L1);
      CHECK_FALSE(v.frozen);
      CHECK_FALSE(v.form);
      CHECK(c_l1(apply(nonuniform, bounded)).value < c_l1(bounded).value - 1e-12);
      CHECK_FALSE(v.violation);
    }
  }

  TEST_CASE("a disconnected Omega state at d = 6 breaks the uniform-modulus claim") {
    CMatrix m(6);
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(3 * b + i, 3 * b + j) = i == j ? 1.0 / 6 : 0.05;
    const DensityMatrix rho = DensityMatrix::from_matrix(m);
    REQUIRE(classify(rho).in_omega);

    // K₁ = diag(a, a, a, b, b, b), K₂ = diag(a', a', a', b', b', b') with a ≠ b.
    const double a = 0.6, b = 0.8;
    std::vector<double> d1{a, a, a, b, b, b}, d2;
    for (double x : d1) d2.push_back(std::sqrt(1 - x * x));
    const SioChannel phi = validate_sio(std::vector<CMatrix>{CMatrix::diagonal(std::span<const double>(d1)),
                                                             CMatrix::diagonal(std::span<const double>(d2))});
    const OmegaVerdict v = omega_structural_check(phi, rho, Measure::L1);
    CHECK(v.operational_frozen);
    CHECK_FALSE(v.frozen);
    REQUIRE(v.violation);
    CHECK(v.violation->find("K2") != std::string::npos);

    const OmegaVerdict re = omega_structural_check(phi, rho, Measure::RelEnt);
    CHECK(re.frozen);
    CHECK_FALSE(re.violation);
  }

  TEST_CASE("report invariants") {
    Rng rng(15);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t d = 2 + trial % 4;
      const DensityMatrix r = trial % 2 ? random_x_state(d, rng) : random_state(d, rng);
      const SioChannel phi = random_sio(d, 2, rng);
      for (Measure m : {Measure::L1, Measure::RelEnt}) {
        const FreezeReport rep = check_frozen(phi, r, m);
        CHECK(rep.operational_frozen ==
              (std::abs(rep.c_before.value - rep.c_after.value) <= default_tolerance(m)));
        CHECK(rep.agreement.has_value() == (rep.hypothesis_ok && rep.structural_frozen.has_value()));
      }
    }
    CHECK_ERROR_KIND(check_frozen(local_bit_flip(0.2), random_state(3, 1), Measure::L1), ErrorKind::DimMismatch);
  }
}
