#include <cmath>
#include <numbers>

#include "cohfreeze/io.hpp"
#include "cohfreeze/oracle.hpp"
#include "cohfreeze/sampling.hpp"
#include "helpers.hpp"

using namespace cohfreeze;

TEST_SUITE("oracle") {
  TEST_CASE("exhaustive unitary oracle") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t d = 2 + trial % 2;
      const DensityMatrix rho = random_in_omega_bounded(d, 0.05, rng);
      const DensityMatrix sigma = apply(channel_of(random_si_unitary(d, rng)), rho);
      CHECK(exhaustive_unitary_oracle(rho, sigma, 256));
      CHECK_FALSE(exhaustive_unitary_oracle(rho, dephase(rho), 256));
    }
    const DensityMatrix r4 = random_in_omega(4, 2);
    CHECK(exhaustive_unitary_oracle(r4, r4, 8));
    CHECK_ERROR_KIND(exhaustive_unitary_oracle(random_state(5, 1), random_state(5, 2), 16),
                     ErrorKind::DimTooLarge);
    CHECK_ERROR_KIND(exhaustive_unitary_oracle(r4, r4, 4), ErrorKind::OutOfRange);
    CHECK_ERROR_KIND(exhaustive_unitary_oracle(r4, random_state(3, 1), 16), ErrorKind::DimMismatch);
  }

  TEST_CASE("oracle agrees with the unitary search at d = 3") {
    Rng rng(32);
    for (int trial = 0; trial < 20; ++trial) {
      const DensityMatrix rho = random_in_omega_bounded(3, 0.05, rng);
      const SioChannel phi = trial % 2 ? channel_of(random_si_unitary(3, rng))
                                       : random_two_permutation_mixture(3, rng);
      const DensityMatrix sigma = apply(phi, rho);
      const bool found = find_freezing_unitary(rho, sigma).has_value();
      CHECK(found == (trial % 2 == 1));
      CHECK(exhaustive_unitary_oracle(rho, sigma, 512) == found);
    }
  }

  TEST_CASE("qubit condition sweep") {
    const SweepResult r = qubit_condition_sweep(16);
    CHECK(r.points.size() == 3 * 16 * 16 * 16);
    CHECK(r.agreements == r.points.size());
    CHECK(r.clean());
    std::size_t frozen = 0;
    for (const auto& p : r.points) {
      frozen += p.frozen;
      if (p.theta1 == 0.0 && p.theta2 == 0.0 && std::abs(p.theta - std::numbers::pi / 2) < 1e-12) {
        const double drop = p.c_before - p.c_after;
        CHECK(std::abs(drop - 0.8 * (1 - std::abs(1 - 2 * p.delta))) < 1e-12);
      }
      if (p.predicted) CHECK(p.frozen);
    }
    // Two solutions in θ when the grid indices of θ₁ and θ₂ have even sum, none otherwise.
    CHECK(frozen == 3 * 16 * 16);
    CHECK_ERROR_KIND(qubit_condition_sweep(8), ErrorKind::OutOfRange);
  }

  TEST_CASE("sweep serialization") {
    const SweepResult r = qubit_condition_sweep(16);
    const std::string csv = sweep_csv(r);
    CHECK(csv.rfind("delta,theta1,theta2,theta,c_l1_before,c_l1_after,frozen,predicted,"
                    "manifold_distance,structural_verdict\n",
                    0) == 0);
    const json j = to_json(r);
    CHECK(j.at("grid_n") == 16);
    CHECK(j.at("points").size() == r.points.size());
    CHECK(j.at("disagreements").empty());
  }
}
