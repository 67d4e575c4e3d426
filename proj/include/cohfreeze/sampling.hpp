#pragma once

#include <cstddef>

#include "cohfreeze/channel.hpp"
#include "cohfreeze/freeze.hpp"
#include "cohfreeze/xfreeze.hpp"

namespace cohfreeze {

/// Uniform random permutation and i.i.d. uniform phases.
UnitaryWitness random_si_unitary(std::size_t d, Rng& rng);

SioChannel channel_of(const UnitaryWitness& u);

/// Generic SIO: random permutations, complex Gaussian coefficients, each
/// column normalized across the Kraus family.
SioChannel random_sio(std::size_t d, std::size_t n_kraus, Rng& rng);

/// A state and a mixed strictly incoherent unitary channel whose phases are
/// aligned on it. ρ = D P D† with P entrywise positive and D a random
/// diagonal phase; term α uses θ_i = ψ_{f_α(i)} − χ_i, so every
/// contribution to Φ(ρ)_mn carries the phase ψ_m − ψ_n.
struct AlignedInstance {
  DensityMatrix rho;
  MixedUnitaryForm form;
  SioChannel phi;
};

AlignedInstance aligned_mixed_unitary_instance(std::size_t d, std::size_t terms, Rng& rng);

/// Random Ω state whose off-diagonal entries all have modulus ≥ min_modulus.
DensityMatrix random_in_omega_bounded(std::size_t d, double min_modulus, Rng& rng);

/// max over Kraus operators of (max_i |d_{α,i}| − min_i |d_{α,i}|).
double modulus_spread(const SioChannel& phi);

/// random_sio resampled until modulus_spread ≥ min_spread.
SioChannel random_nonuniform_sio(std::size_t d, std::size_t n_kraus, double min_spread, Rng& rng);

/// δ U + (1 − δ) V with two distinct random permutations, δ ∈ [0.2, 0.8].
SioChannel random_two_permutation_mixture(std::size_t d, Rng& rng);

enum class BlockScenario {
  SingleUnitary,   // one Kraus, every block at full weight
  AlignedMixture,  // independent routings, phases aligned per target
  RandomPhases,    // independent routings and phases
  SharedRouting,   // one routing and phase difference, varying δ
  RankOne,         // aligned mixture plus rank-one odd terms (odd d only)
};

std::string_view scenario_name(BlockScenario s);

/// Channel in block form for the X state described by `x`, built in the
/// pairing basis and pulled back. Block weights are drawn from [0.3, 1]
/// before normalization so no contribution is negligible.
SioChannel random_block_channel(const XDecomposition& x, BlockScenario scenario, Rng& rng);

}  // namespace cohfreeze
