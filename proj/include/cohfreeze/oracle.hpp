#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cohfreeze/states.hpp"

namespace cohfreeze {

/// Brute force over every permutation and every phase tuple on the grid
/// 2πk/n (first phase pinned to 0, the global phase). True when some
/// U ρ U† lies within 10/n of σ entrywise. d ≤ 4, n ≥ 8.
bool exhaustive_unitary_oracle(const DensityMatrix& rho, const DensityMatrix& sigma,
                               std::size_t phase_grid_n);

struct SweepPoint {
  double delta, theta1, theta2, theta;
  double c_before, c_after;
  bool frozen;     // |ΔC_l1| ≤ 1e-9
  bool predicted;  // θ₁ + θ₂ + 2θ ≡ 0 (mod 2π)
  double manifold_distance;  // |wrap(θ₁ + θ₂ + 2θ)|
  std::optional<bool> structural;
};

struct SweepResult {
  std::size_t grid_n = 0;
  std::vector<double> deltas;
  double rho12_modulus = 0.0;
  std::vector<SweepPoint> points;
  std::size_t agreements = 0;
  std::vector<std::string> disagreements;  // each with a reproduction witness
  std::size_t structural_agreements = 0;
  std::vector<std::string> structural_disagreements;

  bool clean() const { return disagreements.empty() && structural_disagreements.empty(); }
};

/// The qubit channel δ U₁·U₁† + (1 − δ) U₂·U₂† on ρ = [[0.7, 0.4e^{iθ}], [0.4e^{−iθ}, 0.3]],
/// with θ₁, θ₂, θ on the grid 2πk/n and δ ∈ {0.25, 0.5, 0.75}. Each point is
/// also handed to the Ω structural checker and the two verdicts compared.
/// grid_n ≥ 16.
SweepResult qubit_condition_sweep(std::size_t grid_n);

std::string sweep_csv(const SweepResult& r);

}  // namespace cohfreeze
