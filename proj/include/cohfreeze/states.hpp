#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <span>
#include <utility>
#include <vector>

#include "cohfreeze/linalg.hpp"

namespace cohfreeze {

/// Cutoff below which an entry counts as zero in support and class checks.
inline constexpr double kZeroTol = 1e-12;

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-10), trace (1e-10) and smallest eigenvalue
  /// (≥ −1e-9). Throws NotHermitian, NotDensityMatrix or NotPSD.
  static DensityMatrix from_matrix(CMatrix m);

  /// Wraps a matrix the caller has already established to be a state, such
  /// as the output of a validated channel. Only Hermiticity is enforced.
  static DensityMatrix unchecked(CMatrix m);

  std::size_t dim() const noexcept { return mat_.dim(); }
  const CMatrix& matrix() const noexcept { return mat_; }
  cplx operator()(std::size_t row, std::size_t col) const { return mat_(row, col); }

 private:
  explicit DensityMatrix(CMatrix m) : mat_(std::move(m)) {}
  CMatrix mat_;
};

/// Off-diagonal support {(i, j) : i ≠ j, |ρ_ij| > zero_tol}, 0-based pairs.
struct SupportSet {
  std::set<std::pair<std::size_t, std::size_t>> pairs;

  bool contains(std::size_t i, std::size_t j) const { return pairs.count({i, j}) != 0; }
  bool empty() const { return pairs.empty(); }
};

SupportSet support_set(const DensityMatrix& rho, double zero_tol = kZeroTol);

enum class StateTag { InOmega, InOmegaX, Incoherent, OtherCoherent };

std::string_view tag_name(StateTag tag);

/// Membership flags. For d = 2 a state can be both in Ω and an X state.
struct StateClass {
  bool in_omega = false;
  bool in_omega_x = false;
  bool incoherent = false;
  std::string detail;

  /// Priority Incoherent > InOmega > InOmegaX > OtherCoherent.
  StateTag primary() const;
  std::vector<StateTag> tags() const;
};

/// Ω: for d = 2 the single pair (1,2) is in the support; for d ≥ 3 the
/// support covers every index and each pair (i,j) in it has a neighbour
/// (i,k) or (k,j), k ∉ {i,j}, also in it.
/// Ω_X: nonzero diagonal, nonzero anti-diagonal, zero elsewhere.
StateClass classify(const DensityMatrix& rho, double zero_tol = kZeroTol);

/// (1/4)(I⊗I + Σ c_j σ_j⊗σ_j). Throws NotPSD naming the offending eigenvalue.
DensityMatrix bell_diagonal(double c1, double c2, double c3);

/// Closed-form eigenvalues of bell_diagonal(c1, c2, c3), unsorted.
std::array<double, 4> bell_diagonal_eigenvalues(double c1, double c2, double c3);

/// Uniform superposition |ψ⟩ = Σ_i |i⟩/√d as a density matrix.
DensityMatrix maximally_coherent(std::size_t dim);

using Rng = std::mt19937_64;

/// G G† / Tr(G G†) with G i.i.d. standard complex Gaussian.
DensityMatrix random_state(std::size_t dim, Rng& rng);
DensityMatrix random_state(std::size_t dim, std::uint64_t seed);

/// Rejection-samples random_state until classify() reports Ω.
DensityMatrix random_in_omega(std::size_t dim, Rng& rng);
DensityMatrix random_in_omega(std::size_t dim, std::uint64_t seed);

/// Random state with everything off the diagonal and anti-diagonal removed,
/// renormalized and clipped to PSD; retried until it is an X state.
DensityMatrix random_x_state(std::size_t dim, Rng& rng);
DensityMatrix random_x_state(std::size_t dim, std::uint64_t seed);

/// Convex combination Σ p_k ρ_k. Weights must be nonnegative and sum to 1.
DensityMatrix mix(std::span<const double> weights, std::span<const DensityMatrix> states);

}  // namespace cohfreeze
