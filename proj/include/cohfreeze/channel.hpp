#pragma once

#include <span>
#include <vector>

#include "cohfreeze/states.hpp"

namespace cohfreeze {

/// Coefficients at or below this modulus are structurally zero.
inline constexpr double kCoeffZeroTol = 1e-12;

/// Generalized-permutation Kraus operator K = Σ_i coeffs[i] |f(i)⟩⟨i|.
struct SioKraus {
  Permutation f;
  std::vector<cplx> coeffs;

  std::size_t dim() const noexcept { return coeffs.size(); }
  CMatrix dense() const;
  bool is_zero() const;
};

/// Strictly incoherent operation in parsed form. Immutable once built; every
/// construction path checks completeness Σ_α |d_{α,i}|² = 1 (1e-9).
class SioChannel {
 public:
  /// Throws DimMismatch, EmptyKraus or NotComplete.
  static SioChannel from_kraus(std::vector<SioKraus> kraus);

  std::size_t dim() const noexcept { return kraus_.front().dim(); }
  std::span<const SioKraus> kraus() const noexcept { return kraus_; }
  std::size_t size() const noexcept { return kraus_.size(); }
  std::vector<CMatrix> dense() const;

 private:
  explicit SioChannel(std::vector<SioKraus> kraus) : kraus_(std::move(kraus)) {}
  std::vector<SioKraus> kraus_;
};

/// ‖Σ_α K_α†K_α − I‖_max.
double completeness_defect(std::span<const SioKraus> kraus);

/// Parses dense Kraus matrices. Each must have at most one nonzero entry per
/// row and per column; all-zero rows/columns are allowed and the permutation
/// is completed over them in increasing order. Throws
/// NotGeneralizedPermutation (with the 1-based Kraus index and offending
/// row/column), EmptyKraus, DimMismatch or NotComplete.
SioChannel validate_sio(std::span<const CMatrix> kraus_matrices);

/// Φ(ρ)_{f(i) f(j)} += d_i conj(d_j) ρ_ij over every Kraus operator.
DensityMatrix apply(const SioChannel& phi, const DensityMatrix& rho);

/// Kraus family of outer ∘ inner (pairwise products K_β L_α).
SioChannel compose(const SioChannel& outer, const SioChannel& inner);

/// Two-qubit local bit flip with strength q ∈ [0, 1]: each qubit flips
/// independently with probability q/2. Kraus operators
///   (1 − q/2) I⊗I,  s·I⊗σ₁,  s·σ₁⊗I,  (q/2)·σ₁⊗σ₁,   s = √(q/2 (1 − q/2)).
/// Vanishing Kraus operators (q = 0) are dropped.
SioChannel local_bit_flip(double q);

/// Φ = δ U₁·U₁† + (1 − δ) U₂·U₂† with U₁ = diag(e^{iθ₁}, 1) and
/// U₂ = [[0, 1], [e^{iθ₂}, 0]]. Requires 0 < δ < 1.
SioChannel qubit_freeze_channel(double delta, double theta1, double theta2);

/// Single-Kraus channel P_f · diag(e^{iθ}).
SioChannel unitary_channel(const Permutation& f, std::span<const double> phases);

}  // namespace cohfreeze
