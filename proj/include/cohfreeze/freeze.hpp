#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cohfreeze/channel.hpp"
#include "cohfreeze/measures.hpp"

namespace cohfreeze {

/// One term δ · U ρ U† of a mixed strictly incoherent unitary channel, with
/// U = Σ_i e^{iθ_i} |f(i)⟩⟨i|.
struct UnitaryTerm {
  double weight;
  Permutation f;
  std::vector<double> phases;

  CMatrix unitary() const;
};

struct MixedUnitaryForm {
  std::vector<UnitaryTerm> terms;

  double total_weight() const;
};

/// Succeeds iff every Kraus operator has coefficients of equal modulus
/// (within `tol`); then K_α = √δ_α U_α with δ_α = |d_{α,1}|².
std::optional<MixedUnitaryForm> decompose_mixed_unitary(const SioChannel& phi,
                                                        double tol = 1e-9);

/// Per output entry (m, n), m ≠ n: the contributions δ_α e^{i(θ_i−θ_j)} ρ_ij
/// routed there (f_α(i) = m, f_α(j) = n) satisfy the triangle equality
/// |Σ c| = Σ |c| within `tol`. Together with a uniform-modulus form this is
/// exactly C_l1 preservation.
bool phase_alignment_l1(const MixedUnitaryForm& form, const DensityMatrix& rho,
                        double tol = 1e-9);

/// Nonnegative matrix with unit row and column sums.
struct Bistochastic {
  std::size_t dim = 0;
  std::vector<double> entries;  // row-major

  double operator()(std::size_t row, std::size_t col) const { return entries[row * dim + col]; }
  std::vector<double> apply(std::span<const double> x) const;
  /// max |row or column sum − 1|.
  double stochastic_defect() const;
};

/// d_mn = Σ_{α : f_α(n) = m} δ_α. Maps diag(ρ) to diag(Φ(ρ)).
Bistochastic bistochastic_of(const MixedUnitaryForm& form);

/// True iff x ≺ y: prefix sums of x sorted descending never exceed those of
/// y. Throws NotProbabilityVector unless both are nonnegative and sum to 1
/// (within `tol`).
bool majorizes(std::span<const double> y, std::span<const double> x, double tol = 1e-9);

/// A strictly incoherent unitary U = P_π diag(e^{iθ}).
struct UnitaryWitness {
  Permutation perm;
  std::vector<double> phases;

  CMatrix unitary() const;
};

/// Searches permutations in lexicographic order for σ = U ρ U† with U
/// strictly incoherent. Phases come from arg(σ_{π(i)π(j)} / ρ_ij) along the
/// support graph of ρ, first index of each component gauge-fixed to 0;
/// every candidate is verified by reconstruction within `tol`. d ≤ 8,
/// otherwise DimTooLarge.
std::optional<UnitaryWitness> find_freezing_unitary(const DensityMatrix& rho,
                                                    const DensityMatrix& sigma,
                                                    double tol = 1e-9);

/// Which structural characterization produced a verdict.
enum class StructuralPath { None, Omega, XState };

std::string_view path_name(StructuralPath p);

struct Tolerances {
  double l1 = kTolL1;
  double rel_ent = kTolRelEnt;

  double for_measure(Measure m) const { return m == Measure::L1 ? l1 : rel_ent; }
};

/// Verdict from the Ω characterization. For L1 the witness is the mixed
/// unitary form, for RelEnt the single unitary.
struct OmegaVerdict {
  bool frozen = false;
  std::optional<MixedUnitaryForm> form;
  bool phases_aligned = false;
  std::optional<UnitaryWitness> unitary;
  bool operational_frozen = false;
  /// Set when the structural verdict and the measured change disagree.
  std::optional<std::string> violation;
};

/// Structural freeze check for ρ, Φ(ρ) ∈ Ω:
///   L1:     Φ is a mixture of strictly incoherent unitaries with aligned
///            phases on every output entry;
///   RelEnt: Φ(ρ) = U ρ U† for one strictly incoherent unitary U.
/// Throws HypothesisNotMet outside Ω. The verdict is compared against the
/// measured change and any disagreement is reported in `violation`.
///
/// The "iff" needs the support graph of ρ to be connected. Ω only forces
/// that for d ≤ 5; from d = 6 on, two disjoint dense blocks are in Ω and a
/// channel scaling the blocks differently freezes C_l1 without a uniform
/// modulus. Such inputs surface as violations.
OmegaVerdict omega_structural_check(const SioChannel& phi, const DensityMatrix& rho,
                                    Measure measure, const Tolerances& tol = {});

struct FreezeReport {
  Measure measure = Measure::L1;
  CoherenceValue c_before{Measure::L1, 0.0};
  CoherenceValue c_after{Measure::L1, 0.0};
  bool operational_frozen = false;
  std::optional<bool> structural_frozen;
  bool hypothesis_ok = false;
  std::optional<bool> agreement;
  StructuralPath path = StructuralPath::None;
  /// Full reproduction witness when structural and operational verdicts differ.
  std::optional<std::string> violation;
};

/// Multi-line dump of ρ and the Kraus family, precise enough to reproduce.
std::string describe_instance(const SioChannel& phi, const DensityMatrix& rho);

/// Measures C before and after Φ, and if ρ and Φ(ρ) are both in Ω (or both
/// X states) runs the matching structural check. Ω takes precedence when
/// both apply (d = 2).
FreezeReport check_frozen(const SioChannel& phi, const DensityMatrix& rho, Measure measure,
                          const Tolerances& tol = {});

}  // namespace cohfreeze
