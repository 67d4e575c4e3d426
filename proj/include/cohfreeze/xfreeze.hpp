#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cohfreeze/channel.hpp"
#include "cohfreeze/freeze.hpp"

namespace cohfreeze {

/// Relabeling that block-diagonalizes X states: i ↦ 2i−1 and d+1−i ↦ 2i
/// (1-based) for i ≤ ⌊d/2⌋, and the middle index ↦ d when d is odd. After
/// conjugation by P_π, block k occupies indices (2k, 2k+1) (0-based) and the
/// odd tail sits at index d−1.
Permutation pairing_permutation(std::size_t d);

/// P_π ρ P_π† = ⊕ λ_k ρ_k (⊕ tail for odd d).
struct XDecomposition {
  Permutation pairing;
  std::vector<double> weights;        // λ_k = ρ_kk + ρ_{d−1−k, d−1−k}
  std::vector<DensityMatrix> blocks;  // normalized 2×2 states
  std::optional<double> tail;         // odd d only

  double total_weight() const;
  /// P_π† (⊕ λ_k ρ_k ⊕ tail) P_π, which must equal the source state.
  CMatrix reassemble() const;
};

/// Throws NotXState unless classify(rho).in_omega_x.
XDecomposition decompose_x(const DensityMatrix& rho);

enum class OddKind {
  None,          // even d
  DiagonalTail,  // block part plus c·|d⟩⟨d| (c may be 0)
  RankOne,       // c·|t⟩⟨d|, t < d, everything else zero
};

std::string_view odd_kind_name(OddKind k);

/// Kraus operator in the pairing basis as P_f · ⊕_k δ_k diag(e^{iθ_k1}, e^{iθ_k2})
/// plus the odd term. A within-pair flip (σ₁-like block) is carried by f and
/// recorded in `within_swap`; the remaining factor is always diagonal.
struct BlockKrausForm {
  std::size_t d = 0;
  Permutation f_pair;                           // source block → target block
  std::vector<bool> within_swap;                // per source block
  std::vector<double> deltas;                   // δ_k ≥ 0
  std::vector<std::pair<double, double>> phases;  // (θ_k1, θ_k2)
  OddKind odd_kind = OddKind::None;
  std::size_t rank_one_target = 0;              // 0-based row, RankOne only
  cplx odd_coeff{};

  /// The full index permutation f carried by the nonzero entries, completed
  /// over vanishing columns in increasing order.
  Permutation full_permutation() const;
  /// Matrix of the operator in the pairing basis.
  CMatrix reconstruct() const;
};

/// Conjugates k by the pairing and matches the block form. Absent when a
/// pair is split across target pairs, a block has unequal moduli (or exactly
/// one vanishing entry), or the odd column matches neither odd form.
std::optional<BlockKrausForm> parse_block_form(const SioKraus& k, const Permutation& pairing);

/// How contributions are grouped for the C_l1 triangle equality. PerTarget
/// aggregates every source block routed to the same target block and is what
/// C_l1 preservation needs; PerSourceBlock is the narrower reading that
/// groups by (target, source) and can accept channels that lose coherence.
enum class AlignmentScope { PerTarget, PerSourceBlock };

struct XCheckOptions {
  AlignmentScope scope = AlignmentScope::PerTarget;
  double tol = 1e-9;
};

struct XVerdict {
  bool frozen = false;
  bool all_parsed = false;
  bool blocks_complete = false;
  bool phases_aligned = false;
  bool blocks_equal = false;  // evaluated for both measures, used by RelEnt
  std::vector<std::optional<BlockKrausForm>> forms;
  bool operational_frozen = false;
  std::optional<std::string> violation;
};

/// Structural freeze check for ρ, Φ(ρ) both X states.
///   L1:     every Kraus operator has block form, Σ_α δ_αk² = 1 per block, and
///            the off-diagonal contributions landing in each target block are
///            phase aligned.
///   RelEnt: the L1 conditions, and every normalized block landing in the
///            same target (after its diagonal phases and any within-pair flip)
///            is the same 2×2 state. Rank-one odd terms land as incoherent
///            projectors and so break the equality whenever they are nonzero.
/// Throws HypothesisNotMet otherwise. Disagreement with the measured change
/// is reported in `violation`.
///
/// For odd d ≥ 5 a Kraus operator may send the odd column into a target pair
/// whose source block vanishes; that keeps C_l1 but matches neither odd form,
/// and is reported as a violation.
XVerdict x_structural_check(const SioChannel& phi, const DensityMatrix& rho, Measure measure,
                            const Tolerances& tol = {}, const XCheckOptions& options = {});

/// Samples random Ω states and random X states, keeps the ones on which Φ
/// freezes C_Re, and counts how many keep their class. A relabeling that
/// splits the anti-diagonal pairs freezes C_Re everywhere yet moves X states
/// off the X pattern, so `holds()` is false for it.
struct InvarianceReport {
  std::size_t omega_samples = 0, omega_retained = 0, omega_preserved = 0;
  std::size_t x_samples = 0, x_retained = 0, x_preserved = 0;
  std::vector<std::string> failures;

  std::size_t skipped() const {
    return (omega_samples - omega_retained) + (x_samples - x_retained);
  }
  bool holds() const {
    return omega_preserved == omega_retained && x_preserved == x_retained;
  }
};

InvarianceReport omega_invariance_probe(const SioChannel& phi, std::size_t samples,
                                        std::uint64_t seed, double tol_re = kTolRelEnt);

/// Coefficients of the four admissible d = 3 Kraus shapes in the pairing
/// basis:
///   (1) diag(a·e^{iθ₁}, a, c₁)          (2) [[0, b, 0], [b·e^{iθ₂}, 0, 0], [0, 0, c₂]]
///   (3) c₃·|1⟩⟨3|                        (4) c₄·|2⟩⟨3|
/// Completeness: a² + b² = 1 and c₁² + c₂² + c₃² + c₄² = 1.
struct QutritForms {
  double a = std::sqrt(0.5), b = std::sqrt(0.5);
  double c1 = 0.5, c2 = 0.5, c3 = 0.5, c4 = 0.5;
  double theta1 = 0.0, theta2 = 0.0;
};

/// The four matrices in the pairing basis (zero forms included).
std::vector<CMatrix> qutrit_form_matrices(const QutritForms& p);

/// Channel whose Kraus operators are the nonzero forms pulled back to the
/// computational basis.
SioChannel qutrit_form_channel(const QutritForms& p);

struct BellSweepRow {
  double c1, c2, c3, q;
  double c_re_before, c_re_after;
  bool frozen;
  std::optional<bool> structural;  // absent when ρ or Φ(ρ) is not an X state
  bool predicted;                  // |c₂ + c₁c₃| ≤ 1e-9
};

/// Every PSD point of the grid c_k = −1 + 2k/(n−1), k = 0…n−1, cubed, under
/// local_bit_flip(q) for each q.
std::vector<BellSweepRow> bell_freeze_sweep(std::size_t grid_n, std::span<const double> qs,
                                            double tol_re = kTolRelEnt);

/// CSV with header c1,c2,c3,q,c_re_before,c_re_after,frozen,structural_verdict.
std::string bell_sweep_csv(std::span<const BellSweepRow> rows);

}  // namespace cohfreeze
