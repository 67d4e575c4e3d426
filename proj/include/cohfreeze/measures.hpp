#pragma once

#include <string_view>

#include "cohfreeze/states.hpp"

namespace cohfreeze {

enum class Measure { L1, RelEnt };

std::string_view measure_name(Measure m);  // "l1" / "re"
Measure parse_measure(std::string_view name);

/// Default freeze tolerances: C_l1 is arithmetic-limited, C_Re is limited by
/// the eigensolver.
inline constexpr double kTolL1 = 1e-9;
inline constexpr double kTolRelEnt = 1e-7;

inline constexpr double default_tolerance(Measure m) {
  return m == Measure::L1 ? kTolL1 : kTolRelEnt;
}

struct CoherenceValue {
  Measure measure;
  double value;  // RelEnt in bits
};

/// Keeps the diagonal, zeroes everything else.
DensityMatrix dephase(const DensityMatrix& rho);

/// −Tr ρ log₂ ρ, eigenvalues below 1e-12 contribute nothing. Standard sign
/// convention, so S ≥ 0 and C_Re = S(ρ_diag) − S(ρ) ≥ 0.
double entropy(const DensityMatrix& rho);

/// Σ_{i≠j} |ρ_ij|.
CoherenceValue c_l1(const DensityMatrix& rho);

/// S(dephase(ρ)) − S(ρ).
CoherenceValue c_re(const DensityMatrix& rho);

CoherenceValue coherence(Measure m, const DensityMatrix& rho);

}  // namespace cohfreeze
