#include "cohfreeze/oracle.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "cohfreeze/channel.hpp"
#include "cohfreeze/error.hpp"
#include "cohfreeze/freeze.hpp"

namespace cohfreeze {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double angle) {
  double w = std::fmod(angle, kTwoPi);
  if (w > std::numbers::pi) w -= kTwoPi;
  if (w < -std::numbers::pi) w += kTwoPi;
  return w;
}

}  // namespace

bool exhaustive_unitary_oracle(const DensityMatrix& rho, const DensityMatrix& sigma,
                               std::size_t phase_grid_n) {
  const std::size_t d = rho.dim();
  if (d > 4) throw Error(ErrorKind::DimTooLarge, "exhaustive oracle handles d ≤ 4");
  if (phase_grid_n < 8) throw Error(ErrorKind::OutOfRange, "phase grid needs n ≥ 8");
  if (sigma.dim() != d) throw Error(ErrorKind::DimMismatch, "ρ and σ differ in dimension");

  const double tol = 10.0 / static_cast<double>(phase_grid_n);
  for (const Permutation& p : all_permutations(d)) {
    // Phase-independent necessary condition, checked once per permutation.
    bool moduli = true;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        moduli = moduli && std::abs(std::abs(sigma(p(i), p(j))) - std::abs(rho(i, j))) <= tol;
    if (!moduli) continue;

    std::vector<std::size_t> k(d, 0);
    while (true) {
      CMatrix u(d);
      for (std::size_t i = 0; i < d; ++i)
        u(p(i), i) = std::polar(1.0, kTwoPi * static_cast<double>(k[i]) /
                                         static_cast<double>(phase_grid_n));
      if (max_abs_diff(conjugate(rho.matrix(), u), sigma.matrix()) <= tol) return true;

      std::size_t pos = 1;
      while (pos < d && ++k[pos] == phase_grid_n) k[pos++] = 0;
      if (pos >= d) break;
    }
  }
  return false;
}

SweepResult qubit_condition_sweep(std::size_t grid_n) {
  if (grid_n < 16) throw Error(ErrorKind::OutOfRange, "qubit sweep needs grid_n ≥ 16");
  SweepResult r;
  r.grid_n = grid_n;
  r.deltas = {0.25, 0.5, 0.75};
  r.rho12_modulus = 0.4;

  const auto angle = [&](std::size_t k) {
    return kTwoPi * static_cast<double>(k) / static_cast<double>(grid_n);
  };
  for (double delta : r.deltas)
    for (std::size_t a = 0; a < grid_n; ++a)
      for (std::size_t b = 0; b < grid_n; ++b)
        for (std::size_t c = 0; c < grid_n; ++c) {
          const double t1 = angle(a), t2 = angle(b), t = angle(c);
          const cplx off = std::polar(r.rho12_modulus, t);
          const CMatrix rho_m{{0.7, off}, {std::conj(off), 0.3}};
          const CMatrix u1{{std::polar(1.0, t1), 0.0}, {0.0, 1.0}};
          const CMatrix u2{{0.0, 1.0}, {std::polar(1.0, t2), 0.0}};
          const CMatrix sigma_m =
              conjugate(rho_m, u1) * cplx{delta} + conjugate(rho_m, u2) * cplx{1.0 - delta};

          SweepPoint pt{delta, t1, t2, t, 0.0, 0.0, false, false, 0.0, std::nullopt};
          pt.c_before = std::abs(rho_m(0, 1)) + std::abs(rho_m(1, 0));
          pt.c_after = std::abs(sigma_m(0, 1)) + std::abs(sigma_m(1, 0));
          pt.frozen = std::abs(pt.c_before - pt.c_after) <= 1e-9;
          pt.manifold_distance = std::abs(wrap(t1 + t2 + 2.0 * t));
          pt.predicted = pt.manifold_distance <= 1e-9;

          std::ostringstream witness;
          witness << std::setprecision(17) << "delta=" << delta << " theta1=" << t1
                  << " theta2=" << t2 << " theta=" << t << " C_l1 " << pt.c_before << " -> "
                  << pt.c_after;
          if (pt.frozen == pt.predicted) {
            ++r.agreements;
          } else {
            r.disagreements.push_back("frozen=" + std::to_string(pt.frozen) + " predicted=" +
                                      std::to_string(pt.predicted) + " " + witness.str());
          }

          // The structural check needs Φ(ρ) ∈ Ω; at δ = 1/2 antipodal phases empty it.
          if (std::abs(sigma_m(0, 1)) <= kZeroTol) {
            r.points.push_back(pt);
            continue;
          }
          const DensityMatrix rho = DensityMatrix::from_matrix(rho_m);
          const OmegaVerdict v =
              omega_structural_check(qubit_freeze_channel(delta, t1, t2), rho, Measure::L1);
          pt.structural = v.frozen;
          if (v.frozen == pt.frozen) {
            ++r.structural_agreements;
          } else {
            r.structural_disagreements.push_back("structural=" + std::to_string(v.frozen) + " " +
                                                 witness.str());
          }
          r.points.push_back(pt);
        }
  return r;
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "delta,theta1,theta2,theta,c_l1_before,c_l1_after,frozen,predicted,manifold_distance,"
        "structural_verdict\n";
  for (const auto& p : r.points) {
    os << p.delta << ',' << p.theta1 << ',' << p.theta2 << ',' << p.theta << ',' << p.c_before
       << ',' << p.c_after << ',' << (p.frozen ? "true" : "false") << ','
       << (p.predicted ? "true" : "false") << ',' << p.manifold_distance << ','
       << (p.structural ? (*p.structural ? "true" : "false") : "na") << '\n';
  }
  return os.str();
}

}  // namespace cohfreeze
