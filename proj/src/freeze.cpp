#include "cohfreeze/freeze.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <iomanip>
#include <sstream>

#include "cohfreeze/error.hpp"
#include "cohfreeze/xfreeze.hpp"

namespace cohfreeze {

namespace {

constexpr std::size_t kMaxSearchDim = 8;

}  // namespace

std::string describe_instance(const SioChannel& phi, const DensityMatrix& rho) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "rho =\n" << to_string(rho.matrix(), 17) << "\nchannel:";
  std::size_t a = 1;
  for (const auto& k : phi.kraus()) {
    os << "\n  K" << a++ << " perm " << to_string(k.f) << " coeffs [";
    for (std::size_t i = 0; i < k.dim(); ++i) {
      os << (i ? ", " : "") << k.coeffs[i].real() << (k.coeffs[i].imag() < 0 ? "" : "+")
         << k.coeffs[i].imag() << "i";
    }
    os << "]";
  }
  return os.str();
}

CMatrix UnitaryTerm::unitary() const {
  CMatrix u(f.dim());
  for (std::size_t i = 0; i < f.dim(); ++i) u(f(i), i) = std::polar(1.0, phases[i]);
  return u;
}

double MixedUnitaryForm::total_weight() const {
  double s = 0.0;
  for (const auto& t : terms) s += t.weight;
  return s;
}

std::optional<MixedUnitaryForm> decompose_mixed_unitary(const SioChannel& phi, double tol) {
  MixedUnitaryForm form;
  for (const auto& k : phi.kraus()) {
    const double first = std::abs(k.coeffs.front());
    for (const auto& c : k.coeffs) {
      if (std::abs(std::abs(c) - first) > tol) return std::nullopt;
    }
    UnitaryTerm term{first * first, k.f, std::vector<double>(k.dim())};
    for (std::size_t i = 0; i < k.dim(); ++i) term.phases[i] = std::arg(k.coeffs[i]);
    form.terms.push_back(std::move(term));
  }
  return form;
}

bool phase_alignment_l1(const MixedUnitaryForm& form, const DensityMatrix& rho, double tol) {
  const std::size_t d = rho.dim();
  // Per output entry: running Σ c and Σ |c|.
  std::vector<cplx> sum(d * d);
  std::vector<double> abs_sum(d * d, 0.0);
  for (const auto& t : form.terms) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (i == j) continue;
        const cplx c = t.weight * std::polar(1.0, t.phases[i] - t.phases[j]) * rho(i, j);
        const std::size_t slot = t.f(i) * d + t.f(j);
        sum[slot] += c;
        abs_sum[slot] += std::abs(c);
      }
  }
  for (std::size_t slot = 0; slot < d * d; ++slot) {
    if (abs_sum[slot] - std::abs(sum[slot]) > tol) return false;
  }
  return true;
}

std::vector<double> Bistochastic::apply(std::span<const double> x) const {
  std::vector<double> y(dim, 0.0);
  for (std::size_t m = 0; m < dim; ++m)
    for (std::size_t n = 0; n < dim; ++n) y[m] += (*this)(m, n) * x[n];
  return y;
}

double Bistochastic::stochastic_defect() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    double row = 0.0, col = 0.0;
    for (std::size_t l = 0; l < dim; ++l) {
      row += (*this)(k, l);
      col += (*this)(l, k);
    }
    worst = std::max({worst, std::abs(row - 1.0), std::abs(col - 1.0)});
  }
  return worst;
}

Bistochastic bistochastic_of(const MixedUnitaryForm& form) {
  const std::size_t d = form.terms.empty() ? 0 : form.terms.front().f.dim();
  Bistochastic out{d, std::vector<double>(d * d, 0.0)};
  for (const auto& t : form.terms)
    for (std::size_t n = 0; n < d; ++n) out.entries[t.f(n) * d + n] += t.weight;
  return out;
}

bool majorizes(std::span<const double> y, std::span<const double> x, double tol) {
  const auto check = [&](std::span<const double> v, const char* name) {
    double total = 0.0;
    for (double e : v) {
      if (e < -tol) {
        throw Error(ErrorKind::NotProbabilityVector,
                    std::string(name) + " has negative entry " + std::to_string(e));
      }
      total += e;
    }
    if (std::abs(total - 1.0) > tol) {
      throw Error(ErrorKind::NotProbabilityVector,
                  std::string(name) + " sums to " + std::to_string(total));
    }
  };
  check(y, "y");
  check(x, "x");
  if (x.size() != y.size()) throw Error(ErrorKind::DimMismatch, "majorizes: length mismatch");

  std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end(), std::greater<>());
  std::sort(ys.begin(), ys.end(), std::greater<>());
  double px = 0.0, py = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    px += xs[k];
    py += ys[k];
    if (px > py + tol) return false;
  }
  return std::abs(px - py) <= tol;
}

CMatrix UnitaryWitness::unitary() const {
  CMatrix u(perm.dim());
  for (std::size_t i = 0; i < perm.dim(); ++i) u(perm(i), i) = std::polar(1.0, phases[i]);
  return u;
}

std::optional<UnitaryWitness> find_freezing_unitary(const DensityMatrix& rho,
                                                    const DensityMatrix& sigma, double tol) {
  const std::size_t d = rho.dim();
  if (d > kMaxSearchDim) {
    throw Error(ErrorKind::DimTooLarge, "find_freezing_unitary searches d ≤ 8, got d = " +
                                            std::to_string(d));
  }
  if (sigma.dim() != d) throw Error(ErrorKind::DimMismatch, "ρ and σ differ in dimension");

  const SupportSet support = support_set(rho);
  std::vector<std::size_t> image(d);
  std::iota(image.begin(), image.end(), std::size_t{0});
  do {
    bool moduli_match = true;
    for (std::size_t i = 0; i < d && moduli_match; ++i)
      for (std::size_t j = 0; j < d && moduli_match; ++j)
        moduli_match = std::abs(std::abs(sigma(image[i], image[j])) - std::abs(rho(i, j))) <= tol;
    if (!moduli_match) continue;

    // θ_i − θ_j = arg(σ_{π(i)π(j)} / ρ_ij) on the support graph.
    std::vector<double> theta(d, 0.0);
    std::vector<bool> seen(d, false);
    for (std::size_t root = 0; root < d; ++root) {
      if (seen[root]) continue;
      seen[root] = true;
      std::queue<std::size_t> frontier;
      frontier.push(root);
      while (!frontier.empty()) {
        const std::size_t i = frontier.front();
        frontier.pop();
        for (std::size_t j = 0; j < d; ++j) {
          if (seen[j] || !support.contains(i, j)) continue;
          theta[j] = theta[i] - std::arg(sigma(image[i], image[j]) / rho(i, j));
          seen[j] = true;
          frontier.push(j);
        }
      }
    }

    UnitaryWitness witness{Permutation(image), std::move(theta)};
    const CMatrix u = witness.unitary();
    if (max_abs_diff(u * rho.matrix() * u.adjoint(), sigma.matrix()) <= tol) return witness;
  } while (std::next_permutation(image.begin(), image.end()));
  return std::nullopt;
}

std::string_view path_name(StructuralPath p) {
  switch (p) {
    case StructuralPath::None: return "none";
    case StructuralPath::Omega: return "omega";
    case StructuralPath::XState: return "x-state";
  }
  return "?";
}

OmegaVerdict omega_structural_check(const SioChannel& phi, const DensityMatrix& rho,
                                    Measure measure, const Tolerances& tol) {
  const DensityMatrix sigma = apply(phi, rho);
  if (!classify(rho).in_omega || !classify(sigma).in_omega) {
    throw Error(ErrorKind::HypothesisNotMet, "ρ and Φ(ρ) must both lie in Ω");
  }

  OmegaVerdict v;
  if (measure == Measure::L1) {
    v.form = decompose_mixed_unitary(phi);
    v.phases_aligned = v.form && phase_alignment_l1(*v.form, rho);
    v.frozen = v.form.has_value() && v.phases_aligned;
  } else {
    v.unitary = find_freezing_unitary(rho, sigma);
    v.frozen = v.unitary.has_value();
  }

  const double before = coherence(measure, rho).value;
  const double after = coherence(measure, sigma).value;
  v.operational_frozen = std::abs(before - after) <= tol.for_measure(measure);
  if (v.frozen != v.operational_frozen) {
    std::ostringstream os;
    os << std::setprecision(17) << "structural verdict " << (v.frozen ? "frozen" : "not frozen")
       << " but C_" << measure_name(measure) << " goes " << before << " -> " << after << "\n"
       << describe_instance(phi, rho);
    v.violation = os.str();
  }
  return v;
}

FreezeReport check_frozen(const SioChannel& phi, const DensityMatrix& rho, Measure measure,
                          const Tolerances& tol) {
  const DensityMatrix sigma = apply(phi, rho);
  FreezeReport r;
  r.measure = measure;
  r.c_before = coherence(measure, rho);
  r.c_after = coherence(measure, sigma);
  r.operational_frozen =
      std::abs(r.c_before.value - r.c_after.value) <= tol.for_measure(measure);

  const StateClass before = classify(rho);
  const StateClass after = classify(sigma);
  if (before.in_omega && after.in_omega) {
    r.path = StructuralPath::Omega;
    const OmegaVerdict v = omega_structural_check(phi, rho, measure, tol);
    r.structural_frozen = v.frozen;
    r.violation = v.violation;
  } else if (before.in_omega_x && after.in_omega_x) {
    r.path = StructuralPath::XState;
    const XVerdict v = x_structural_check(phi, rho, measure, tol);
    r.structural_frozen = v.frozen;
    r.violation = v.violation;
  }
  r.hypothesis_ok = r.path != StructuralPath::None;
  if (r.structural_frozen) r.agreement = *r.structural_frozen == r.operational_frozen;
  return r;
}

}  // namespace cohfreeze
