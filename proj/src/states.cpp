#include "cohfreeze/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cohfreeze/error.hpp"

namespace cohfreeze {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-9;
constexpr int kMaxRejections = 1000;

bool on_x_pattern(std::size_t i, std::size_t j, std::size_t d) { return i == j || i + j + 1 == d; }

}  // namespace

DensityMatrix DensityMatrix::from_matrix(CMatrix m) {
  const double asym = max_abs_diff(m, m.adjoint());
  if (asym > kMatrixTol) {
    throw Error(ErrorKind::NotHermitian, "‖ρ − ρ†‖_max = " + std::to_string(asym));
  }
  const cplx tr = m.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream os;
    os << "trace " << tr.real() << (tr.imag() != 0 ? " (complex)" : "") << " differs from 1";
    throw Error(ErrorKind::NotDensityMatrix, os.str());
  }
  const auto eig = herm_eigenvalues(m);
  if (eig.back() < -kPsdTol) {
    throw Error(ErrorKind::NotPSD, "smallest eigenvalue " + std::to_string(eig.back()));
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::unchecked(CMatrix m) {
  const double asym = max_abs_diff(m, m.adjoint());
  if (asym > kMatrixTol) {
    throw Error(ErrorKind::NotHermitian, "‖ρ − ρ†‖_max = " + std::to_string(asym));
  }
  return DensityMatrix(std::move(m));
}

SupportSet support_set(const DensityMatrix& rho, double zero_tol) {
  SupportSet s;
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j)
      if (i != j && std::abs(rho(i, j)) > zero_tol) s.pairs.emplace(i, j);
  return s;
}

std::string_view tag_name(StateTag tag) {
  switch (tag) {
    case StateTag::InOmega: return "InOmega";
    case StateTag::InOmegaX: return "InOmegaX";
    case StateTag::Incoherent: return "Incoherent";
    case StateTag::OtherCoherent: return "OtherCoherent";
  }
  return "?";
}

StateTag StateClass::primary() const {
  if (incoherent) return StateTag::Incoherent;
  if (in_omega) return StateTag::InOmega;
  if (in_omega_x) return StateTag::InOmegaX;
  return StateTag::OtherCoherent;
}

std::vector<StateTag> StateClass::tags() const {
  std::vector<StateTag> out;
  if (incoherent) out.push_back(StateTag::Incoherent);
  if (in_omega) out.push_back(StateTag::InOmega);
  if (in_omega_x) out.push_back(StateTag::InOmegaX);
  if (out.empty()) out.push_back(StateTag::OtherCoherent);
  return out;
}

StateClass classify(const DensityMatrix& rho, double zero_tol) {
  const std::size_t d = rho.dim();
  const SupportSet support = support_set(rho, zero_tol);
  StateClass cls;
  std::ostringstream why;

  cls.incoherent = support.empty();
  if (cls.incoherent) why << "no off-diagonal support; ";

  if (d == 2) {
    cls.in_omega = support.contains(0, 1);
  } else if (!support.empty()) {
    std::vector<bool> covered(d, false);
    for (const auto& [i, j] : support.pairs) covered[i] = covered[j] = true;
    const auto uncovered = std::find(covered.begin(), covered.end(), false);
    bool witnessed = true;
    for (const auto& [i, j] : support.pairs) {
      bool found = false;
      for (std::size_t k = 0; k < d && !found; ++k) {
        if (k == i || k == j) continue;
        found = support.contains(i, k) || support.contains(k, j);
      }
      if (!found) {
        witnessed = false;
        why << "pair (" << i + 1 << "," << j + 1 << ") has no neighbouring pair; ";
        break;
      }
    }
    if (uncovered != covered.end()) {
      why << "index " << (uncovered - covered.begin()) + 1 << " not covered by the support; ";
    }
    cls.in_omega = uncovered == covered.end() && witnessed;
  }

  bool x_shape = true;
  for (std::size_t i = 0; i < d && x_shape; ++i) {
    if (std::abs(rho(i, i)) <= zero_tol) {
      x_shape = false;
      why << "diagonal entry " << i + 1 << " vanishes; ";
    }
    for (std::size_t j = 0; j < d && x_shape; ++j) {
      if (i == j) continue;
      const bool nonzero = std::abs(rho(i, j)) > zero_tol;
      if (on_x_pattern(i, j, d) && !nonzero) {
        x_shape = false;
        why << "anti-diagonal entry (" << i + 1 << "," << j + 1 << ") vanishes; ";
      } else if (!on_x_pattern(i, j, d) && nonzero) {
        x_shape = false;
        why << "entry (" << i + 1 << "," << j + 1 << ") off the X pattern; ";
      }
    }
  }
  cls.in_omega_x = x_shape;

  cls.detail = why.str();
  if (cls.detail.size() >= 2) cls.detail.resize(cls.detail.size() - 2);
  if (cls.detail.empty()) cls.detail = "ok";
  return cls;
}

std::array<double, 4> bell_diagonal_eigenvalues(double c1, double c2, double c3) {
  return {(1 - c1 - c2 - c3) / 4, (1 - c1 + c2 + c3) / 4, (1 + c1 - c2 + c3) / 4,
          (1 + c1 + c2 - c3) / 4};
}

DensityMatrix bell_diagonal(double c1, double c2, double c3) {
  for (double lambda : bell_diagonal_eigenvalues(c1, c2, c3)) {
    if (lambda < -1e-12) {
      std::ostringstream os;
      os << "Bell-diagonal (" << c1 << ", " << c2 << ", " << c3 << ") has eigenvalue " << lambda;
      throw Error(ErrorKind::NotPSD, os.str());
    }
  }
  const double a = (1 + c3) / 4, b = (1 - c3) / 4;
  const double outer = (c1 - c2) / 4, inner = (c1 + c2) / 4;
  CMatrix m{{a, 0, 0, outer}, {0, b, inner, 0}, {0, inner, b, 0}, {outer, 0, 0, a}};
  return DensityMatrix::unchecked(std::move(m));
}

DensityMatrix maximally_coherent(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = 1.0 / static_cast<double>(dim);
  return DensityMatrix::unchecked(std::move(m));
}

DensityMatrix random_state(std::size_t dim, Rng& rng) {
  if (dim < 2) throw Error(ErrorKind::OutOfRange, "random_state needs d ≥ 2");
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx{re, im};
    }
  CMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return DensityMatrix::unchecked((rho + rho.adjoint()) * cplx{0.5});
}

DensityMatrix random_state(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_state(dim, rng);
}

DensityMatrix random_in_omega(std::size_t dim, Rng& rng) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    DensityMatrix rho = random_state(dim, rng);
    if (classify(rho).in_omega) return rho;
  }
  throw Error(ErrorKind::SamplingExhausted, "random_in_omega: no Ω state in 1000 draws");
}

DensityMatrix random_in_omega(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_in_omega(dim, rng);
}

DensityMatrix random_x_state(std::size_t dim, Rng& rng) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    CMatrix m = random_state(dim, rng).matrix();
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        if (!on_x_pattern(i, j, dim)) m(i, j) = 0.0;
    m *= 1.0 / m.trace().real();

    // The X pattern is block diagonal up to relabeling, so zeroing the rest
    // is a pinching and already PSD; the clip only absorbs rounding.
    const HermitianEigen eig = herm_eigen(m);
    if (eig.values.back() < 0.0) {
      std::vector<double> clipped(eig.values);
      for (double& v : clipped) v = std::max(v, 0.0);
      const CMatrix& v = eig.vectors;
      m = v * CMatrix::diagonal(std::span<const double>(clipped)) * v.adjoint();
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          if (!on_x_pattern(i, j, dim)) m(i, j) = 0.0;
      m *= 1.0 / m.trace().real();
    }
    DensityMatrix rho = DensityMatrix::unchecked((m + m.adjoint()) * cplx{0.5});
    if (classify(rho).in_omega_x) return rho;
  }
  throw Error(ErrorKind::SamplingExhausted, "random_x_state: no X state in 1000 draws");
}

DensityMatrix random_x_state(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_x_state(dim, rng);
}

DensityMatrix mix(std::span<const double> weights, std::span<const DensityMatrix> states) {
  if (weights.size() != states.size() || states.empty()) {
    throw Error(ErrorKind::DimMismatch, "mix: weights and states differ in count");
  }
  double total = 0.0;
  CMatrix acc(states.front().dim());
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (weights[k] < 0.0) throw Error(ErrorKind::OutOfRange, "mix: negative weight");
    total += weights[k];
    acc += states[k].matrix() * cplx{weights[k]};
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorKind::OutOfRange, "mix: weights sum to " + std::to_string(total));
  }
  return DensityMatrix::unchecked(std::move(acc));
}

}  // namespace cohfreeze
