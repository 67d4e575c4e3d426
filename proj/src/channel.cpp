#include "cohfreeze/channel.hpp"

#include <cmath>
#include <string>

#include "cohfreeze/error.hpp"

namespace cohfreeze {

namespace {

constexpr double kCompletenessTol = 1e-9;

}  // namespace

CMatrix SioKraus::dense() const {
  CMatrix m(dim());
  for (std::size_t i = 0; i < dim(); ++i) m(f(i), i) = coeffs[i];
  return m;
}

bool SioKraus::is_zero() const {
  for (const auto& c : coeffs)
    if (std::abs(c) > kCoeffZeroTol) return false;
  return true;
}

double completeness_defect(std::span<const SioKraus> kraus) {
  if (kraus.empty()) return 1.0;
  const std::size_t d = kraus.front().dim();
  // Σ K†K is diagonal for generalized permutations: entry i is Σ_α |d_{α,i}|².
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double col = 0.0;
    for (const auto& k : kraus) col += std::norm(k.coeffs[i]);
    worst = std::max(worst, std::abs(col - 1.0));
  }
  return worst;
}

SioChannel SioChannel::from_kraus(std::vector<SioKraus> kraus) {
  if (kraus.empty()) throw Error(ErrorKind::EmptyKraus, "channel has no Kraus operators");
  const std::size_t d = kraus.front().dim();
  for (std::size_t a = 0; a < kraus.size(); ++a) {
    if (kraus[a].dim() != d || kraus[a].f.dim() != d) {
      throw Error(ErrorKind::DimMismatch, "Kraus operator " + std::to_string(a + 1) +
                                              " does not have dimension " + std::to_string(d));
    }
    if (kraus[a].is_zero()) {
      throw Error(ErrorKind::EmptyKraus,
                  "Kraus operator " + std::to_string(a + 1) + " is identically zero");
    }
  }
  const double defect = completeness_defect(kraus);
  if (defect > kCompletenessTol) {
    throw Error(ErrorKind::NotComplete, "‖Σ K†K − I‖_max = " + std::to_string(defect));
  }
  return SioChannel(std::move(kraus));
}

std::vector<CMatrix> SioChannel::dense() const {
  std::vector<CMatrix> out;
  out.reserve(kraus_.size());
  for (const auto& k : kraus_) out.push_back(k.dense());
  return out;
}

SioChannel validate_sio(std::span<const CMatrix> kraus_matrices) {
  if (kraus_matrices.empty()) throw Error(ErrorKind::EmptyKraus, "no Kraus matrices given");
  const std::size_t d = kraus_matrices.front().dim();
  std::vector<SioKraus> parsed;
  for (std::size_t a = 0; a < kraus_matrices.size(); ++a) {
    const CMatrix& m = kraus_matrices[a];
    const std::string which = "Kraus operator " + std::to_string(a + 1);
    if (m.dim() != d) {
      throw Error(ErrorKind::DimMismatch, which + " is " + std::to_string(m.dim()) + "×" +
                                              std::to_string(m.dim()) + ", expected " +
                                              std::to_string(d));
    }
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> row_of_col(d, kNone);
    std::vector<bool> row_used(d, false);
    for (std::size_t col = 0; col < d; ++col) {
      for (std::size_t row = 0; row < d; ++row) {
        if (std::abs(m(row, col)) <= kCoeffZeroTol) continue;
        if (row_of_col[col] != kNone) {
          throw Error(ErrorKind::NotGeneralizedPermutation,
                      which + ": column " + std::to_string(col + 1) + " has ≥2 nonzeros");
        }
        if (row_used[row]) {
          throw Error(ErrorKind::NotGeneralizedPermutation,
                      which + ": row " + std::to_string(row + 1) + " has ≥2 nonzeros");
        }
        row_of_col[col] = row;
        row_used[row] = true;
      }
    }
    // Complete the permutation over zero columns with the unused rows.
    std::size_t next_free = 0;
    std::vector<std::size_t> image(d);
    std::vector<cplx> coeffs(d, 0.0);
    for (std::size_t col = 0; col < d; ++col) {
      if (row_of_col[col] != kNone) {
        image[col] = row_of_col[col];
        coeffs[col] = m(row_of_col[col], col);
      } else {
        while (row_used[next_free]) ++next_free;
        image[col] = next_free;
        row_used[next_free] = true;
      }
    }
    parsed.push_back({Permutation(std::move(image)), std::move(coeffs)});
  }
  return SioChannel::from_kraus(std::move(parsed));
}

DensityMatrix apply(const SioChannel& phi, const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  if (phi.dim() != d) {
    throw Error(ErrorKind::DimMismatch, "channel acts on dimension " + std::to_string(phi.dim()) +
                                            ", state has dimension " + std::to_string(d));
  }
  CMatrix out(d);
  for (const auto& k : phi.kraus()) {
    for (std::size_t i = 0; i < d; ++i) {
      if (k.coeffs[i] == cplx{}) continue;
      for (std::size_t j = 0; j < d; ++j) {
        out(k.f(i), k.f(j)) += k.coeffs[i] * std::conj(k.coeffs[j]) * rho(i, j);
      }
    }
  }
  return DensityMatrix::unchecked((out + out.adjoint()) * cplx{0.5});
}

SioChannel compose(const SioChannel& outer, const SioChannel& inner) {
  if (outer.dim() != inner.dim()) {
    throw Error(ErrorKind::DimMismatch, "compose: channels act on different dimensions");
  }
  const std::size_t d = outer.dim();
  std::vector<SioKraus> product;
  for (const auto& k : outer.kraus()) {
    for (const auto& l : inner.kraus()) {
      SioKraus kl{compose(k.f, l.f), std::vector<cplx>(d)};
      for (std::size_t i = 0; i < d; ++i) kl.coeffs[i] = k.coeffs[l.f(i)] * l.coeffs[i];
      if (!kl.is_zero()) product.push_back(std::move(kl));
    }
  }
  return SioChannel::from_kraus(std::move(product));
}

SioChannel local_bit_flip(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "local_bit_flip: q = " + std::to_string(q) + " ∉ [0, 1]");
  }
  const double keep = 1.0 - q / 2.0;
  const double cross = std::sqrt(q / 2.0 * (1.0 - q / 2.0));
  const double both = q / 2.0;

  const CMatrix sx{{0, 1}, {1, 0}};
  const CMatrix id2 = CMatrix::identity(2);

  std::vector<CMatrix> kraus;
  const auto push = [&](double scale, const CMatrix& m) {
    if (scale > kCoeffZeroTol) kraus.push_back(m * cplx{scale});
  };
  push(keep, CMatrix::identity(4));
  push(cross, kron(id2, sx));
  push(cross, kron(sx, id2));
  push(both, kron(sx, sx));
  return validate_sio(kraus);
}

SioChannel qubit_freeze_channel(double delta, double theta1, double theta2) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::OutOfRange,
                "qubit_freeze_channel: δ = " + std::to_string(delta) + " ∉ (0, 1)");
  }
  const double a = std::sqrt(delta), b = std::sqrt(1.0 - delta);
  SioKraus k1{Permutation::identity(2), {a * std::polar(1.0, theta1), a}};
  SioKraus k2{Permutation({1, 0}), {b * std::polar(1.0, theta2), b}};
  return SioChannel::from_kraus({std::move(k1), std::move(k2)});
}

SioChannel unitary_channel(const Permutation& f, std::span<const double> phases) {
  if (phases.size() != f.dim()) {
    throw Error(ErrorKind::DimMismatch, "unitary_channel: one phase per index required");
  }
  SioKraus k{f, std::vector<cplx>(f.dim())};
  for (std::size_t i = 0; i < f.dim(); ++i) k.coeffs[i] = std::polar(1.0, phases[i]);
  return SioChannel::from_kraus({std::move(k)});
}

}  // namespace cohfreeze
