#include "cohfreeze/measures.hpp"

#include <cmath>
#include <string>

#include "cohfreeze/error.hpp"

namespace cohfreeze {

namespace {

constexpr double kEigenFloor = 1e-12;
constexpr double kClampTol = 1e-9;

double clamp_small_negative(double v) { return (v < 0.0 && v > -kClampTol) ? 0.0 : v; }

}  // namespace

std::string_view measure_name(Measure m) { return m == Measure::L1 ? "l1" : "re"; }

Measure parse_measure(std::string_view name) {
  if (name == "l1" || name == "L1") return Measure::L1;
  if (name == "re" || name == "relent" || name == "RelEnt") return Measure::RelEnt;
  throw Error(ErrorKind::ParseError, "unknown measure '" + std::string(name) + "' (use l1|re)");
}

DensityMatrix dephase(const DensityMatrix& rho) {
  CMatrix out(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) out(i, i) = rho(i, i).real();
  return DensityMatrix::unchecked(std::move(out));
}

double entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : herm_eigenvalues(rho.matrix())) {
    if (lambda > kEigenFloor) s -= lambda * std::log2(lambda);
  }
  return clamp_small_negative(s);
}

CoherenceValue c_l1(const DensityMatrix& rho) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j)
      if (i != j) sum += std::abs(rho(i, j));
  return {Measure::L1, sum};
}

CoherenceValue c_re(const DensityMatrix& rho) {
  // The dephased state is diagonal: its entropy is the Shannon entropy of the
  // diagonal, no eigensolve needed.
  double s_diag = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    const double p = rho(i, i).real();
    if (p > kEigenFloor) s_diag -= p * std::log2(p);
  }
  return {Measure::RelEnt, clamp_small_negative(s_diag - entropy(rho))};
}

CoherenceValue coherence(Measure m, const DensityMatrix& rho) {
  return m == Measure::L1 ? c_l1(rho) : c_re(rho);
}

}  // namespace cohfreeze
