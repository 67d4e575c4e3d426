#include "cohfreeze/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "cohfreeze/error.hpp"

namespace cohfreeze {

CMatrix::CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

CMatrix::CMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) {
    throw Error(ErrorKind::DimMismatch, "matrix of dim " + std::to_string(dim_) + " needs " +
                                            std::to_string(dim_ * dim_) + " entries, got " +
                                            std::to_string(data_.size()));
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) {
      throw Error(ErrorKind::DimMismatch, "matrix literal is not square");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> diag) {
  CMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> diag) {
  CMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

std::vector<cplx> CMatrix::diag() const {
  std::vector<cplx> d(dim_);
  for (std::size_t i = 0; i < dim_; ++i) d[i] = (*this)(i, i);
  return d;
}

namespace {

void require_same_dim(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimMismatch, "dimension " + std::to_string(a.dim()) + " vs " +
                                            std::to_string(b.dim()));
  }
}

}  // namespace

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx scalar) {
  for (auto& x : data_) x *= scalar;
  return *this;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  require_same_dim(lhs, rhs);
  const std::size_t d = lhs.dim();
  CMatrix out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const cplx a = lhs(i, k);
      if (a == cplx{}) continue;
      for (std::size_t j = 0; j < d; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
  return worst;
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double tol) {
  return a.dim() == b.dim() && max_abs_diff(a, b) <= tol;
}

bool is_hermitian(const CMatrix& m, double tol) { return max_abs_diff(m, m.adjoint()) <= tol; }

bool is_unitary(const CMatrix& m, double tol) {
  return max_abs_diff(m * m.adjoint(), CMatrix::identity(m.dim())) <= tol;
}

double frobenius_norm(const CMatrix& m) {
  double s = 0.0;
  for (const auto& x : m.entries()) s += std::norm(x);
  return std::sqrt(s);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t da = a.dim(), db = b.dim();
  CMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = a(i, j) * b(k, l);
  return out;
}

std::string to_string(const CMatrix& m, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << (i == 0 ? "[[" : " [");
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const cplx z = m(i, j);
      if (j > 0) os << ", ";
      os << z.real();
      if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    }
    os << (i + 1 == m.dim() ? "]]" : "]\n");
  }
  return os.str();
}

Permutation::Permutation(std::vector<std::size_t> image) : map_(std::move(image)) {
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (map_[i] >= map_.size() || seen[map_[i]]) {
      throw Error(ErrorKind::InvalidPermutation,
                  "not a bijection of {1.." + std::to_string(map_.size()) + "} at position " +
                      std::to_string(i + 1));
    }
    seen[map_[i]] = true;
  }
}

Permutation Permutation::identity(std::size_t dim) {
  std::vector<std::size_t> image(dim);
  std::iota(image.begin(), image.end(), std::size_t{0});
  return Permutation(std::move(image));
}

Permutation Permutation::from_one_based(std::span<const long long> image) {
  std::vector<std::size_t> zero_based(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (image[i] < 1 || image[i] > static_cast<long long>(image.size())) {
      throw Error(ErrorKind::InvalidPermutation,
                  "entry " + std::to_string(image[i]) + " outside 1.." +
                      std::to_string(image.size()));
    }
    zero_based[i] = static_cast<std::size_t>(image[i] - 1);
  }
  return Permutation(std::move(zero_based));
}

std::vector<long long> Permutation::one_based() const {
  std::vector<long long> out(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) out[i] = static_cast<long long>(map_[i]) + 1;
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < map_.size(); ++i)
    if (map_[i] != i) return false;
  return true;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.dim() != q.dim()) {
    throw Error(ErrorKind::DimMismatch, "composing permutations of different size");
  }
  std::vector<std::size_t> image(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) image[i] = p(q(i));
  return Permutation(std::move(image));
}

std::vector<Permutation> all_permutations(std::size_t dim) {
  std::vector<std::size_t> image(dim);
  std::iota(image.begin(), image.end(), std::size_t{0});
  std::vector<Permutation> out;
  do {
    out.emplace_back(image);
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

std::string to_string(const Permutation& p) {
  std::ostringstream os;
  os << "(";
  const auto img = p.one_based();
  for (std::size_t i = 0; i < img.size(); ++i) os << (i ? " " : "") << img[i];
  os << ")";
  return os.str();
}

CMatrix perm_matrix(const Permutation& p) {
  CMatrix m(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) m(p(i), i) = 1.0;
  return m;
}

CMatrix conjugate(const CMatrix& m, const CMatrix& u) {
  if (m.dim() != u.dim()) {
    throw Error(ErrorKind::DimMismatch, "conjugate: matrix and unitary differ in size");
  }
  if (!is_unitary(u)) {
    throw Error(ErrorKind::NotUnitary, "conjugate: ‖UU† − I‖_max = " +
                                           std::to_string(max_abs_diff(u * u.adjoint(),
                                                                       CMatrix::identity(u.dim()))));
  }
  return u * m * u.adjoint();
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

HermitianEigen herm_eigen(const CMatrix& m) {
  const double asym = max_abs_diff(m, m.adjoint());
  if (asym > kMatrixTol) {
    throw Error(ErrorKind::NotHermitian, "‖m − m†‖_max = " + std::to_string(asym));
  }
  const std::size_t d = m.dim();
  // Symmetrize so rounding in the input does not leak into the rotations.
  CMatrix a = (m + m.adjoint()) * cplx{0.5};
  CMatrix v = CMatrix::identity(d);

  const double threshold = 1e-12 * std::max(1.0, frobenius_norm(a));
  const std::size_t max_sweeps = 100 * d * d;
  for (std::size_t sweep = 0; sweep < max_sweeps && off_diagonal_norm(a) > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        // Phase e^{-iφ} on column q makes a_pq real, then a real Jacobi
        // rotation annihilates it. J = diag-phase · rotation.
        const cplx phase = std::conj(apq) / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx jpp = c;
        const cplx jpq = s;
        const cplx jqp = -s * phase;
        const cplx jqq = c * phase;

        for (std::size_t k = 0; k < d; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < d; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });

  HermitianEigen out{std::vector<double>(d), CMatrix(d)};
  for (std::size_t k = 0; k < d; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t row = 0; row < d; ++row) out.vectors(row, k) = v(row, order[k]);
  }
  return out;
}

std::vector<double> herm_eigenvalues(const CMatrix& m) { return herm_eigen(m).values; }

}  // namespace cohfreeze
