#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace cohfreeze {

using cplx = std::complex<double>;

/// Default entrywise tolerance for matrix equality, Hermiticity and unitarity.
inline constexpr double kMatrixTol = 1e-10;

/// Dense square complex matrix, row-major. Element access is 0-based; every
/// user-facing report (JSON, CLI, error text) prints indices 1-based.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim);
  CMatrix(std::size_t dim, std::vector<cplx> entries);
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t dim);
  static CMatrix diagonal(std::span<const cplx> diag);
  static CMatrix diagonal(std::span<const double> diag);

  std::size_t dim() const noexcept { return dim_; }

  cplx& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const cplx& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const cplx> entries() const noexcept { return data_; }

  CMatrix adjoint() const;
  cplx trace() const;
  std::vector<cplx> diag() const;

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(cplx scalar);

  friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
  friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
  friend CMatrix operator*(CMatrix lhs, cplx scalar) { return lhs *= scalar; }
  friend CMatrix operator*(cplx scalar, CMatrix rhs) { return rhs *= scalar; }
  friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

/// max_{ij} |a_ij - b_ij|. Throws DimMismatch on differing sizes.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
bool approx_equal(const CMatrix& a, const CMatrix& b, double tol = kMatrixTol);
bool is_hermitian(const CMatrix& m, double tol = kMatrixTol);
bool is_unitary(const CMatrix& m, double tol = kMatrixTol);
double frobenius_norm(const CMatrix& m);
CMatrix kron(const CMatrix& a, const CMatrix& b);

std::string to_string(const CMatrix& m, int precision = 6);

/// Bijection of {0,…,d-1}. Printed and serialized 1-based.
class Permutation {
 public:
  Permutation() = default;
  /// Throws InvalidPermutation unless `image` is a bijection of {0,…,d-1}.
  explicit Permutation(std::vector<std::size_t> image);

  static Permutation identity(std::size_t dim);
  /// Accepts the 1-based notation used in reports and JSON files.
  static Permutation from_one_based(std::span<const long long> image);

  std::size_t dim() const noexcept { return map_.size(); }
  std::size_t operator()(std::size_t i) const { return map_[i]; }
  std::span<const std::size_t> image() const noexcept { return map_; }
  std::vector<long long> one_based() const;

  Permutation inverse() const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> map_;
};

/// (p ∘ q)(i) = p(q(i)).
Permutation compose(const Permutation& p, const Permutation& q);

/// Every permutation of {0,…,d-1} in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t dim);

std::string to_string(const Permutation& p);

/// result(p(i), i) = 1, zero elsewhere.
CMatrix perm_matrix(const Permutation& p);

/// u · m · u†. Throws NotUnitary if u is not unitary within kMatrixTol.
CMatrix conjugate(const CMatrix& m, const CMatrix& u);

struct HermitianEigen {
  std::vector<double> values;  // descending
  CMatrix vectors;             // column k is the eigenvector of values[k]
};

/// Cyclic complex Jacobi. Stops when the off-diagonal Frobenius norm drops
/// below 1e-12 (scaled by ‖m‖_F when that exceeds 1) or after 100·d² sweeps.
/// Throws NotHermitian if ‖m − m†‖_max > 1e-10.
HermitianEigen herm_eigen(const CMatrix& m);
std::vector<double> herm_eigenvalues(const CMatrix& m);

}  // namespace cohfreeze
