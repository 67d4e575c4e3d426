#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cohfreeze/linalg.hpp"
#include "cohfreeze/xfreeze.hpp"
#include "helpers.hpp"

using namespace cohfreeze;

namespace {

CMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) {
    m(i, i) = g(rng);
    for (std::size_t j = i + 1; j < d; ++j) {
      m(i, j) = {g(rng), g(rng)};
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

// Roots of det(λI − H) for 3×3 Hermitian H by the trigonometric cubic formula.
std::vector<double> cubic_eigenvalues(const CMatrix& h) {
  const double tr = h.trace().real();
  const double minors = (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0) + h(0, 0) * h(2, 2) -
                         h(0, 2) * h(2, 0) + h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1))
                            .real();
  const double det = (h(0, 0) * (h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1)) -
                      h(0, 1) * (h(1, 0) * h(2, 2) - h(1, 2) * h(2, 0)) +
                      h(0, 2) * (h(1, 0) * h(2, 1) - h(1, 1) * h(2, 0)))
                         .real();
  const double a = -tr, b = minors, c = -det;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double r = 2.0 * std::sqrt(-p / 3.0);
  const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
  const double phi = std::acos(arg) / 3.0;
  std::vector<double> roots;
  for (int k = 0; k < 3; ++k) roots.push_back(r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - a / 3.0);
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("eigenvalues of diagonal and projector inputs") {
    const auto diag = herm_eigenvalues(CMatrix{{0.5, 0}, {0, 0.5}});
    CHECK(diag[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(diag[1] == doctest::Approx(0.5).epsilon(1e-12));
    const auto proj = herm_eigenvalues(CMatrix{{0.5, 0.5}, {0.5, 0.5}});
    CHECK(std::abs(proj[0] - 1.0) < 1e-12);
    CHECK(std::abs(proj[1]) < 1e-12);
  }

  TEST_CASE("3x3 eigenvalues match the cubic formula") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const CMatrix h = random_hermitian(3, rng);
      const auto jacobi = herm_eigenvalues(h);
      const auto cubic = cubic_eigenvalues(h);
      for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(jacobi[k] - cubic[k]) < 1e-8);
    }
  }

  TEST_CASE("eigendecomposition reconstructs and sums to the trace") {
    std::mt19937_64 rng(5);
    for (std::size_t d : {2u, 4u, 7u, 12u, 16u}) {
      const CMatrix h = random_hermitian(d, rng);
      const HermitianEigen e = herm_eigen(h);
      CHECK(std::is_sorted(e.values.begin(), e.values.end(), std::greater<>()));
      CMatrix rebuilt(d);
      double sum = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        sum += e.values[k];
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j)
            rebuilt(i, j) += e.values[k] * e.vectors(i, k) * std::conj(e.vectors(j, k));
      }
      CHECK(max_abs_diff(rebuilt, h) <= 1e-9);
      CHECK(std::abs(sum - h.trace().real()) <= 1e-9);
    }
  }

  TEST_CASE("non-Hermitian input is rejected") {
    CHECK_ERROR_KIND(herm_eigenvalues(CMatrix{{1, 1}, {0, 1}}), ErrorKind::NotHermitian);
  }

  TEST_CASE("permutation matrices") {
    check_matrix_close(perm_matrix(Permutation::identity(3)), CMatrix::identity(3), 0.0);
    check_matrix_close(perm_matrix(Permutation({1, 0})), CMatrix{{0, 1}, {1, 0}}, 0.0);

    // d = 4 pairing: 1↦1, 4↦2, 2↦3, 3↦4.
    const long long image[] = {1, 3, 4, 2};
    const Permutation pi = Permutation::from_one_based(image);
    CHECK(pi == pairing_permutation(4));
    const CMatrix expected{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}};
    check_matrix_close(perm_matrix(pi), expected, 0.0);
    CHECK(is_unitary(perm_matrix(pi)));
  }

  TEST_CASE("perm_matrix is a homomorphism") {
    const auto perms = all_permutations(4);
    CHECK(perms.size() == 24);
    for (const auto& p : perms)
      for (const auto& q : perms)
        CHECK(max_abs_diff(perm_matrix(p) * perm_matrix(q), perm_matrix(compose(p, q))) <= 1e-12);
  }

  TEST_CASE("permutation validation and notation") {
    CHECK_ERROR_KIND(Permutation({0, 0}), ErrorKind::InvalidPermutation);
    CHECK_ERROR_KIND(Permutation({0, 2}), ErrorKind::InvalidPermutation);
    const long long bad[] = {1, 3};
    CHECK_ERROR_KIND(Permutation::from_one_based(bad), ErrorKind::InvalidPermutation);
    const Permutation p({2, 0, 1});
    CHECK(p.one_based() == std::vector<long long>{3, 1, 2});
    CHECK(compose(p, p.inverse()).is_identity());
  }

  TEST_CASE("conjugation") {
    std::mt19937_64 rng(3);
    const CMatrix h = random_hermitian(3, rng);
    check_matrix_close(conjugate(h, CMatrix::identity(3)), h);
    check_matrix_close(conjugate(CMatrix{{0.3, 0}, {0, 0.7}}, perm_matrix(Permutation({1, 0}))),
                       CMatrix{{0.7, 0}, {0, 0.3}});

    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int trial = 0; trial < 20; ++trial) {
      const CMatrix m = random_hermitian(4, rng);
      std::vector<cplx> phases(4);
      for (auto& p : phases) p = std::polar(1.0, angle(rng));
      const CMatrix c = conjugate(m, CMatrix::diagonal(std::span<const cplx>(phases)));
      for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(c(i, i) - m(i, i)) <= 1e-12);
      CHECK(is_hermitian(c));
      CHECK(std::abs(c.trace() - m.trace()) <= 1e-10);
    }
    CHECK_ERROR_KIND(conjugate(h, CMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}), ErrorKind::NotUnitary);
  }

  TEST_CASE("kron and arithmetic") {
    const CMatrix sx{{0, 1}, {1, 0}};
    const CMatrix k = kron(sx, CMatrix::identity(2));
    CHECK(k(0, 2) == cplx{1.0});
    CHECK(k(1, 3) == cplx{1.0});
    CHECK(k(0, 0) == cplx{0.0});
    CHECK_ERROR_KIND(max_abs_diff(CMatrix(2), CMatrix(3)), ErrorKind::DimMismatch);
  }
}
