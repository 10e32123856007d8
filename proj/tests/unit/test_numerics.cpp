#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "ia3/error.hpp"
#include "ia3/numerics.hpp"
#include "test_support.hpp"

using namespace ia3;
using ia3::test::orthonormality_error;
using ia3::test::random_matrix;
using ia3::test::random_rank_matrix;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected ia3::Error");
  return ErrorKind::Index;
}

ComplexMatrix outer(std::uint64_t seed, int n) {
  return random_matrix(n, 1, seed) * random_matrix(n, 1, seed + 1).adjoint();
}

}  // namespace

TEST_CASE("numerical_rank: identity, zero, outer product") {
  CHECK(numerical_rank(ComplexMatrix::Identity(3, 3)) == 3);
  CHECK(numerical_rank(ComplexMatrix::Zero(4, 4)) == 0);
  CHECK(numerical_rank(outer(42, 5)) == 1);
}

TEST_CASE("numerical_rank rejects bad input") {
  ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  a(1, 0) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK(kind_of([&] { numerical_rank(a); }) == ErrorKind::InvalidInput);
  a(1, 0) = Complex(0.0, std::numeric_limits<double>::infinity());
  CHECK(kind_of([&] { numerical_rank(a); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([&] { numerical_rank(ComplexMatrix(0, 3)); }) == ErrorKind::InvalidInput);
}

TEST_CASE("Tolerance defaults and validation") {
  Tolerance tol;
  CHECK(tol.rank_threshold(16, 12) == doctest::Approx(16 * std::numeric_limits<double>::epsilon() * 4096));
  tol.relative_rank_tol = 1e-6;
  CHECK(tol.rank_threshold(16, 12) == 1e-6);
  CHECK_NOTHROW(tol.validate());
  tol.relative_rank_tol = 0.0;
  CHECK_THROWS_AS(tol.validate(), Error);
  tol.relative_rank_tol = 1.5;
  CHECK_THROWS_AS(tol.validate(), Error);
  Tolerance leak;
  leak.leakage_tol = -1.0;
  CHECK_THROWS_AS(leak.validate(), Error);
}

TEST_CASE("right_null_basis") {
  SUBCASE("full rank square has trivial null space") {
    CHECK(right_null_basis(random_matrix(4, 4, 7)).cols() == 0);
  }
  SUBCASE("wide matrix") {
    const ComplexMatrix a = random_matrix(3, 6, 7);
    const ComplexMatrix n = right_null_basis(a);
    REQUIRE(n.cols() == 3);
    CHECK(n.rows() == 6);
    CHECK(orthonormality_error(n) < 1e-12);
    const double thr = Tolerance{}.rank_threshold(3, 6);
    for (Eigen::Index c = 0; c < n.cols(); ++c)
      CHECK((a * n.col(c)).norm() <= thr * a.operatorNorm() * n.col(c).norm());
  }
  SUBCASE("zero matrix: everything is null") {
    const ComplexMatrix n = right_null_basis(ComplexMatrix::Zero(2, 3));
    CHECK(n.cols() == 3);
    CHECK(orthonormality_error(n) < 1e-12);
  }
  SUBCASE("deterministic") {
    const ComplexMatrix a = random_rank_matrix(5, 8, 2, 3);
    CHECK(right_null_basis(a) == right_null_basis(a));
  }
}

TEST_CASE("left_null_basis") {
  SUBCASE("full rank square") { CHECK(left_null_basis(random_matrix(5, 5, 1)).cols() == 0); }
  SUBCASE("16x9 rank 9 leaves 7 dimensions") {
    const ComplexMatrix a = random_matrix(16, 9, 11);
    const ComplexMatrix y = left_null_basis(a);
    REQUIRE(y.cols() == 7);
    CHECK(orthonormality_error(y) < 1e-12);
    const double thr = Tolerance{}.rank_threshold(16, 9);
    for (Eigen::Index c = 0; c < y.cols(); ++c) CHECK((y.col(c).adjoint() * a).norm() <= thr * a.norm());
  }
  SUBCASE("complement of a line") {
    ComplexMatrix v(3, 1);
    v << Complex(1, 0), Complex(0, 2), Complex(-1, 1);
    const ComplexMatrix y = left_null_basis(v);
    REQUIRE(y.cols() == 2);
    CHECK(orthonormality_error(y) < 1e-12);
    CHECK((y.adjoint() * v).norm() < 1e-14);
  }
}

TEST_CASE("span_dimension") {
  const ComplexMatrix i3 = ComplexMatrix::Identity(3, 3);
  const ComplexMatrix dup[] = {i3, i3};
  CHECK(span_dimension(dup) == 3);

  const ComplexMatrix e1 = i3.col(0), e2 = i3.col(1);
  const ComplexMatrix e12 = e1 + e2;
  const ComplexMatrix dependent[] = {e1, e2, e12};
  CHECK(span_dimension(dependent) == 2);

  std::vector<ComplexMatrix> vecs;
  for (int k = 0; k < 4; ++k) vecs.push_back(random_matrix(8, 1, 3 * 100 + k));
  CHECK(span_dimension(vecs) == 4);

  const ComplexMatrix mismatched[] = {random_matrix(3, 1, 1), random_matrix(4, 1, 2)};
  CHECK(kind_of([&] { span_dimension(mismatched); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("spans_equal") {
  const ComplexMatrix a = random_matrix(6, 2, 5);
  const ComplexMatrix t = random_matrix(2, 2, 55);
  CHECK(spans_equal(a, a * t));
  CHECK(spans_equal(a, 2.0 * a));
  CHECK_FALSE(spans_equal(a, random_matrix(6, 2, 6)));

  const ComplexMatrix deficient = random_rank_matrix(6, 2, 1, 9);
  CHECK(kind_of([&] { spans_equal(a, deficient); }) == ErrorKind::DegenerateSpan);
  CHECK(kind_of([&] { spans_equal(a, random_matrix(5, 2, 1)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("spans_equal behaves as an equivalence on generic instances") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ComplexMatrix a = random_matrix(7, 3, 1000 + s);
    const ComplexMatrix b = a * random_matrix(3, 3, 2000 + s);
    const ComplexMatrix c = b * random_matrix(3, 3, 3000 + s);
    const ComplexMatrix other = random_matrix(7, 3, 4000 + s);
    CHECK(spans_equal(a, a));
    CHECK(spans_equal(a, b) == spans_equal(b, a));
    CHECK((spans_equal(a, b) && spans_equal(b, c) && spans_equal(a, c)));
    CHECK(spans_equal(a, other) == spans_equal(other, a));
    CHECK_FALSE(spans_equal(a, other));
  }
}

TEST_CASE("general_eig: known spectra") {
  SUBCASE("diagonal") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 3.0;
    a(1, 1) = Complex(1, 1);
    const auto eig = general_eig(a);
    CHECK(std::abs(eig.eigenvalues[0] - Complex(3, 0)) < 1e-14);
    CHECK(std::abs(eig.eigenvalues[1] - Complex(1, 1)) < 1e-14);
    // standard basis up to a unit phase
    CHECK(std::abs(std::abs(eig.eigenvectors(0, 0)) - 1.0) < 1e-14);
    CHECK(std::abs(eig.eigenvectors(1, 0)) < 1e-14);
    CHECK(std::abs(std::abs(eig.eigenvectors(1, 1)) - 1.0) < 1e-14);
    CHECK(std::abs(eig.eigenvectors(0, 1)) < 1e-14);
  }
  SUBCASE("rotation: ties broken by imaginary part") {
    ComplexMatrix a(2, 2);
    a << 0.0, -1.0, 1.0, 0.0;
    const auto eig = general_eig(a);
    CHECK(std::abs(eig.eigenvalues[0] - Complex(0, 1)) < 1e-14);
    CHECK(std::abs(eig.eigenvalues[1] - Complex(0, -1)) < 1e-14);
  }
  SUBCASE("non-square") {
    CHECK(kind_of([&] { general_eig(random_matrix(3, 4, 1)); }) == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("general_eig: residuals and ordering on random matrices") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const int n = 2 + static_cast<int>(s % 31);
    const ComplexMatrix a = random_matrix(n, n, 9 + s);
    const auto eig = general_eig(a);
    REQUIRE(eig.eigenvalues.size() == static_cast<std::size_t>(n));
    ComplexMatrix lambda = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) lambda(k, k) = eig.eigenvalues[static_cast<std::size_t>(k)];
    CHECK((a * eig.eigenvectors - eig.eigenvectors * lambda).norm() <= 1e-8 * a.norm());
    for (int k = 0; k < n; ++k) CHECK(std::abs(eig.eigenvectors.col(k).norm() - 1.0) < 1e-12);
    for (int k = 1; k < n; ++k)
      CHECK(std::abs(eig.eigenvalues[k - 1]) >= std::abs(eig.eigenvalues[static_cast<std::size_t>(k)]));
  }
}

TEST_CASE("rank-nullity and orthonormality over constructed-rank matrices") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = dim(rng), cols = dim(rng);
    const int rank = std::uniform_int_distribution<int>(0, std::min(rows, cols))(rng);
    const ComplexMatrix a = random_rank_matrix(rows, cols, rank, 77 + static_cast<std::uint64_t>(trial));
    const int r = numerical_rank(a);
    CHECK(r == rank);
    const ComplexMatrix rn = right_null_basis(a);
    const ComplexMatrix ln = left_null_basis(a);
    CHECK(r + rn.cols() == cols);
    CHECK(r + ln.cols() == rows);
    CHECK(orthonormality_error(rn) < 1e-12);
    CHECK(orthonormality_error(ln) < 1e-12);
  }
}

TEST_CASE("relative_norm 0/0 convention") {
  CHECK(relative_norm(0.0, 0.0) == 0.0);
  CHECK(relative_norm(1.0, 2.0) == 0.5);
  CHECK(std::isinf(relative_norm(1.0, 0.0)));
}
