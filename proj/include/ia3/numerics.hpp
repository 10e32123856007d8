#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ia3 {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Thresholds used to turn exact subspace statements into finite-precision
/// checks.
///
/// `relative_rank_tol` multiplies the largest singular value; a singular value
/// counts towards the rank only if it exceeds that product. When unset, the
/// threshold is max(rows, cols) * eps * 4096 for the matrix at hand.
/// `leakage_tol` bounds relative Frobenius-norm interference leakage.
struct Tolerance {
  std::optional<double> relative_rank_tol;
  double leakage_tol = 1e-8;

  /// Relative rank threshold for a rows x cols matrix.
  double rank_threshold(Eigen::Index rows, Eigen::Index cols) const;

  /// Throws InvalidInput unless both tolerances lie in (0, 1).
  void validate() const;

  static Tolerance defaults() { return {}; }
};

struct EigenDecomposition {
  std::vector<Complex> eigenvalues;
  ComplexMatrix eigenvectors;  // unit-norm columns, matching eigenvalues
};

/// Throws InvalidInput if `a` is empty or holds NaN/Inf.
void require_finite(const ComplexMatrix& a, const char* what = "matrix");

/// Count of singular values above tol * sigma_max; 0 for the zero matrix.
int numerical_rank(const ComplexMatrix& a, const Tolerance& tol = {});

/// Orthonormal basis of {x : a x = 0}, smallest singular directions first.
ComplexMatrix right_null_basis(const ComplexMatrix& a, const Tolerance& tol = {});

/// Orthonormal basis of {y : y^H a = 0}, smallest singular directions first.
ComplexMatrix left_null_basis(const ComplexMatrix& a, const Tolerance& tol = {});

/// Horizontal concatenation of equally tall blocks.
ComplexMatrix hconcat(std::span<const ComplexMatrix> blocks);

/// Dimension of the span of all columns of all blocks.
int span_dimension(std::span<const ComplexMatrix> blocks, const Tolerance& tol = {});

/// True iff span(a) == span(b). Both must have full column rank.
bool spans_equal(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol = {});

/// Eigenpairs of a general square matrix, sorted by descending |lambda|,
/// then descending real part, then descending imaginary part.
EigenDecomposition general_eig(const ComplexMatrix& a);

/// Frobenius norm ratio ||num|| / ||den|| with 0/0 reported as 0.
double relative_norm(double num, double den) noexcept;

}  // namespace ia3
