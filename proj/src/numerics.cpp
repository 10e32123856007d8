#include "ia3/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ia3/error.hpp"

namespace ia3 {

namespace {

using Svd = Eigen::JacobiSVD<ComplexMatrix>;

int rank_from_singular_values(const Eigen::VectorXd& sv, double rel_tol) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = rel_tol * sv(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

// Columns [rank, n) of a unitary factor, reversed so that directions with the
// smallest singular values come first.
ComplexMatrix trailing_columns_reversed(const ComplexMatrix& unitary, int rank) {
  const Eigen::Index n = unitary.cols();
  ComplexMatrix out(unitary.rows(), n - rank);
  for (Eigen::Index c = 0; c < n - rank; ++c) out.col(c) = unitary.col(n - 1 - c);
  return out;
}

}  // namespace

double Tolerance::rank_threshold(Eigen::Index rows, Eigen::Index cols) const {
  if (relative_rank_tol) return *relative_rank_tol;
  return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() * 4096.0;
}

void Tolerance::validate() const {
  auto in_range = [](double v) { return std::isfinite(v) && v > 0.0 && v < 1.0; };
  if (relative_rank_tol && !in_range(*relative_rank_tol))
    throw Error(ErrorKind::InvalidInput, "rank tolerance must lie in (0, 1)");
  if (!in_range(leakage_tol))
    throw Error(ErrorKind::InvalidInput, "leakage tolerance must lie in (0, 1)");
}

void require_finite(const ComplexMatrix& a, const char* what) {
  if (a.size() == 0)
    throw Error(ErrorKind::InvalidInput, std::string(what) + " is empty");
  if (!a.allFinite())
    throw Error(ErrorKind::InvalidInput, std::string(what) + " has non-finite entries");
}

int numerical_rank(const ComplexMatrix& a, const Tolerance& tol) {
  require_finite(a);
  Svd svd(a);
  return rank_from_singular_values(svd.singularValues(), tol.rank_threshold(a.rows(), a.cols()));
}

ComplexMatrix right_null_basis(const ComplexMatrix& a, const Tolerance& tol) {
  require_finite(a);
  Svd svd(a, Eigen::ComputeFullV);
  const int r = rank_from_singular_values(svd.singularValues(), tol.rank_threshold(a.rows(), a.cols()));
  return trailing_columns_reversed(svd.matrixV(), r);
}

ComplexMatrix left_null_basis(const ComplexMatrix& a, const Tolerance& tol) {
  require_finite(a);
  Svd svd(a, Eigen::ComputeFullU);
  const int r = rank_from_singular_values(svd.singularValues(), tol.rank_threshold(a.rows(), a.cols()));
  return trailing_columns_reversed(svd.matrixU(), r);
}

ComplexMatrix hconcat(std::span<const ComplexMatrix> blocks) {
  if (blocks.empty()) throw Error(ErrorKind::InvalidInput, "hconcat of zero blocks");
  const Eigen::Index rows = blocks.front().rows();
  Eigen::Index cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows)
      throw Error(ErrorKind::DimensionMismatch,
                  "hconcat: row counts differ (" + std::to_string(rows) + " vs " +
                      std::to_string(b.rows()) + ")");
    cols += b.cols();
  }
  ComplexMatrix out(rows, cols);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    out.middleCols(at, b.cols()) = b;
    at += b.cols();
  }
  return out;
}

int span_dimension(std::span<const ComplexMatrix> blocks, const Tolerance& tol) {
  return numerical_rank(hconcat(blocks), tol);
}

bool spans_equal(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol) {
  if (a.rows() != b.rows())
    throw Error(ErrorKind::DimensionMismatch, "spans_equal: row counts differ");
  const int ra = numerical_rank(a, tol);
  const int rb = numerical_rank(b, tol);
  if (ra != a.cols() || rb != b.cols())
    throw Error(ErrorKind::DegenerateSpan, "spans_equal: input lacks full column rank");
  const ComplexMatrix pair[] = {a, b};
  const int joint = span_dimension(pair, tol);
  return joint == ra && joint == rb;
}

EigenDecomposition general_eig(const ComplexMatrix& a) {
  if (a.rows() != a.cols())
    throw Error(ErrorKind::DimensionMismatch, "general_eig: matrix is not square");
  require_finite(a);

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::NumericalFailure, "general_eig: eigensolver did not converge");

  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  const Eigen::Index n = a.rows();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    const Complex lx = values(x), ly = values(y);
    if (std::abs(lx) != std::abs(ly)) return std::abs(lx) > std::abs(ly);
    if (lx.real() != ly.real()) return lx.real() > ly.real();
    return lx.imag() > ly.imag();
  });

  EigenDecomposition out;
  out.eigenvalues.reserve(order.size());
  out.eigenvectors.resize(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const Eigen::Index src = order[static_cast<std::size_t>(c)];
    out.eigenvalues.push_back(values(src));
    const double norm = vectors.col(src).norm();
    if (!(norm > 0.0))
      throw Error(ErrorKind::NumericalFailure, "general_eig: zero eigenvector");
    out.eigenvectors.col(c) = vectors.col(src) / norm;
  }
  return out;
}

double relative_norm(double num, double den) noexcept {
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace ia3
