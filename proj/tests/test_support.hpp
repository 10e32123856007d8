#pragma once

#include <cstdint>
#include <random>

#include "ia3/numerics.hpp"

namespace ia3::test {

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = Complex(g(rng), g(rng));
  return m;
}

// rows x cols matrix of rank `rank` (generically), built as a product.
inline ComplexMatrix random_rank_matrix(Eigen::Index rows, Eigen::Index cols, Eigen::Index rank,
                                        std::uint64_t seed) {
  if (rank == 0) return ComplexMatrix::Zero(rows, cols);
  return random_matrix(rows, rank, seed) * random_matrix(rank, cols, seed ^ 0x9e3779b97f4a7c15ULL);
}

inline double orthonormality_error(const ComplexMatrix& q) {
  if (q.cols() == 0) return 0.0;
  return (q.adjoint() * q - ComplexMatrix::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
}

}  // namespace ia3::test
