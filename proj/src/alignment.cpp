#include "ia3/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "ia3/error.hpp"

namespace ia3 {

namespace {

ComplexMatrix solve_square(const ComplexMatrix& g, const ComplexMatrix& rhs, const char* name) {
  if (numerical_rank(g) < g.rows())
    throw Error(ErrorKind::DegenerateChannel, std::string("combined channel ") + name + " is singular");
  return g.fullPivLu().solve(rhs);
}

// One step of inverse iteration on the pencil (G13 C, G12 F), whose
// eigenvectors coincide with those of E. E carries three solves worth of
// rounding, the pencil only one, so this tightens the alignment at BS 1.
ComplexVector refine_eigenvector(const ComplexMatrix& a, const ComplexMatrix& b,
                                 const ComplexVector& v, Complex lambda) {
  const ComplexVector x = (a - lambda * b).partialPivLu().solve(b * v);
  const double n = x.norm();
  if (!std::isfinite(n) || n == 0.0) return v;
  return x / n;
}

void require_same_config(const ChannelSet& ch, const PrecoderSolution& sol) {
  if (!(ch.config() == sol.config))
    throw Error(ErrorKind::DimensionMismatch, "precoder solution does not match channel config");
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Eigen: return "eigen";
    case Method::NullSpace: return "nullspace";
    case Method::Infeasible: return "infeasible";
  }
  return "unknown";
}

int max_streams_per_user(int M, int N, int K) {
  if (N < 1 || M <= N || K < 2 || M > K * N)
    throw Error(ErrorKind::Configuration, "stream bound requires N < M <= K*N and K > 1");
  const int by_dimension = M / (3 * K - 1);
  if (M == K * N) return by_dimension;
  return std::min(by_dimension, 3 * (K * N - M));
}

FeasibilityVerdict check_feasibility(const NetworkConfig& config) {
  config.validate();
  FeasibilityVerdict v;
  v.d_max = max_streams_per_user(config.M, config.N, config.K);
  v.feasible = config.d <= v.d_max;
  if (v.feasible) {
    v.method = config.M == config.K * config.N ? Method::Eigen : Method::NullSpace;
    v.eta = kCells * config.K * config.d;
  }
  return v;
}

FeasibilityVerdict require_feasible(const NetworkConfig& config) {
  const auto verdict = check_feasibility(config);
  if (verdict.feasible) return verdict;
  const int by_dimension = config.M / (3 * config.K - 1);
  std::string bound;
  if (config.M == config.K * config.N || by_dimension == verdict.d_max)
    bound = "floor(M/(3K-1))=" + std::to_string(by_dimension);
  else
    bound = "3(KN-M)=" + std::to_string(verdict.d_max);
  throw Error(ErrorKind::Configuration, "d exceeds " + bound);
}

ChainedMatrices chained_matrices(const ChannelSet& ch) {
  const auto& cfg = ch.config();
  if (cfg.M != cfg.K * cfg.N)
    throw Error(ErrorKind::Configuration, "chained matrices need M == K*N");

  const ComplexMatrix g12 = combine_channels(ch, 0, 1);
  const ComplexMatrix g13 = combine_channels(ch, 0, 2);
  const ComplexMatrix g21 = combine_channels(ch, 1, 0);
  const ComplexMatrix g23 = combine_channels(ch, 1, 2);
  const ComplexMatrix g31 = combine_channels(ch, 2, 0);
  const ComplexMatrix g32 = combine_channels(ch, 2, 1);

  ChainedMatrices out;
  out.C = solve_square(g23, g21, "G23");
  out.F = solve_square(g32, g31, "G32");
  const ComplexMatrix inner = solve_square(g12, g13 * out.C, "G12");
  out.E = solve_square(g31, g32 * inner, "G31");
  return out;
}

std::vector<ComplexMatrix> split_per_user(const std::array<ComplexMatrix, kCells>& combined,
                                          const NetworkConfig& config, bool normalize) {
  std::vector<ComplexMatrix> users;
  users.reserve(static_cast<std::size_t>(kCells * config.K));
  for (int i = 0; i < kCells; ++i) {
    const ComplexMatrix& stack = combined[static_cast<std::size_t>(i)];
    if (stack.rows() != config.K * config.N)
      throw Error(ErrorKind::DimensionMismatch, "combined precoder must have K*N rows");
    for (int j = 0; j < config.K; ++j) {
      ComplexMatrix block = stack.middleRows(j * config.N, config.N);
      if (normalize) {
        for (Eigen::Index c = 0; c < block.cols(); ++c) {
          const double n = block.col(c).norm();
          if (!(n > 0.0))
            throw Error(ErrorKind::DegenerateChannel,
                        "precoder column of user [" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + "] vanished");
          block.col(c) /= n;
        }
      }
      users.push_back(std::move(block));
    }
  }
  return users;
}

PrecoderSolution without_normalization(const PrecoderSolution& sol) {
  PrecoderSolution raw = sol;
  raw.per_user_W = split_per_user(sol.combined_W, sol.config, false);
  return raw;
}

PrecoderSolution design_precoders_eigen(const ChannelSet& ch, int d) {
  NetworkConfig cfg = ch.config();
  cfg.d = d;
  const auto verdict = check_feasibility(cfg);
  if (verdict.method != Method::Eigen)
    throw Error(ErrorKind::Configuration,
                "eigen method needs M == K*N and d <= " + std::to_string(verdict.d_max));

  const auto chain = chained_matrices(ch);
  const auto eig = general_eig(chain.E);

  PrecoderSolution sol;
  sol.config = cfg;
  sol.method = Method::Eigen;
  sol.combined_W[0] = eig.eigenvectors.leftCols(d);

  const ComplexMatrix pencil_a = combine_channels(ch, 0, 2) * chain.C;
  const ComplexMatrix pencil_b = combine_channels(ch, 0, 1) * chain.F;
  for (int c = 0; c < d; ++c)
    sol.combined_W[0].col(c) = refine_eigenvector(pencil_a, pencil_b, sol.combined_W[0].col(c),
                                                  eig.eigenvalues[static_cast<std::size_t>(c)]);

  sol.combined_W[1] = chain.F * sol.combined_W[0];
  sol.combined_W[2] = chain.C * sol.combined_W[0];
  sol.per_user_W = split_per_user(sol.combined_W, cfg, true);
  return sol;
}

PrecoderSolution design_precoders_nullspace(const ChannelSet& ch, int d) {
  NetworkConfig cfg = ch.config();
  cfg.d = d;
  const auto verdict = check_feasibility(cfg);
  if (verdict.method != Method::NullSpace)
    throw Error(ErrorKind::Configuration,
                "null-space method needs M < K*N and d <= " + std::to_string(verdict.d_max));

  const ComplexMatrix null = right_null_basis(stacked_interference_matrix(ch));
  if (null.cols() < d)
    throw Error(ErrorKind::DegenerateChannel,
                "stacked interference null space has dimension " + std::to_string(null.cols()) +
                    " < d = " + std::to_string(d));

  const int rows_per_cell = cfg.K * cfg.N;
  PrecoderSolution sol;
  sol.config = cfg;
  sol.method = Method::NullSpace;
  for (int i = 0; i < kCells; ++i)
    sol.combined_W[static_cast<std::size_t>(i)] = null.block(i * rows_per_cell, 0, rows_per_cell, d);
  sol.per_user_W = split_per_user(sol.combined_W, cfg, true);
  return sol;
}

PrecoderSolution design_precoders(const ChannelSet& ch) {
  const auto verdict = require_feasible(ch.config());
  const int d = ch.config().d;
  if (verdict.method == Method::Eigen) return design_precoders_eigen(ch, d);
  return design_precoders_nullspace(ch, d);
}

ComplexMatrix interference_images(const ChannelSet& ch, const PrecoderSolution& sol, int bs) {
  require_same_config(ch, sol);
  const auto& cfg = ch.config();
  std::vector<ComplexMatrix> images;
  images.reserve(static_cast<std::size_t>(2 * cfg.K));
  for (int k = 0; k < kCells; ++k) {
    if (k == bs) continue;
    for (int j = 0; j < cfg.K; ++j) images.push_back(ch.h(bs, k, j) * sol.w(k, j));
  }
  return hconcat(images);
}

int interference_dimension(const ChannelSet& ch, const PrecoderSolution& sol, int bs,
                           const Tolerance& tol) {
  return numerical_rank(interference_images(ch, sol, bs), tol);
}

}  // namespace ia3
