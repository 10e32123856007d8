#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "ia3/network.hpp"
#include "ia3/numerics.hpp"

namespace ia3 {

enum class Method { Eigen, NullSpace, Infeasible };

std::string_view to_string(Method m) noexcept;

struct FeasibilityVerdict {
  bool feasible = false;
  Method method = Method::Infeasible;
  int d_max = 0;
  int eta = 0;  // 3Kd when feasible
};

/// Largest per-user stream count the scheme supports for N < M <= KN:
/// floor(M / (3K-1)) when M == KN, additionally capped by 3(KN-M) when M < KN.
int max_streams_per_user(int M, int N, int K);

/// Throws Configuration for configs outside N < M <= KN, K > 1, d >= 1.
FeasibilityVerdict check_feasibility(const NetworkConfig& config);

/// check_feasibility, throwing Configuration with the violated bound
/// (e.g. "d exceeds floor(M/(3K-1))=3") when d is too large.
FeasibilityVerdict require_feasible(const NetworkConfig& config);

struct ChainedMatrices {
  ComplexMatrix E;  // (G31)^-1 G32 (G12)^-1 G13 (G23)^-1 G21
  ComplexMatrix F;  // (G32)^-1 G31
  ComplexMatrix C;  // (G23)^-1 G21
};

/// Requires M == KN. Throws DegenerateChannel if a combined channel is singular.
ChainedMatrices chained_matrices(const ChannelSet& ch);

/// Transmit precoders for all 3K users.
struct PrecoderSolution {
  NetworkConfig config;
  Method method = Method::Eigen;
  /// Vertical stack of cell i's K precoders before column normalization (KN x d).
  std::array<ComplexMatrix, kCells> combined_W;
  /// N x d precoder of user j in cell i, unit-norm columns, at index i*K + j.
  std::vector<ComplexMatrix> per_user_W;

  const ComplexMatrix& w(int cell, int user) const {
    return per_user_W.at(static_cast<std::size_t>(cell * config.K + user));
  }
};

/// Splits each combined_W[i] into K blocks of N rows. With `normalize`, every
/// column of every block is scaled to unit norm.
std::vector<ComplexMatrix> split_per_user(const std::array<ComplexMatrix, kCells>& combined,
                                          const NetworkConfig& config, bool normalize);

/// Same solution with per_user_W replaced by the raw (unnormalized) blocks.
PrecoderSolution without_normalization(const PrecoderSolution& sol);

/// M == KN branch: first d eigenvectors of E for cell 1, then F and C for
/// cells 2 and 3.
PrecoderSolution design_precoders_eigen(const ChannelSet& ch, int d);

/// M < KN branch: first d columns of the right null space of the stacked
/// interference matrix.
PrecoderSolution design_precoders_nullspace(const ChannelSet& ch, int d);

/// Dispatches on check_feasibility(ch.config()).method; throws Configuration
/// for infeasible configs.
PrecoderSolution design_precoders(const ChannelSet& ch);

/// [H_bs^{[kj]} W^{[kj]}] over all k != bs, j = 1..K (M x 2Kd).
ComplexMatrix interference_images(const ChannelSet& ch, const PrecoderSolution& sol, int bs);

/// Dimension of the inter-cell interference subspace at `bs`.
int interference_dimension(const ChannelSet& ch, const PrecoderSolution& sol, int bs,
                           const Tolerance& tol = {});

}  // namespace ia3
