#pragma once

#include <array>
#include <span>
#include <vector>

#include "ia3/alignment.hpp"

namespace ia3 {

/// Cascaded receive beamformers of all three BSs.
struct ReceiverSolution {
  std::array<ComplexMatrix, kCells> V;  // M x Kd, orthonormal columns
  std::vector<ComplexMatrix> P;         // Kd x d per user, index i*K + j
  std::vector<ComplexMatrix> H_eff;     // d x d per user, index i*K + j

  int users_per_cell() const noexcept { return static_cast<int>(P.size()) / kCells; }
  const ComplexMatrix& p(int bs, int user) const {
    return P.at(static_cast<std::size_t>(bs * users_per_cell() + user));
  }
  const ComplexMatrix& h_eff(int bs, int user) const {
    return H_eff.at(static_cast<std::size_t>(bs * users_per_cell() + user));
  }
};

/// First Kd columns of the left null space of the aligned interference at
/// `bs`. Throws Feasibility if fewer than Kd interference-free dimensions
/// remain.
ComplexMatrix design_ici_eliminator(const ChannelSet& ch, const PrecoderSolution& sol, int bs,
                                    const Tolerance& tol = {});

/// ICI-free channels V^H H_bs^{[bs,j]} W^{[bs,j]} (Kd x d) for every own-cell user.
std::vector<ComplexMatrix> ici_free_channels(const ChannelSet& ch, const PrecoderSolution& sol,
                                             const ComplexMatrix& v, int bs);

/// Zero-forcing against the other K-1 users of the cell: d orthonormal
/// columns from the left null space of their stacked ICI-free channels.
ComplexMatrix design_iui_eliminator(std::span<const ComplexMatrix> ici_free, int target_user,
                                    const Tolerance& tol = {});

/// P^H V^H H_bs^{[bs,user]} W^{[bs,user]}, the d x d post-cascade channel.
ComplexMatrix effective_channel(const ChannelSet& ch, const PrecoderSolution& sol,
                                const ComplexMatrix& v, const ComplexMatrix& p, int bs, int user);

/// V, P and H_eff for all BSs.
ReceiverSolution design_receivers(const ChannelSet& ch, const PrecoderSolution& sol,
                                  const Tolerance& tol = {});

struct LeakageReport {
  std::array<double, kCells> ici{};  // ||V^H ICI||_F / ||ICI||_F per BS
  std::vector<double> iui;           // ||P^H IUI||_F / ||IUI||_F per user, index i*K + j
};

/// Relative residual interference after the cascade. 0/0 is reported as 0.
LeakageReport end_to_end_leakage(const ChannelSet& ch, const PrecoderSolution& sol,
                                 const ReceiverSolution& rx);

}  // namespace ia3
