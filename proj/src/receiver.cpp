#include "ia3/receiver.hpp"

#include <string>

#include "ia3/error.hpp"

namespace ia3 {

namespace {

std::vector<ComplexMatrix> others(std::span<const ComplexMatrix> all, int skip) {
  std::vector<ComplexMatrix> out;
  out.reserve(all.size());
  for (std::size_t j = 0; j < all.size(); ++j)
    if (static_cast<int>(j) != skip) out.push_back(all[j]);
  return out;
}

}  // namespace

ComplexMatrix design_ici_eliminator(const ChannelSet& ch, const PrecoderSolution& sol, int bs,
                                    const Tolerance& tol) {
  const auto& cfg = sol.config;
  const int wanted = cfg.K * cfg.d;
  const ComplexMatrix null = left_null_basis(interference_images(ch, sol, bs), tol);
  if (null.cols() < wanted)
    throw Error(ErrorKind::Feasibility,
                "BS " + std::to_string(bs + 1) + " has " + std::to_string(null.cols()) +
                    " interference-free dimensions, needs K*d = " + std::to_string(wanted));
  return null.leftCols(wanted);
}

std::vector<ComplexMatrix> ici_free_channels(const ChannelSet& ch, const PrecoderSolution& sol,
                                             const ComplexMatrix& v, int bs) {
  const auto& cfg = sol.config;
  if (v.rows() != cfg.M)
    throw Error(ErrorKind::DimensionMismatch, "ICI eliminator must have M rows");
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(cfg.K));
  for (int j = 0; j < cfg.K; ++j) out.push_back(v.adjoint() * ch.h(bs, bs, j) * sol.w(bs, j));
  return out;
}

ComplexMatrix design_iui_eliminator(std::span<const ComplexMatrix> ici_free, int target_user,
                                    const Tolerance& tol) {
  if (target_user < 0 || target_user >= static_cast<int>(ici_free.size()))
    throw Error(ErrorKind::Index, "target user out of range");
  if (ici_free.size() < 2)
    throw Error(ErrorKind::InvalidInput, "IUI elimination needs at least two users");

  const Eigen::Index rows = ici_free.front().rows();
  const Eigen::Index d = ici_free[static_cast<std::size_t>(target_user)].cols();
  const auto rest = others(ici_free, target_user);
  const ComplexMatrix stack = hconcat(rest);

  const int rank = numerical_rank(stack, tol);
  if (rank != stack.cols())
    throw Error(ErrorKind::DegenerateChannel,
                "other-user ICI-free channels have rank " + std::to_string(rank) + " < " +
                    std::to_string(stack.cols()));
  const ComplexMatrix null = left_null_basis(stack, tol);
  if (null.cols() < d)
    throw Error(ErrorKind::DegenerateChannel,
                "IUI null space has " + std::to_string(null.cols()) + " of " + std::to_string(d) +
                    " required dimensions (" + std::to_string(rows) + " rows)");
  return null.leftCols(d);
}

ComplexMatrix effective_channel(const ChannelSet& ch, const PrecoderSolution& sol,
                                const ComplexMatrix& v, const ComplexMatrix& p, int bs, int user) {
  const ComplexMatrix& w = sol.w(bs, user);
  const ComplexMatrix& h = ch.h(bs, bs, user);
  if (v.rows() != h.rows() || p.rows() != v.cols() || h.cols() != w.rows())
    throw Error(ErrorKind::DimensionMismatch, "effective_channel: incompatible cascade shapes");
  return p.adjoint() * (v.adjoint() * (h * w));
}

ReceiverSolution design_receivers(const ChannelSet& ch, const PrecoderSolution& sol,
                                  const Tolerance& tol) {
  const int K = sol.config.K;
  ReceiverSolution rx;
  rx.P.reserve(static_cast<std::size_t>(kCells * K));
  rx.H_eff.reserve(static_cast<std::size_t>(kCells * K));
  for (int i = 0; i < kCells; ++i) {
    auto& v = rx.V[static_cast<std::size_t>(i)];
    v = design_ici_eliminator(ch, sol, i, tol);
    const auto heff = ici_free_channels(ch, sol, v, i);
    for (int j = 0; j < K; ++j) {
      ComplexMatrix p = design_iui_eliminator(heff, j, tol);
      rx.H_eff.push_back(p.adjoint() * heff[static_cast<std::size_t>(j)]);
      rx.P.push_back(std::move(p));
    }
  }
  return rx;
}

LeakageReport end_to_end_leakage(const ChannelSet& ch, const PrecoderSolution& sol,
                                 const ReceiverSolution& rx) {
  const int K = sol.config.K;
  LeakageReport out;
  out.iui.reserve(static_cast<std::size_t>(kCells * K));
  for (int i = 0; i < kCells; ++i) {
    const ComplexMatrix& v = rx.V[static_cast<std::size_t>(i)];
    const ComplexMatrix ici = interference_images(ch, sol, i);
    out.ici[static_cast<std::size_t>(i)] = relative_norm((v.adjoint() * ici).norm(), ici.norm());

    const auto heff = ici_free_channels(ch, sol, v, i);
    for (int j = 0; j < K; ++j) {
      const ComplexMatrix iui = hconcat(others(heff, j));
      out.iui.push_back(relative_norm((rx.p(i, j).adjoint() * iui).norm(), iui.norm()));
    }
  }
  return out;
}

}  // namespace ia3
