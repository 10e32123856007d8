#include "ia3/network.hpp"

#include <cmath>
#include <random>
#include <string>

#include "ia3/error.hpp"

namespace ia3 {

namespace {

void check_cell(int idx, const char* what) {
  if (idx < 0 || idx >= kCells)
    throw Error(ErrorKind::Index, std::string(what) + " index " + std::to_string(idx) +
                                      " outside [0, " + std::to_string(kCells) + ")");
}

}  // namespace

void NetworkConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::Configuration, msg); };
  if (N < 1) fail("N must be at least 1");
  if (M <= N) fail("M must exceed N (M=" + std::to_string(M) + ", N=" + std::to_string(N) + ")");
  if (K < 2) fail("K must be greater than 1");
  if (d < 1) fail("d must be at least 1");
  if (M > K * N)
    fail("M must not exceed K*N (M=" + std::to_string(M) + ", K*N=" + std::to_string(K * N) + ")");
}

ChannelSet::ChannelSet(NetworkConfig config, std::uint64_t seed, std::vector<ComplexMatrix> matrices)
    : config_(config), seed_(seed), h_(std::move(matrices)) {
  config_.validate();
  const auto expected = static_cast<std::size_t>(kCells * kCells * config_.K);
  if (h_.size() != expected)
    throw Error(ErrorKind::DimensionMismatch, "ChannelSet needs " + std::to_string(expected) +
                                                  " matrices, got " + std::to_string(h_.size()));
  for (const auto& m : h_) {
    if (m.rows() != config_.M || m.cols() != config_.N)
      throw Error(ErrorKind::DimensionMismatch, "ChannelSet block is not M x N");
    require_finite(m, "channel matrix");
  }
}

std::size_t ChannelSet::flat_index(int bs, int cell, int user) const {
  check_cell(bs, "bs");
  check_cell(cell, "cell");
  if (user < 0 || user >= config_.K)
    throw Error(ErrorKind::Index, "user index " + std::to_string(user) + " outside [0, K)");
  return static_cast<std::size_t>((bs * kCells + cell) * config_.K + user);
}

const ComplexMatrix& ChannelSet::h(int bs, int cell, int user) const {
  return h_[flat_index(bs, cell, user)];
}

void ChannelSet::set_h(int bs, int cell, int user, ComplexMatrix value) {
  if (value.rows() != config_.M || value.cols() != config_.N)
    throw Error(ErrorKind::DimensionMismatch, "set_h: block is not M x N");
  h_[flat_index(bs, cell, user)] = std::move(value);
}

ChannelSet generate_channels(const NetworkConfig& config, std::uint64_t seed) {
  config.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));

  std::vector<ComplexMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(kCells * kCells * config.K));
  for (int i = 0; i < kCells; ++i)
    for (int k = 0; k < kCells; ++k)
      for (int j = 0; j < config.K; ++j) {
        ComplexMatrix h(config.M, config.N);
        for (int r = 0; r < config.M; ++r)
          for (int c = 0; c < config.N; ++c) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            h(r, c) = Complex(re, im);
          }
        blocks.push_back(std::move(h));
      }
  return ChannelSet(config, seed, std::move(blocks));
}

ComplexMatrix combine_channels(const ChannelSet& ch, int bs, int cell) {
  check_cell(bs, "bs");
  check_cell(cell, "cell");
  const auto& cfg = ch.config();
  ComplexMatrix g(cfg.M, cfg.K * cfg.N);
  for (int j = 0; j < cfg.K; ++j) g.middleCols(j * cfg.N, cfg.N) = ch.h(bs, cell, j);
  return g;
}

ComplexMatrix stacked_interference_matrix(const ChannelSet& ch) {
  const auto& cfg = ch.config();
  const int block_cols = cfg.K * cfg.N;
  ComplexMatrix hbar = ComplexMatrix::Zero(kCells * cfg.M, kCells * block_cols);
  for (int i = 0; i < kCells; ++i)
    for (int k = 0; k < kCells; ++k) {
      if (k == i) continue;
      hbar.block(i * cfg.M, k * block_cols, cfg.M, block_cols) = combine_channels(ch, i, k);
    }
  return hbar;
}

}  // namespace ia3
