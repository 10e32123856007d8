#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ia3/numerics.hpp"

namespace ia3 {

inline constexpr int kCells = 3;

/// Antenna and stream counts of the three-cell uplink.
///
/// M antennas per BS, N per MS, K cell-edge users per cell, d streams per
/// user. Valid configurations satisfy M > N >= 1, K > 1, d >= 1 and M <= K*N.
struct NetworkConfig {
  int M = 0;
  int N = 0;
  int K = 0;
  int d = 0;

  int users_per_network() const noexcept { return kCells * K; }

  /// Throws Configuration naming the violated bound.
  void validate() const;

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

/// All 9K uplink channels H_i^{[kj]} (M x N), i = receiving BS, k = cell of
/// the transmitting user, j = user within that cell. Indices are 0-based here;
/// serialized forms are 1-based.
class ChannelSet {
 public:
  ChannelSet(NetworkConfig config, std::uint64_t seed, std::vector<ComplexMatrix> matrices);

  const NetworkConfig& config() const noexcept { return config_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Channel from user j of cell k to BS i.
  const ComplexMatrix& h(int bs, int cell, int user) const;

  /// Replace a single block. Used by tests that hand-craft channels.
  void set_h(int bs, int cell, int user, ComplexMatrix value);

 private:
  std::size_t flat_index(int bs, int cell, int user) const;

  NetworkConfig config_;
  std::uint64_t seed_;
  std::vector<ComplexMatrix> h_;
};

/// i.i.d. CN(0,1) entries from a 64-bit Mersenne Twister seeded with `seed`.
/// Draw order: bs, then cell, then user, row-major within each matrix, real
/// part before imaginary part.
ChannelSet generate_channels(const NetworkConfig& config, std::uint64_t seed);

/// G^{[bs,cell]} = [H_bs^{[cell,1]} ... H_bs^{[cell,K]}], an M x KN matrix.
ComplexMatrix combine_channels(const ChannelSet& ch, int bs, int cell);

/// The 3M x 3KN block matrix whose block row i carries H_i^{[kj]} for k != i
/// and exact zeros for the BS's own users.
ComplexMatrix stacked_interference_matrix(const ChannelSet& ch);

}  // namespace ia3
