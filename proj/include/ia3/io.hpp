#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ia3/metrics.hpp"

namespace ia3 {

/// Shortest round-trip decimal form, '.' separator regardless of locale.
std::string format_double(double v);

/// AlignmentReport as a JSON object. Per-user arrays follow the "users" list
/// (1-based "i,j" labels, cell-major).
std::string report_to_json(const AlignmentReport& report, int indent = 2);

/// One-line summary: "eta=18, dims=[9,9,9], decodable=true".
std::string report_summary(const AlignmentReport& report);

/// {"config": {M,N,K,d}, "seed": u64, "H": {"i,k,j": [[re,im], ...]}} with
/// 1-based keys and row-major entries.
std::string channels_to_json(const ChannelSet& channels);

/// Inverse of channels_to_json. Throws InvalidInput on malformed documents.
ChannelSet channels_from_json(std::string_view text);

/// Header `M,best_K,best_N,best_d,ia_dof,orthogonal_dof`, then one row per M
/// and a trailing `# below_orthogonal=` summary line.
void write_sweep_csv(std::ostream& out, std::span<const DofSweepRow> rows);

/// Header `user_i,user_j,rank,count`, 1-based users, ranks ascending.
void write_rank_csv(std::ostream& out, const RankHistogram& hist);

/// Header `snr_db,sum_rate_bits`; `# slope=` line when a slope is given.
void write_sum_rate_csv(std::ostream& out, std::span<const double> snr_db, std::span<const double> rates,
                        std::optional<double> slope);

}  // namespace ia3
