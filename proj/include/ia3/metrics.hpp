#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ia3/alignment.hpp"
#include "ia3/receiver.hpp"

namespace ia3 {

/// Everything measured on one channel draw.
struct AlignmentReport {
  NetworkConfig config;
  std::uint64_t seed = 0;
  Method method = Method::Infeasible;
  std::array<int, kCells> per_bs_interference_dim{};
  std::array<double, kCells> per_bs_ici_leakage{};
  std::vector<double> per_user_iui_leakage;  // index i*K + j
  std::vector<int> per_user_W_rank;          // index i*K + j
  std::vector<int> per_user_H_eff_rank;      // index i*K + j
  int eta_achieved = 0;
  bool decodable = false;
  std::vector<std::string> failed_checks;  // empty iff decodable
};

/// Channels, precoders and receivers of one solved draw.
struct TrialState {
  ChannelSet channels;
  PrecoderSolution precoders;
  ReceiverSolution receivers;
};

/// Generates channels for `seed` and runs both phases. Errors from each stage
/// are rethrown with the stage name prefixed.
TrialState solve_trial(const NetworkConfig& config, std::uint64_t seed, const Tolerance& tol = {});
TrialState solve_trial(const ChannelSet& channels, const Tolerance& tol = {});

/// Measures dimensions, leakages and ranks of a solved draw.
AlignmentReport evaluate_trial(const TrialState& state, const Tolerance& tol = {});

/// solve_trial followed by evaluate_trial. Throws Configuration for
/// infeasible configs.
AlignmentReport run_trial(const NetworkConfig& config, std::uint64_t seed, const Tolerance& tol = {});
AlignmentReport run_trial(const ChannelSet& channels, const Tolerance& tol = {});

/// Interference-free streams available with per-cell time sharing: M.
int orthogonal_dof(int M, int N, int K);

struct IntRange {
  int lo = 0;
  int hi = 0;  // inclusive
};

struct DofSweepRow {
  int M = 0;
  int best_K = 0;
  int best_N = 0;
  int best_d = 0;
  int ia_dof = 0;
  int orthogonal_dof = 0;
};

/// Exhaustive search over K and N (with N < M <= KN) for the largest 3K*d_max.
/// Ties go to the smallest K, then the smallest N. A row with ia_dof == 0 means
/// no (K, N) supports a stream.
DofSweepRow best_ia_dof_for_M(int M, IntRange n_range, IntRange k_range);

/// Default ranges N in [1, M-1], K in [2, 10].
DofSweepRow best_ia_dof_for_M(int M);

/// One row per M in [m_min, m_max].
std::vector<DofSweepRow> dof_sweep(int m_min, int m_max);

/// Rank of each user's precoder across Monte Carlo trials.
struct RankHistogram {
  NetworkConfig config;
  long trials = 0;
  std::uint64_t base_seed = 0;
  std::vector<std::map<int, long>> counts;  // per user (index i*K + j): rank -> trials
  long failed_trials = 0;                   // trials that raised an ia3::Error
  std::string first_failure;                // message of the lowest-indexed failed trial
};

/// Trial t uses seed base_seed + t. `threads` == 0 picks IA3_THREADS or the
/// hardware concurrency. Results do not depend on the worker count.
RankHistogram rank_distribution(const NetworkConfig& config, long trials, std::uint64_t base_seed,
                                const Tolerance& tol = {}, unsigned threads = 0);

/// Sum over all 3K users of log2 det(I + (snr/d) H_eff H_eff^H R_z^-1), where
/// R_z is unit noise plus residual interference after the cascade.
double sum_rate(const TrialState& state, double snr_db);
double sum_rate(const NetworkConfig& config, std::uint64_t seed, double snr_db, const Tolerance& tol = {});

/// Least-squares slope of rate versus log2(snr), in bits per doubling of SNR.
double fit_slope(std::span<const double> snr_db, std::span<const double> rates);

/// Worker count from IA3_THREADS, else hardware concurrency (at least 1).
unsigned default_thread_count();

}  // namespace ia3
