#include "ia3/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include <Eigen/Cholesky>

#include "ia3/error.hpp"

namespace ia3 {

namespace {

template <typename Fn>
auto run_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(stage) + ": " + e.what());
  }
}

std::size_t user_index(int K, int i, int j) { return static_cast<std::size_t>(i * K + j); }

// log det of a Hermitian positive definite matrix.
double log2_det_hpd(const ComplexMatrix& a) {
  Eigen::LLT<ComplexMatrix> llt(a);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::NumericalFailure, "covariance is not positive definite");
  double acc = 0.0;
  const ComplexMatrix& l = llt.matrixLLT();
  for (Eigen::Index k = 0; k < l.rows(); ++k) acc += std::log2(l(k, k).real());
  return 2.0 * acc;
}

}  // namespace

TrialState solve_trial(const ChannelSet& channels, const Tolerance& tol) {
  tol.validate();
  require_feasible(channels.config());

  auto precoders = run_stage("precoder design", [&] { return design_precoders(channels); });
  auto receivers = run_stage("receiver design", [&] { return design_receivers(channels, precoders, tol); });
  return TrialState{channels, std::move(precoders), std::move(receivers)};
}

TrialState solve_trial(const NetworkConfig& config, std::uint64_t seed, const Tolerance& tol) {
  require_feasible(config);
  return solve_trial(generate_channels(config, seed), tol);
}

AlignmentReport evaluate_trial(const TrialState& state, const Tolerance& tol) {
  const auto& ch = state.channels;
  const auto& sol = state.precoders;
  const auto& cfg = sol.config;
  const int aligned_dim = (2 * cfg.K - 1) * cfg.d;

  AlignmentReport r;
  r.config = cfg;
  r.seed = ch.seed();
  r.method = sol.method;

  bool dims_ok = true;
  for (int i = 0; i < kCells; ++i) {
    const int dim = interference_dimension(ch, sol, i, tol);
    r.per_bs_interference_dim[static_cast<std::size_t>(i)] = dim;
    dims_ok = dims_ok && dim == aligned_dim;
  }

  const auto leak = end_to_end_leakage(ch, sol, state.receivers);
  r.per_bs_ici_leakage = leak.ici;
  r.per_user_iui_leakage = leak.iui;

  bool ici_ok = true, iui_ok = true, heff_ok = true;
  for (int i = 0; i < kCells; ++i) {
    const bool cell_clean = leak.ici[static_cast<std::size_t>(i)] <= tol.leakage_tol;
    ici_ok = ici_ok && cell_clean;
    for (int j = 0; j < cfg.K; ++j) {
      const auto u = user_index(cfg.K, i, j);
      r.per_user_W_rank.push_back(numerical_rank(sol.w(i, j), tol));
      const int heff_rank = numerical_rank(state.receivers.h_eff(i, j), tol);
      r.per_user_H_eff_rank.push_back(heff_rank);
      heff_ok = heff_ok && heff_rank == cfg.d;
      const bool user_clean = leak.iui[u] <= tol.leakage_tol;
      iui_ok = iui_ok && user_clean;
      if (cell_clean && user_clean) r.eta_achieved += heff_rank;
    }
  }

  if (!dims_ok) r.failed_checks.emplace_back("interference-dimension");
  if (!ici_ok) r.failed_checks.emplace_back("ici-leakage");
  if (!iui_ok) r.failed_checks.emplace_back("iui-leakage");
  if (!heff_ok) r.failed_checks.emplace_back("effective-channel-rank");
  r.decodable = r.failed_checks.empty();
  return r;
}

AlignmentReport run_trial(const ChannelSet& channels, const Tolerance& tol) {
  return evaluate_trial(solve_trial(channels, tol), tol);
}

AlignmentReport run_trial(const NetworkConfig& config, std::uint64_t seed, const Tolerance& tol) {
  return evaluate_trial(solve_trial(config, seed, tol), tol);
}

int orthogonal_dof(int M, int N, int K) {
  if (N < 1 || M <= N || K < 2 || M > K * N)
    throw Error(ErrorKind::Configuration, "orthogonal baseline requires N < M <= K*N and K > 1");
  return M;
}

DofSweepRow best_ia_dof_for_M(int M, IntRange n_range, IntRange k_range) {
  if (M < 2) throw Error(ErrorKind::Configuration, "M must be at least 2");
  if (n_range.lo > n_range.hi || k_range.lo > k_range.hi)
    throw Error(ErrorKind::Configuration, "empty search range");

  DofSweepRow best;
  best.M = M;
  best.orthogonal_dof = M;
  for (int K = std::max(k_range.lo, 2); K <= k_range.hi; ++K)
    for (int N = std::max(n_range.lo, 1); N <= n_range.hi; ++N) {
      if (!(N < M && M <= K * N)) continue;
      const int d = max_streams_per_user(M, N, K);
      const int dof = kCells * K * d;
      if (dof > best.ia_dof) {  // strict: earlier (smaller K, then N) wins ties
        best.best_K = K;
        best.best_N = N;
        best.best_d = d;
        best.ia_dof = dof;
      }
    }
  return best;
}

DofSweepRow best_ia_dof_for_M(int M) { return best_ia_dof_for_M(M, {1, M - 1}, {2, 10}); }

std::vector<DofSweepRow> dof_sweep(int m_min, int m_max) {
  if (m_min < 2 || m_min > m_max)
    throw Error(ErrorKind::Configuration, "sweep needs 2 <= M_min <= M_max");
  std::vector<DofSweepRow> rows;
  for (int M = m_min; M <= m_max; ++M) rows.push_back(best_ia_dof_for_M(M));
  return rows;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("IA3_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RankHistogram rank_distribution(const NetworkConfig& config, long trials, std::uint64_t base_seed,
                                const Tolerance& tol, unsigned threads) {
  if (trials < 1) throw Error(ErrorKind::InvalidInput, "trials must be at least 1");
  tol.validate();
  require_feasible(config);

  const std::size_t users = static_cast<std::size_t>(kCells * config.K);
  const unsigned workers = static_cast<unsigned>(
      std::min<long>(trials, threads == 0 ? default_thread_count() : threads));

  struct Partial {
    std::vector<std::map<int, long>> counts;
    long failed = 0;
    long first_failed_trial = std::numeric_limits<long>::max();
    std::string first_failure;
  };
  std::vector<Partial> partials(workers);

  auto work = [&](unsigned w) {
    Partial& part = partials[w];
    part.counts.resize(users);
    for (long t = w; t < trials; t += workers) {
      try {
        const auto ch = generate_channels(config, base_seed + static_cast<std::uint64_t>(t));
        const auto sol = design_precoders(ch);
        for (std::size_t u = 0; u < users; ++u) ++part.counts[u][numerical_rank(sol.per_user_W[u], tol)];
      } catch (const Error& e) {
        ++part.failed;
        if (t < part.first_failed_trial) {
          part.first_failed_trial = t;
          part.first_failure = "trial " + std::to_string(t) + ": " + e.what();
        }
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
  }

  RankHistogram out;
  out.config = config;
  out.trials = trials;
  out.base_seed = base_seed;
  out.counts.resize(users);
  long first = std::numeric_limits<long>::max();
  for (const auto& part : partials) {
    for (std::size_t u = 0; u < users; ++u)
      for (const auto& [rank, n] : part.counts[u]) out.counts[u][rank] += n;
    out.failed_trials += part.failed;
    if (part.first_failed_trial < first) {
      first = part.first_failed_trial;
      out.first_failure = part.first_failure;
    }
  }
  return out;
}

double sum_rate(const TrialState& state, double snr_db) {
  const auto& ch = state.channels;
  const auto& sol = state.precoders;
  const auto& rx = state.receivers;
  const auto& cfg = sol.config;
  const double power = std::pow(10.0, snr_db / 10.0) / cfg.d;  // per stream, unit noise
  if (!(power >= 0.0) || !std::isfinite(power))
    throw Error(ErrorKind::InvalidInput, "SNR must be finite");

  const ComplexMatrix eye = ComplexMatrix::Identity(cfg.d, cfg.d);
  double total = 0.0;
  for (int i = 0; i < kCells; ++i) {
    const ComplexMatrix& v = rx.V[static_cast<std::size_t>(i)];
    for (int j = 0; j < cfg.K; ++j) {
      const ComplexMatrix combiner = (v * rx.p(i, j)).adjoint();  // d x M
      ComplexMatrix noise_plus_interference = eye;
      for (int k = 0; k < kCells; ++k)
        for (int u = 0; u < cfg.K; ++u) {
          if (k == i && u == j) continue;
          const ComplexMatrix t = combiner * (ch.h(i, k, u) * sol.w(k, u));
          noise_plus_interference += power * t * t.adjoint();
        }
      const ComplexMatrix& s = rx.h_eff(i, j);
      const ComplexMatrix received = noise_plus_interference + power * s * s.adjoint();
      total += log2_det_hpd(received) - log2_det_hpd(noise_plus_interference);
    }
  }
  return total;
}

double sum_rate(const NetworkConfig& config, std::uint64_t seed, double snr_db, const Tolerance& tol) {
  return sum_rate(solve_trial(config, seed, tol), snr_db);
}

double fit_slope(std::span<const double> snr_db, std::span<const double> rates) {
  if (snr_db.size() != rates.size())
    throw Error(ErrorKind::DimensionMismatch, "fit_slope: length mismatch");
  if (snr_db.size() < 2) throw Error(ErrorKind::InvalidInput, "fit_slope needs two points");

  const double to_log2 = 1.0 / (10.0 * std::log10(2.0));
  const double n = static_cast<double>(snr_db.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < snr_db.size(); ++k) {
    mx += snr_db[k] * to_log2;
    my += rates[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < snr_db.size(); ++k) {
    const double dx = snr_db[k] * to_log2 - mx;
    sxy += dx * (rates[k] - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw Error(ErrorKind::InvalidInput, "fit_slope needs distinct SNR values");
  return sxy / sxx;
}

}  // namespace ia3
