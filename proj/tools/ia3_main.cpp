// ia3: build, verify and benchmark three-cell uplink interference alignment.
//
// Exit status: 0 success, 1 usage error, 2 configuration/feasibility error,
// 3 numerical failure or failed verification.

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ia3/error.hpp"
#include "ia3/io.hpp"
#include "ia3/metrics.hpp"

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kConfig = 2, kNumeric = 3 };

struct CommonFlags {
  ia3::NetworkConfig config;
  std::uint64_t seed = 1;
  std::optional<double> rank_tol;
  double leakage_tol = ia3::Tolerance::defaults().leakage_tol;
  std::string out;
  std::string format;

  ia3::Tolerance tolerance() const {
    ia3::Tolerance t;
    t.relative_rank_tol = rank_tol;
    t.leakage_tol = leakage_tol;
    t.validate();
    return t;
  }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_config_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--M", f.config.M, "BS antennas")->required();
  cmd->add_option("--N", f.config.N, "MS antennas")->required();
  cmd->add_option("--K", f.config.K, "cell-edge users per cell")->required();
  cmd->add_option("--d", f.config.d, "streams per user")->required();
}

void add_tolerance_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--rank-tol", f.rank_tol, "relative singular-value threshold for rank decisions");
  cmd->add_option("--leakage-tol", f.leakage_tol, "relative leakage bound for decodability");
}

void add_output_flags(CLI::App* cmd, CommonFlags& f, std::string& format, std::vector<std::string> formats) {
  cmd->add_option("--out", f.out, "write results to this file instead of stdout");
  format = formats.front();
  cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
}

void emit(const CommonFlags& f, const std::string& body) {
  if (f.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + f.out);
  file << body;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string report_text(const ia3::AlignmentReport& r) {
  std::ostringstream os;
  os << "config: M=" << r.config.M << " N=" << r.config.N << " K=" << r.config.K << " d=" << r.config.d
     << " seed=" << r.seed << " method=" << ia3::to_string(r.method) << '\n';
  os << "ici leakage: [";
  for (int i = 0; i < ia3::kCells; ++i) os << (i ? "," : "") << ia3::format_double(r.per_bs_ici_leakage[i]);
  os << "]\n";
  const double worst_iui = r.per_user_iui_leakage.empty()
                               ? 0.0
                               : *std::max_element(r.per_user_iui_leakage.begin(), r.per_user_iui_leakage.end());
  os << "max iui leakage: " << ia3::format_double(worst_iui) << '\n';
  if (!r.failed_checks.empty()) {
    os << "failed checks:";
    for (const auto& c : r.failed_checks) os << ' ' << c;
    os << '\n';
  }
  os << ia3::report_summary(r) << '\n';
  return os.str();
}

std::string render_report(const CommonFlags& f, const ia3::AlignmentReport& r) {
  if (f.format == "json") return ia3::report_to_json(r) + "\n";
  return report_text(r);
}

int report_failures(const ia3::AlignmentReport& r) {
  if (r.decodable) return kOk;
  std::cerr << "verification failed:";
  for (const auto& c : r.failed_checks) std::cerr << ' ' << c;
  std::cerr << '\n';
  return kNumeric;
}

int cmd_demo(CommonFlags& f) {
  f.config = {16, 8, 2, 3};
  const auto report = ia3::run_trial(f.config, f.seed, f.tolerance());
  emit(f, render_report(f, report));
  const bool dims_ok = report.per_bs_interference_dim == std::array<int, 3>{9, 9, 9};
  if (!dims_ok && report.decodable) {
    std::cerr << "verification failed: interference-dimension\n";
    return kNumeric;
  }
  return report_failures(report);
}

int cmd_trial(CommonFlags& f, const std::string& load, const std::string& dump) {
  const auto tol = f.tolerance();
  std::optional<ia3::ChannelSet> channels;
  if (!load.empty()) {
    channels = ia3::channels_from_json(read_file(load));
  } else {
    ia3::require_feasible(f.config);
    channels = ia3::generate_channels(f.config, f.seed);
  }
  if (!dump.empty()) {
    std::ofstream file(dump, std::ios::binary);
    if (!file) throw UsageError("cannot open " + dump);
    file << ia3::channels_to_json(*channels) << '\n';
  }
  const auto report = ia3::run_trial(*channels, tol);
  emit(f, render_report(f, report));
  return report_failures(report);
}

int cmd_rank_dist(CommonFlags& f, long trials) {
  if (trials < 1) throw UsageError("--trials must be at least 1");
  const auto hist = ia3::rank_distribution(f.config, trials, f.seed, f.tolerance());
  std::ostringstream os;
  ia3::write_rank_csv(os, hist);
  emit(f, os.str());
  if (hist.failed_trials > 0) {
    std::cerr << hist.failed_trials << " trial(s) failed; first: " << hist.first_failure << '\n';
    return kNumeric;
  }
  return kOk;
}

int cmd_dof_sweep(CommonFlags& f, int m_min, int m_max) {
  if (m_min < 2 || m_min > m_max) throw UsageError("need 2 <= --M-min <= --M-max");
  const auto rows = ia3::dof_sweep(m_min, m_max);
  std::ostringstream os;
  if (f.format == "text") {
    for (const auto& r : rows)
      os << "M=" << r.M << " K=" << r.best_K << " N=" << r.best_N << " d=" << r.best_d << " ia_dof=" << r.ia_dof
         << " orthogonal_dof=" << r.orthogonal_dof << (r.ia_dof < r.orthogonal_dof ? " (below)" : "") << '\n';
  } else {
    ia3::write_sweep_csv(os, rows);
  }
  emit(f, os.str());
  return kOk;
}

// Slope over the top 10 dB of the requested points; falls back to all points
// when the top decade holds fewer than two distinct SNRs.
std::optional<double> top_decade_slope(const std::vector<double>& snr, const std::vector<double>& rate) {
  if (snr.size() < 2) return std::nullopt;
  const double top = *std::max_element(snr.begin(), snr.end());
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < snr.size(); ++k)
    if (snr[k] >= top - 10.0) {
      xs.push_back(snr[k]);
      ys.push_back(rate[k]);
    }
  auto distinct = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return std::unique(v.begin(), v.end()) - v.begin();
  };
  if (distinct(xs) < 2) {
    xs = snr;
    ys = rate;
  }
  if (distinct(xs) < 2) return std::nullopt;
  return ia3::fit_slope(xs, ys);
}

std::vector<double> parse_snr_list(const std::string& text) {
  std::vector<double> values;
  std::size_t at = 0;
  while (at <= text.size()) {
    const std::size_t comma = std::min(text.find(',', at), text.size());
    const std::string item = text.substr(at, comma - at);
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size())
      throw UsageError("--snr: cannot parse '" + item + "' as a number");
    values.push_back(v);
    at = comma + 1;
  }
  return values;
}

int cmd_sum_rate(CommonFlags& f, const std::vector<double>& snr) {
  if (snr.empty()) throw UsageError("--snr needs at least one value");
  const auto state = ia3::solve_trial(f.config, f.seed, f.tolerance());
  std::vector<double> rates;
  rates.reserve(snr.size());
  for (double s : snr) rates.push_back(ia3::sum_rate(state, s));
  std::ostringstream os;
  ia3::write_sum_rate_csv(os, snr, rates, top_decade_slope(snr, rates));
  emit(f, os.str());
  return kOk;
}

int exit_code_for(ia3::ErrorKind kind) {
  switch (kind) {
    case ia3::ErrorKind::Configuration:
    case ia3::ErrorKind::Feasibility: return kConfig;
    case ia3::ErrorKind::InvalidInput: return kUsage;
    default: return kNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-cell uplink interference alignment: construct, verify, benchmark"};
  app.require_subcommand(1);

  CommonFlags flags;
  long trials = 10000;
  int m_min = 5, m_max = 32;
  std::string snr_list;
  std::string load_channels, dump_channels;
  std::string demo_format, trial_format, rank_format, sweep_format, rate_format;

  auto* demo = app.add_subcommand("demo", "motivating example M=16, N=8, K=2, d=3");
  demo->add_option("--seed", flags.seed, "channel seed")->capture_default_str();
  add_tolerance_flags(demo, flags);
  add_output_flags(demo, flags, demo_format, {"text", "json"});

  auto* trial = app.add_subcommand("trial", "one end-to-end trial, AlignmentReport as JSON");
  trial->add_option("--M", flags.config.M, "BS antennas");
  trial->add_option("--N", flags.config.N, "MS antennas");
  trial->add_option("--K", flags.config.K, "cell-edge users per cell");
  trial->add_option("--d", flags.config.d, "streams per user");
  trial->add_option("--seed", flags.seed, "channel seed")->capture_default_str();
  trial->add_option("--load-channels", load_channels, "read channels from a JSON dump");
  trial->add_option("--dump-channels", dump_channels, "write the channel set as JSON");
  add_tolerance_flags(trial, flags);
  add_output_flags(trial, flags, trial_format, {"json", "text"});

  auto* rank = app.add_subcommand("rank-dist", "precoder rank histogram over Monte Carlo trials");
  add_config_flags(rank, flags);
  rank->add_option("--seed", flags.seed, "base seed; trial t uses seed + t")->capture_default_str();
  rank->add_option("--trials", trials, "number of trials")->capture_default_str();
  add_tolerance_flags(rank, flags);
  add_output_flags(rank, flags, rank_format, {"csv"});

  auto* sweep = app.add_subcommand("dof-sweep", "best IA DoF versus the orthogonal baseline per M");
  sweep->add_option("--M-min", m_min, "smallest M")->capture_default_str();
  sweep->add_option("--M-max", m_max, "largest M")->capture_default_str();
  add_output_flags(sweep, flags, sweep_format, {"csv", "text"});

  auto* rate = app.add_subcommand("sum-rate", "sum rate versus SNR and the fitted high-SNR slope");
  add_config_flags(rate, flags);
  rate->add_option("--seed", flags.seed, "channel seed")->capture_default_str();
  rate->add_option("--snr", snr_list, "SNR points in dB, comma separated")->required();
  add_tolerance_flags(rate, flags);
  add_output_flags(rate, flags, rate_format, {"csv"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    for (auto [cmd, format] : {std::pair{demo, &demo_format}, std::pair{trial, &trial_format},
                               std::pair{rank, &rank_format}, std::pair{sweep, &sweep_format},
                               std::pair{rate, &rate_format}})
      if (*cmd) flags.format = *format;

    if (*demo) return cmd_demo(flags);
    if (*trial) {
      const bool have_config = trial->count("--M") && trial->count("--N") && trial->count("--K") &&
                               trial->count("--d");
      if (load_channels.empty() && !have_config)
        throw UsageError("trial needs --M --N --K --d or --load-channels");
      return cmd_trial(flags, load_channels, dump_channels);
    }
    if (*rank) return cmd_rank_dist(flags, trials);
    if (*sweep) return cmd_dof_sweep(flags, m_min, m_max);
    if (*rate) return cmd_sum_rate(flags, parse_snr_list(snr_list));
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ia3::Error& e) {
    std::cerr << ia3::to_string(e.kind()) << " error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
