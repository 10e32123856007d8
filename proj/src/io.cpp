#include "ia3/io.hpp"

#include <charconv>
#include <ostream>
#include <sstream>

#include "ia3/error.hpp"
#include "json.hpp"

namespace ia3 {

using nlohmann::json;

namespace {

std::string user_label(int a, int b) { return std::to_string(a + 1) + "," + std::to_string(b + 1); }

int require_int(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number_integer())
    throw Error(ErrorKind::InvalidInput, std::string("channel JSON: missing integer '") + key + "'");
  return obj.at(key).get<int>();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string report_to_json(const AlignmentReport& r, int indent) {
  const auto& c = r.config;
  json users = json::array();
  for (int i = 0; i < kCells; ++i)
    for (int j = 0; j < c.K; ++j) users.push_back(user_label(i, j));

  json doc = {
      {"config", {{"M", c.M}, {"N", c.N}, {"K", c.K}, {"d", c.d}}},
      {"seed", r.seed},
      {"method", std::string(to_string(r.method))},
      {"per_bs_interference_dim", r.per_bs_interference_dim},
      {"per_bs_ici_leakage", r.per_bs_ici_leakage},
      {"users", users},
      {"per_user_iui_leakage", r.per_user_iui_leakage},
      {"per_user_W_rank", r.per_user_W_rank},
      {"per_user_H_eff_rank", r.per_user_H_eff_rank},
      {"eta_achieved", r.eta_achieved},
      {"decodable", r.decodable},
      {"failed_checks", r.failed_checks},
  };
  return doc.dump(indent);
}

std::string report_summary(const AlignmentReport& r) {
  std::ostringstream os;
  os << "eta=" << r.eta_achieved << ", dims=[" << r.per_bs_interference_dim[0] << ','
     << r.per_bs_interference_dim[1] << ',' << r.per_bs_interference_dim[2]
     << "], decodable=" << (r.decodable ? "true" : "false");
  return os.str();
}

std::string channels_to_json(const ChannelSet& ch) {
  const auto& c = ch.config();
  json h = json::object();
  for (int i = 0; i < kCells; ++i)
    for (int k = 0; k < kCells; ++k)
      for (int j = 0; j < c.K; ++j) {
        const ComplexMatrix& m = ch.h(i, k, j);
        json entries = json::array();
        for (Eigen::Index r = 0; r < m.rows(); ++r)
          for (Eigen::Index col = 0; col < m.cols(); ++col)
            entries.push_back({m(r, col).real(), m(r, col).imag()});
        h[std::to_string(i + 1) + "," + std::to_string(k + 1) + "," + std::to_string(j + 1)] =
            std::move(entries);
      }
  json doc = {{"config", {{"M", c.M}, {"N", c.N}, {"K", c.K}, {"d", c.d}}},
              {"seed", ch.seed()},
              {"H", std::move(h)}};
  return doc.dump();
}

ChannelSet channels_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, std::string("channel JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("config") || !doc.contains("H") || !doc.contains("seed"))
    throw Error(ErrorKind::InvalidInput, "channel JSON: expected config, seed and H");

  const json& cj = doc.at("config");
  NetworkConfig cfg{require_int(cj, "M"), require_int(cj, "N"), require_int(cj, "K"), require_int(cj, "d")};
  cfg.validate();
  if (!doc.at("seed").is_number_unsigned() && !doc.at("seed").is_number_integer())
    throw Error(ErrorKind::InvalidInput, "channel JSON: seed must be an integer");
  const auto seed = doc.at("seed").get<std::uint64_t>();

  const json& hj = doc.at("H");
  std::vector<ComplexMatrix> blocks;
  for (int i = 0; i < kCells; ++i)
    for (int k = 0; k < kCells; ++k)
      for (int j = 0; j < cfg.K; ++j) {
        const std::string key = std::to_string(i + 1) + "," + std::to_string(k + 1) + "," + std::to_string(j + 1);
        if (!hj.contains(key)) throw Error(ErrorKind::InvalidInput, "channel JSON: missing H[" + key + "]");
        const json& entries = hj.at(key);
        if (!entries.is_array() || entries.size() != static_cast<std::size_t>(cfg.M * cfg.N))
          throw Error(ErrorKind::InvalidInput, "channel JSON: H[" + key + "] must hold M*N entries");
        ComplexMatrix m(cfg.M, cfg.N);
        std::size_t at = 0;
        for (int r = 0; r < cfg.M; ++r)
          for (int col = 0; col < cfg.N; ++col, ++at) {
            const json& e = entries[at];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
              throw Error(ErrorKind::InvalidInput, "channel JSON: entries must be [re, im]");
            m(r, col) = Complex(e[0].get<double>(), e[1].get<double>());
          }
        blocks.push_back(std::move(m));
      }
  return ChannelSet(cfg, seed, std::move(blocks));
}

void write_sweep_csv(std::ostream& out, std::span<const DofSweepRow> rows) {
  out << "M,best_K,best_N,best_d,ia_dof,orthogonal_dof\n";
  std::string below;
  int n_below = 0;
  for (const auto& r : rows) {
    out << r.M << ',' << r.best_K << ',' << r.best_N << ',' << r.best_d << ',' << r.ia_dof << ','
        << r.orthogonal_dof << '\n';
    if (r.ia_dof < r.orthogonal_dof) {
      below += (n_below++ ? "," : "") + std::to_string(r.M);
    }
  }
  out << "# below_orthogonal=" << n_below << " M=[" << below << "]\n";
}

void write_rank_csv(std::ostream& out, const RankHistogram& hist) {
  out << "user_i,user_j,rank,count\n";
  const int K = hist.config.K;
  for (int i = 0; i < kCells; ++i)
    for (int j = 0; j < K; ++j)
      for (const auto& [rank, count] : hist.counts.at(static_cast<std::size_t>(i * K + j)))
        out << i + 1 << ',' << j + 1 << ',' << rank << ',' << count << '\n';
}

void write_sum_rate_csv(std::ostream& out, std::span<const double> snr_db, std::span<const double> rates,
                        std::optional<double> slope) {
  out << "snr_db,sum_rate_bits\n";
  for (std::size_t k = 0; k < snr_db.size() && k < rates.size(); ++k)
    out << format_double(snr_db[k]) << ',' << format_double(rates[k]) << '\n';
  if (slope) out << "# slope=" << format_double(*slope) << '\n';
}

}  // namespace ia3
