#include <clocale>
#include <sstream>

#include "doctest.h"
#include "ia3/error.hpp"
#include "ia3/io.hpp"
#include "json.hpp"

using namespace ia3;
using nlohmann::json;

TEST_CASE("report JSON carries every field") {
  const auto r = run_trial({16, 8, 2, 3}, 1);
  const auto doc = json::parse(report_to_json(r));
  CHECK(doc["config"]["M"] == 16);
  CHECK(doc["config"]["N"] == 8);
  CHECK(doc["config"]["K"] == 2);
  CHECK(doc["config"]["d"] == 3);
  CHECK(doc["seed"] == 1);
  CHECK(doc["method"] == "eigen");
  CHECK(doc["per_bs_interference_dim"] == json::array({9, 9, 9}));
  CHECK(doc["per_bs_ici_leakage"].size() == 3);
  CHECK(doc["users"] == json::array({"1,1", "1,2", "2,1", "2,2", "3,1", "3,2"}));
  CHECK(doc["per_user_iui_leakage"].size() == 6);
  CHECK(doc["per_user_W_rank"] == json::array({3, 3, 3, 3, 3, 3}));
  CHECK(doc["eta_achieved"] == 18);
  CHECK(doc["decodable"] == true);
  CHECK(doc["failed_checks"].empty());
  CHECK(report_summary(r) == "eta=18, dims=[9,9,9], decodable=true");
}

TEST_CASE("channel dump round-trips bit for bit") {
  for (const NetworkConfig cfg : {NetworkConfig{16, 8, 2, 3}, NetworkConfig{8, 4, 3, 1}}) {
    for (std::uint64_t seed : {1ULL, 2ULL, 18446744073709551615ULL}) {
      const auto ch = generate_channels(cfg, seed);
      const auto back = channels_from_json(channels_to_json(ch));
      CHECK(back.config() == cfg);
      CHECK(back.seed() == seed);
      for (int i = 0; i < kCells; ++i)
        for (int k = 0; k < kCells; ++k)
          for (int j = 0; j < cfg.K; ++j) REQUIRE(back.h(i, k, j) == ch.h(i, k, j));
    }
  }
}

TEST_CASE("channel dump layout") {
  const auto ch = generate_channels({6, 4, 2, 1}, 9);
  const auto doc = json::parse(channels_to_json(ch));
  CHECK(doc["H"].size() == 18);
  const auto& block = doc["H"]["2,3,1"];
  REQUIRE(block.size() == 24);
  // row-major: entry 5 is row 1, column 1
  CHECK(block[5][0].get<double>() == ch.h(1, 2, 0)(1, 1).real());
  CHECK(block[5][1].get<double>() == ch.h(1, 2, 0)(1, 1).imag());
}

TEST_CASE("a loaded channel set reproduces the trial") {
  const auto ch = generate_channels({8, 4, 3, 1}, 2);
  const auto a = run_trial(ch);
  const auto b = run_trial(channels_from_json(channels_to_json(ch)));
  CHECK(report_to_json(a) == report_to_json(b));
}

TEST_CASE("malformed channel JSON") {
  auto kind = [](const std::string& text) {
    try {
      channels_from_json(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Index;
  };
  CHECK(kind("{not json") == ErrorKind::InvalidInput);
  CHECK(kind(R"({"config": {"M": 6, "N": 4, "K": 2, "d": 1}, "seed": 1})") == ErrorKind::InvalidInput);
  CHECK(kind(R"({"config": {"M": 6, "N": 4, "K": 2}, "seed": 1, "H": {}})") == ErrorKind::InvalidInput);
  CHECK(kind(R"({"config": {"M": 6, "N": 4, "K": 2, "d": 1}, "seed": 1, "H": {}})") == ErrorKind::InvalidInput);
  CHECK(kind(R"({"config": {"M": 4, "N": 4, "K": 2, "d": 1}, "seed": 1, "H": {}})") == ErrorKind::Configuration);

  auto doc = json::parse(channels_to_json(generate_channels({6, 4, 2, 1}, 1)));
  doc["H"]["1,1,1"][0] = json::array({1.0});
  CHECK(kind(doc.dump()) == ErrorKind::InvalidInput);
}

TEST_CASE("sweep CSV") {
  std::ostringstream os;
  const auto rows = dof_sweep(5, 8);
  write_sweep_csv(os, rows);
  CHECK(os.str() ==
        "M,best_K,best_N,best_d,ia_dof,orthogonal_dof\n"
        "5,2,3,1,6,5\n"
        "6,2,3,1,6,6\n"
        "7,2,4,1,6,7\n"
        "8,3,3,1,9,8\n"
        "# below_orthogonal=1 M=[7]\n");
}

TEST_CASE("rank CSV") {
  RankHistogram h;
  h.config = {16, 8, 2, 3};
  h.counts.resize(6);
  for (auto& c : h.counts) c[3] = 4;
  h.counts[1][2] = 1;
  std::ostringstream os;
  write_rank_csv(os, h);
  CHECK(os.str() ==
        "user_i,user_j,rank,count\n"
        "1,1,3,4\n"
        "1,2,2,1\n"
        "1,2,3,4\n"
        "2,1,3,4\n"
        "2,2,3,4\n"
        "3,1,3,4\n"
        "3,2,3,4\n");
}

TEST_CASE("sum-rate CSV and number formatting") {
  const double snr[] = {30.0, 40.5};
  const double rate[] = {142.25, 0.1};
  std::ostringstream with, without;
  write_sum_rate_csv(with, snr, rate, 17.5);
  write_sum_rate_csv(without, snr, rate, std::nullopt);
  CHECK(with.str() == "snr_db,sum_rate_bits\n30,142.25\n40.5,0.1\n# slope=17.5\n");
  CHECK(without.str() == "snr_db,sum_rate_bits\n30,142.25\n40.5,0.1\n");

  std::setlocale(LC_NUMERIC, "de_DE.UTF-8");  // no-op if the locale is missing
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1e-300) == "1e-300");
  std::setlocale(LC_NUMERIC, "C");
}
