// Python bindings. Cell, BS and user indices are 1-based on this side.

#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ia3/error.hpp"
#include "ia3/io.hpp"
#include "ia3/metrics.hpp"

namespace py = pybind11;
using namespace ia3;

namespace {

Tolerance make_tol(std::optional<double> rank_tol, double leakage_tol) {
  Tolerance t;
  t.relative_rank_tol = rank_tol;
  t.leakage_tol = leakage_tol;
  t.validate();
  return t;
}

py::dict report_dict(const AlignmentReport& r) {
  py::dict d;
  d["config"] = py::make_tuple(r.config.M, r.config.N, r.config.K, r.config.d);
  d["seed"] = r.seed;
  d["method"] = std::string(to_string(r.method));
  d["per_bs_interference_dim"] = r.per_bs_interference_dim;
  d["per_bs_ici_leakage"] = r.per_bs_ici_leakage;
  d["per_user_iui_leakage"] = r.per_user_iui_leakage;
  d["per_user_W_rank"] = r.per_user_W_rank;
  d["per_user_H_eff_rank"] = r.per_user_H_eff_rank;
  d["eta_achieved"] = r.eta_achieved;
  d["decodable"] = r.decodable;
  d["failed_checks"] = r.failed_checks;
  return d;
}

int zero_based(int idx, int count, const char* what) {
  if (idx < 1 || idx > count)
    throw Error(ErrorKind::Index, std::string(what) + " index " + std::to_string(idx) + " out of range");
  return idx - 1;
}

}  // namespace

PYBIND11_MODULE(_ia3, m) {
  m.doc() = "Three-cell uplink interference alignment";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<NetworkConfig>(m, "NetworkConfig")
      .def(py::init([](int M, int N, int K, int d) { return NetworkConfig{M, N, K, d}; }), py::arg("M"),
           py::arg("N"), py::arg("K"), py::arg("d"))
      .def_readwrite("M", &NetworkConfig::M)
      .def_readwrite("N", &NetworkConfig::N)
      .def_readwrite("K", &NetworkConfig::K)
      .def_readwrite("d", &NetworkConfig::d)
      .def("validate", &NetworkConfig::validate)
      .def(py::self == py::self)
      .def("__repr__", [](const NetworkConfig& c) {
        return "NetworkConfig(M=" + std::to_string(c.M) + ", N=" + std::to_string(c.N) +
               ", K=" + std::to_string(c.K) + ", d=" + std::to_string(c.d) + ")";
      });

  py::class_<ChannelSet>(m, "ChannelSet")
      .def_property_readonly("config", &ChannelSet::config)
      .def_property_readonly("seed", &ChannelSet::seed)
      .def(
          "h",
          [](const ChannelSet& ch, int bs, int cell, int user) {
            const int K = ch.config().K;
            return ComplexMatrix(ch.h(zero_based(bs, kCells, "bs"), zero_based(cell, kCells, "cell"),
                                     zero_based(user, K, "user")));
          },
          py::arg("bs"), py::arg("cell"), py::arg("user"))
      .def("to_json", [](const ChannelSet& ch) { return channels_to_json(ch); })
      .def_static("from_json", [](const std::string& s) { return channels_from_json(s); });

  m.def("generate_channels", &generate_channels, py::arg("config"), py::arg("seed"));

  m.def(
      "check_feasibility",
      [](const NetworkConfig& c) {
        const auto v = check_feasibility(c);
        py::dict d;
        d["feasible"] = v.feasible;
        d["method"] = std::string(to_string(v.method));
        d["d_max"] = v.d_max;
        d["eta"] = v.eta;
        return d;
      },
      py::arg("config"));
  m.def("max_streams_per_user", &max_streams_per_user, py::arg("M"), py::arg("N"), py::arg("K"));
  m.def("orthogonal_dof", &orthogonal_dof, py::arg("M"), py::arg("N"), py::arg("K"));

  m.def(
      "design_precoders",
      [](const ChannelSet& ch) {
        const auto sol = design_precoders(ch);
        py::dict d;
        d["method"] = std::string(to_string(sol.method));
        d["W"] = sol.per_user_W;
        return d;
      },
      py::arg("channels"), "Per-user precoders (index (i-1)*K + (j-1)) and the method used.");

  m.def(
      "run_trial",
      [](const NetworkConfig& c, std::uint64_t seed, std::optional<double> rank_tol, double leakage_tol) {
        return report_dict(run_trial(c, seed, make_tol(rank_tol, leakage_tol)));
      },
      py::arg("config"), py::arg("seed") = 1, py::arg("rank_tol") = py::none(), py::arg("leakage_tol") = 1e-8);
  m.def(
      "run_trial_on",
      [](const ChannelSet& ch, std::optional<double> rank_tol, double leakage_tol) {
        return report_dict(run_trial(ch, make_tol(rank_tol, leakage_tol)));
      },
      py::arg("channels"), py::arg("rank_tol") = py::none(), py::arg("leakage_tol") = 1e-8);
  m.def(
      "report_json",
      [](const NetworkConfig& c, std::uint64_t seed) { return report_to_json(run_trial(c, seed)); },
      py::arg("config"), py::arg("seed") = 1);

  m.def(
      "rank_distribution",
      [](const NetworkConfig& c, long trials, std::uint64_t base_seed, unsigned threads) {
        RankHistogram h;
        {
          py::gil_scoped_release release;
          h = rank_distribution(c, trials, base_seed, {}, threads);
        }
        py::dict d;
        py::dict counts;
        for (int i = 0; i < kCells; ++i)
          for (int j = 0; j < c.K; ++j)
            counts[py::make_tuple(i + 1, j + 1)] = h.counts[static_cast<std::size_t>(i * c.K + j)];
        d["trials"] = h.trials;
        d["counts"] = counts;
        d["failed_trials"] = h.failed_trials;
        d["first_failure"] = h.first_failure;
        return d;
      },
      py::arg("config"), py::arg("trials") = 10000, py::arg("base_seed") = 1, py::arg("threads") = 0u);

  m.def(
      "dof_sweep",
      [](int m_min, int m_max) {
        py::list rows;
        for (const auto& r : dof_sweep(m_min, m_max)) {
          py::dict d;
          d["M"] = r.M;
          d["best_K"] = r.best_K;
          d["best_N"] = r.best_N;
          d["best_d"] = r.best_d;
          d["ia_dof"] = r.ia_dof;
          d["orthogonal_dof"] = r.orthogonal_dof;
          rows.append(d);
        }
        return rows;
      },
      py::arg("m_min") = 5, py::arg("m_max") = 32);

  m.def(
      "sum_rate",
      [](const NetworkConfig& c, std::uint64_t seed, const std::vector<double>& snr_db) {
        const auto state = solve_trial(c, seed);
        std::vector<double> rates;
        for (double s : snr_db) rates.push_back(sum_rate(state, s));
        return rates;
      },
      py::arg("config"), py::arg("seed"), py::arg("snr_db"));
  m.def("fit_slope", [](const std::vector<double>& s, const std::vector<double>& r) { return fit_slope(s, r); },
        py::arg("snr_db"), py::arg("rates"));

  m.def(
      "numerical_rank", [](const ComplexMatrix& a, std::optional<double> tol) {
        return numerical_rank(a, make_tol(tol, 1e-8));
      },
      py::arg("a"), py::arg("rank_tol") = py::none());
  m.def(
      "right_null_basis", [](const ComplexMatrix& a, std::optional<double> tol) {
        return right_null_basis(a, make_tol(tol, 1e-8));
      },
      py::arg("a"), py::arg("rank_tol") = py::none());
  m.def(
      "left_null_basis", [](const ComplexMatrix& a, std::optional<double> tol) {
        return left_null_basis(a, make_tol(tol, 1e-8));
      },
      py::arg("a"), py::arg("rank_tol") = py::none());
}
