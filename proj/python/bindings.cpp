#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "decompound/config.hpp"
#include "decompound/fourier.hpp"
#include "decompound/grid.hpp"
#include "decompound/law.hpp"
#include "decompound/mellin.hpp"
#include "decompound/risk.hpp"
#include "decompound/simulate.hpp"
#include "decompound/spectral.hpp"
#include "decompound/version.hpp"

namespace py = pybind11;
using namespace decompound;

namespace {

std::vector<double> grid_points(const FrequencyGrid& grid) {
  std::vector<double> u(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) u[i] = grid.point(i);
  return u;
}

RegularityClass make_class(const std::string& kind, const std::vector<double>& params,
                           bool target) {
  if (kind == "ordinary" && params.size() == 1)
    return target ? RegularityClass::ordinary_target(params[0])
                  : RegularityClass::ordinary_noise(params[0]);
  if (kind == "super" && params.size() == 2)
    return target ? RegularityClass::super_target(params[0], params[1])
                  : RegularityClass::super_noise(params[0], params[1]);
  throw std::invalid_argument("class spec: ('ordinary', [e]) or ('super', [e, s])");
}

py::dict density_dict(const DensityEstimate& density, double m_used) {
  py::dict out;
  out["x"] = density.x;
  out["f_hat"] = density.values;
  out["m"] = m_used;
  return out;
}

} // namespace

PYBIND11_MODULE(_decompound, m) {
  m.doc() = "noisy compound Poisson decompounding: simulation and spectral estimators";
  m.attr("__version__") = kVersion;

  py::class_<Law>(m, "Law")
      .def_static("parse", &parse_law, py::arg("text"))
      .def_static("gaussian", &Law::gaussian, py::arg("mean"), py::arg("sd"))
      .def_static("gaussian_mixture", &Law::gaussian_mixture, py::arg("weights"),
                  py::arg("means"), py::arg("sds"))
      .def_static("gamma", &Law::gamma, py::arg("shape"), py::arg("scale"))
      .def_static("cauchy", &Law::cauchy, py::arg("location"), py::arg("scale"))
      .def_static("beta", &Law::beta, py::arg("alpha"), py::arg("beta"))
      .def_static("point_mass", &Law::point_mass, py::arg("x0"))
      .def_static("none", &Law::degenerate0)
      .def("sample",
           [](const Law& law, std::size_t count, std::uint64_t seed) {
             RngStream rng(seed);
             return law.sample(count, rng);
           },
           py::arg("count"), py::arg("seed"))
      .def("cf", &Law::analytic_cf, py::arg("u"))
      .def("mellin", &Law::analytic_mellin, py::arg("c"), py::arg("t"))
      .def("density", &Law::analytic_density, py::arg("x"))
      .def("positive_support", &Law::positive_support)
      .def("__eq__", [](const Law& a, const Law& b) { return a == b; })
      .def("__repr__", [](const Law& law) { return "Law('" + law.to_string() + "')"; })
      .def("__str__", &Law::to_string);

  m.def(
      "sample_panel",
      [](const Law& jump, const Law& noise, std::size_t channels,
         const std::vector<double>& times, std::uint64_t seed) {
        RngStream rng(seed);
        const Panel panel = sample_panel(jump, noise, channels, times, rng);
        std::vector<std::vector<double>> rows(channels);
        for (std::size_t j = 0; j < channels; ++j) {
          rows[j].resize(times.size());
          for (std::size_t i = 0; i < times.size(); ++i) rows[j][i] = panel.at(j, i);
        }
        return rows;
      },
      py::arg("jump"), py::arg("noise"), py::arg("channels"), py::arg("times"),
      py::arg("seed"), "J x len(times) matrix of noisy observations");

  m.def(
      "sample_increments",
      [](const Law& jump, double lambda, double delta, std::size_t n, std::uint64_t seed) {
        RngStream rng(seed);
        return sample_increments(jump, lambda, delta, n, rng).increments;
      },
      py::arg("jump"), py::arg("lambda_"), py::arg("delta"), py::arg("n"), py::arg("seed"));

  m.def(
      "empirical_cf",
      [](const std::vector<double>& data, double half_width, double step) {
        const FrequencyGrid grid(half_width, step);
        const auto profile = empirical_cf(data, grid);
        return py::make_tuple(grid_points(grid), profile.values);
      },
      py::arg("data"), py::arg("half_width"), py::arg("step"),
      "(u, values) of the empirical characteristic function");

  m.def(
      "distinguished_log",
      [](const std::vector<double>& data, double half_width, double step) {
        const FrequencyGrid grid(half_width, step);
        const auto pair = empirical_cf_pair(data, grid);
        const auto log = distinguished_log(pair.cf, pair.derivative);
        return py::make_tuple(grid_points(grid), log.values);
      },
      py::arg("data"), py::arg("half_width"), py::arg("step"),
      "(u, values) of the distinguished logarithm of the empirical cf");

  m.def(
      "empirical_mellin",
      [](const std::vector<double>& increments, double c, double half_width, double step) {
        const FrequencyGrid grid(half_width, step);
        const auto profile = empirical_mellin(increments, c, grid);
        return py::make_tuple(grid_points(grid), profile.values);
      },
      py::arg("increments"), py::arg("c"), py::arg("half_width"), py::arg("step"));

  m.def(
      "estimate_fourier",
      [](const std::vector<double>& panel_t1, const std::vector<double>& panel_t2,
         double t1, double t2, double m_cut, bool adaptive, double kappa, double alpha,
         double x_min, double x_max, double x_step, double freq_step) {
        FourierConfig cfg;
        cfg.t1 = t1;
        cfg.t2 = t2;
        cfg.m = m_cut;
        cfg.kappa = kappa;
        cfg.alpha = alpha;
        cfg.x_grid = uniform_grid_range(x_min, x_max, x_step);
        const auto result = run_fourier_estimate(panel_t1, panel_t2, cfg, adaptive, freq_step);
        return density_dict(result.density, result.m_used);
      },
      py::arg("panel_t1"), py::arg("panel_t2"), py::arg("t1"), py::arg("t2"),
      py::arg("m") = 1.0, py::arg("adaptive") = false, py::arg("kappa") = 1.0,
      py::arg("alpha") = 0.5, py::arg("x_min") = -10.0, py::arg("x_max") = 10.0,
      py::arg("x_step") = 0.01, py::arg("freq_step") = 0.0,
      "two-time jump density estimate from two panel columns");

  m.def(
      "estimate_mellin",
      [](const std::vector<double>& increments, double lambda, double delta, double m_cut,
         bool adaptive, double kappa, double alpha, double c, double x_min, double x_max,
         double x_step, double freq_step, const std::string& threshold_form) {
        MellinConfig cfg;
        cfg.lambda = lambda;
        cfg.delta = delta;
        cfg.m = m_cut;
        cfg.kappa = kappa;
        cfg.alpha = alpha;
        cfg.c = c;
        cfg.x_grid = uniform_grid_range(x_min, x_max, x_step);
        if (threshold_form == "additive")
          cfg.threshold_form = MellinThresholdForm::Additive;
        else if (threshold_form == "exponential")
          cfg.threshold_form = MellinThresholdForm::Exponential;
        else
          throw std::invalid_argument("threshold_form must be additive or exponential");
        const auto result = run_mellin_estimate(increments, cfg, adaptive, freq_step);
        return density_dict(result.density, result.m_used);
      },
      py::arg("increments"), py::arg("lambda_") = 1.0, py::arg("delta") = 1.0,
      py::arg("m") = 20.0, py::arg("adaptive") = false, py::arg("kappa") = 1.0,
      py::arg("alpha") = 0.5, py::arg("c") = 1.0, py::arg("x_min") = 0.002,
      py::arg("x_max") = 1.5, py::arg("x_step") = 0.002, py::arg("freq_step") = 0.0,
      py::arg("threshold_form") = "additive",
      "multiplicative jump density estimate from positive increments");

  m.def(
      "truncated_target_density",
      [](const Law& jump, double m_cut, double x_min, double x_max, double x_step) {
        const auto grid = uniform_grid_range(x_min, x_max, x_step);
        return density_dict(truncated_target_density(jump, m_cut, grid), m_cut);
      },
      py::arg("jump"), py::arg("m"), py::arg("x_min"), py::arg("x_max"), py::arg("x_step"));

  m.def(
      "l2_distance",
      [](const std::vector<double>& x, const std::vector<double>& a,
         const std::vector<double>& b) {
        DensityEstimate da{x, a, ""}, db{x, b, ""};
        return l2_distance(da, db);
      },
      py::arg("x"), py::arg("a"), py::arg("b"),
      "integrated squared difference on a shared uniform grid");

  m.def(
      "weighted_l2_distance",
      [](const std::vector<double>& x, const std::vector<double>& a,
         const std::vector<double>& b, double c) {
        DensityEstimate da{x, a, ""}, db{x, b, ""};
        return weighted_l2_distance(da, db, c);
      },
      py::arg("x"), py::arg("a"), py::arg("b"), py::arg("c") = 1.0);

  m.def(
      "theoretical_rate",
      [](const std::string& target_kind, const std::vector<double>& target_params,
         const std::string& noise_kind, const std::vector<double>& noise_params) {
        const auto pair = theoretical_rate(make_class(target_kind, target_params, true),
                                           make_class(noise_kind, noise_params, false));
        py::dict out;
        out["cutoff"] = pair.cutoff.text;
        out["cutoff_exponent"] = pair.cutoff.exponent;
        out["risk"] = pair.risk.text;
        out["risk_exponent"] = pair.risk.exponent;
        return out;
      },
      py::arg("target_kind"), py::arg("target_params"), py::arg("noise_kind"),
      py::arg("noise_params"),
      "optimal cutoff rule and risk rate for a (jump, noise) regularity pair");
}
