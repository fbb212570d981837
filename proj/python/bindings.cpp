#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "boxmf/bootstrap.hpp"
#include "boxmf/cli.hpp"
#include "boxmf/errors.hpp"
#include "boxmf/ingest.hpp"
#include "boxmf/measure.hpp"
#include "boxmf/partition.hpp"
#include "boxmf/pipeline.hpp"
#include "boxmf/scaling.hpp"
#include "boxmf/spectrum.hpp"
#include "boxmf/synth.hpp"

namespace py = pybind11;
using namespace boxmf;

namespace {

py::array_t<double> to_array(std::span<const double> v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw ConfigError("expected a one-dimensional sequence of values");
  return {a.data(), a.data() + a.size()};
}

BoxScheme scheme_for(std::size_t length, const std::optional<std::vector<std::size_t>>& boxes) {
  return boxes ? derive_box_scheme(length, *boxes) : derive_box_scheme(length);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Box-counting multifractal analysis of intraday price series.";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<IngestError>(m, "IngestError", PyExc_RuntimeError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<BoxScheme>(m, "BoxScheme")
      .def(py::init<std::vector<std::size_t>, std::size_t>(), py::arg("sizes"),
           py::arg("series_length"))
      .def_property_readonly("sizes",
                             [](const BoxScheme& s) {
                               return std::vector<std::size_t>(s.sizes().begin(), s.sizes().end());
                             })
      .def_property_readonly("series_length", &BoxScheme::series_length)
      .def("box_count", &BoxScheme::box_count, py::arg("index"))
      .def("__len__", &BoxScheme::size);

  m.def("derive_box_scheme", &scheme_for, py::arg("series_length"), py::arg("boxes") = py::none());

  py::class_<MomentGrid>(m, "MomentGrid")
      .def(py::init<std::vector<double>>(), py::arg("q"))
      .def_static("uniform", &MomentGrid::uniform, py::arg("q_min"), py::arg("q_max"),
                  py::arg("step"))
      .def_static("standard", &MomentGrid::standard)
      .def_property_readonly("values", [](const MomentGrid& g) { return to_array(g.values()); })
      .def("index_of", &MomentGrid::index_of, py::arg("q"))
      .def("__len__", &MomentGrid::size);

  py::class_<BoxMeasure>(m, "BoxMeasure")
      .def_property_readonly("box_size", &BoxMeasure::box_size)
      .def_property_readonly("box_count", &BoxMeasure::box_count)
      .def_property_readonly("raw_mass", [](const BoxMeasure& b) { return to_array(b.raw_mass()); })
      .def_property_readonly("log_weights",
                             [](const BoxMeasure& b) { return to_array(b.log_weights()); })
      .def_property_readonly("total_mass", &BoxMeasure::total_mass);

  m.def(
      "build_box_measure",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& values,
         std::size_t box_size) { return build_box_measure(to_vector(values), box_size); },
      py::arg("values"), py::arg("box_size"));
  m.def("log_partition_value", &log_partition_value, py::arg("measure"), py::arg("q"));

  py::class_<PartitionSurface>(m, "PartitionSurface")
      .def_property_readonly("grid", &PartitionSurface::grid)
      .def_property_readonly("scheme", &PartitionSurface::scheme)
      .def_property_readonly("log_chi", [](const PartitionSurface& s) {
        const auto rows = static_cast<py::ssize_t>(s.grid().size());
        const auto cols = static_cast<py::ssize_t>(s.scheme().size());
        py::array_t<double> out({rows, cols});
        auto view = out.mutable_unchecked<2>();
        for (py::ssize_t i = 0; i < rows; ++i)
          for (py::ssize_t j = 0; j < cols; ++j)
            view(i, j) = s.log_chi(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        return out;
      });

  m.def(
      "partition_surface",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& values,
         const BoxScheme& scheme, const MomentGrid& grid) {
        return partition_surface(to_vector(values), scheme, grid);
      },
      py::arg("values"), py::arg("scheme"), py::arg("grid"));

  py::class_<MassExponents>(m, "MassExponents")
      .def_readonly("grid", &MassExponents::grid)
      .def_property_readonly("tau", [](const MassExponents& e) { return to_array(e.tau); })
      .def_property_readonly("r", [](const MassExponents& e) { return to_array(e.r); })
      .def_readonly("alpha_bar", &MassExponents::alpha_bar)
      .def_readonly("alpha_bar_stderr", &MassExponents::alpha_bar_stderr)
      .def_readonly("tau_line_r", &MassExponents::tau_line_r);
  m.def("fit_mass_exponents", &fit_mass_exponents, py::arg("surface"));

  py::class_<TauLinearity>(m, "TauLinearity")
      .def_readonly("alpha_bar", &TauLinearity::alpha_bar)
      .def_readonly("alpha_bar_stderr", &TauLinearity::alpha_bar_stderr)
      .def_readonly("intercept", &TauLinearity::intercept)
      .def_readonly("max_abs_residual_from_line", &TauLinearity::max_abs_residual_from_line);
  m.def("tau_linearity_report", &tau_linearity_report, py::arg("exponents"));

  py::class_<SingularitySpectrum>(m, "SingularitySpectrum")
      .def_readonly("grid", &SingularitySpectrum::grid)
      .def_property_readonly("alpha", [](const SingularitySpectrum& s) { return to_array(s.alpha); })
      .def_property_readonly("f", [](const SingularitySpectrum& s) { return to_array(s.f); })
      .def_readonly("alpha_min_index", &SingularitySpectrum::alpha_min_index)
      .def_readonly("alpha_max_index", &SingularitySpectrum::alpha_max_index)
      .def_readonly("delta_alpha", &SingularitySpectrum::delta_alpha)
      .def_readonly("F", &SingularitySpectrum::F);
  m.def(
      "legendre_spectrum",
      [](const MomentGrid& grid,
         const py::array_t<double, py::array::c_style | py::array::forcecast>& tau) {
        return legendre_spectrum(grid, to_vector(tau));
      },
      py::arg("grid"), py::arg("tau"));
  m.def("legendre_spectrum", py::overload_cast<const MassExponents&>(&legendre_spectrum),
        py::arg("exponents"));

  py::class_<DayAnalysis>(m, "DayAnalysis")
      .def_readonly("surface", &DayAnalysis::surface)
      .def_readonly("exponents", &DayAnalysis::exponents)
      .def_readonly("linearity", &DayAnalysis::linearity)
      .def_readonly("spectrum", &DayAnalysis::spectrum);
  m.def(
      "analyze_series",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& values,
         std::optional<BoxScheme> scheme, std::optional<MomentGrid> grid) {
        const auto v = to_vector(values);
        const auto s = scheme ? *scheme : derive_box_scheme(v.size());
        py::gil_scoped_release release;
        return analyze_series(v, s, grid ? *grid : MomentGrid::standard());
      },
      py::arg("values"), py::arg("scheme") = py::none(), py::arg("grid") = py::none());

  py::class_<SpectrumStats>(m, "SpectrumStats")
      .def_readonly("delta_alpha", &SpectrumStats::delta_alpha)
      .def_readonly("F", &SpectrumStats::F);
  py::class_<ScatterLine>(m, "ScatterLine")
      .def_readonly("k", &ScatterLine::k)
      .def_readonly("b", &ScatterLine::b);

  py::class_<BootstrapConfig>(m, "BootstrapConfig")
      .def(py::init([](std::size_t replicates, std::uint64_t seed, double level, unsigned workers) {
             BootstrapConfig c;
             c.replicates = replicates;
             c.master_seed = seed;
             c.significance_level = level;
             c.workers = workers;
             c.validate();
             return c;
           }),
           py::arg("replicates") = 1000, py::arg("seed") = 0, py::arg("level") = 0.05,
           py::arg("workers") = 0)
      .def_readwrite("replicates", &BootstrapConfig::replicates)
      .def_readwrite("master_seed", &BootstrapConfig::master_seed)
      .def_readwrite("significance_level", &BootstrapConfig::significance_level)
      .def_readwrite("workers", &BootstrapConfig::workers);

  py::class_<BootstrapReport>(m, "BootstrapReport")
      .def_readonly("day", &BootstrapReport::day)
      .def_readonly("original", &BootstrapReport::original)
      .def_readonly("replicates", &BootstrapReport::replicates)
      .def_readonly("line", &BootstrapReport::line)
      .def_readonly("p1", &BootstrapReport::p1)
      .def_readonly("p2", &BootstrapReport::p2)
      .def_readonly("significance_level", &BootstrapReport::significance_level)
      .def_readonly("significant_1", &BootstrapReport::significant_1)
      .def_readonly("significant_2", &BootstrapReport::significant_2);

  m.def(
      "shuffle_values",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& values,
         std::uint64_t replicate_index, std::uint64_t seed) {
        const auto v = to_vector(values);
        return to_array(shuffle_values(v, replicate_index, seed));
      },
      py::arg("values"), py::arg("replicate_index"), py::arg("seed"));
  m.def(
      "bootstrap_analysis",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& values,
         const BootstrapConfig& config, std::optional<BoxScheme> scheme,
         std::optional<MomentGrid> grid, std::string day) {
        PriceSeries series(std::move(day), to_vector(values));
        const auto s = scheme ? *scheme : derive_box_scheme(series.length());
        py::gil_scoped_release release;
        return bootstrap_analysis(series, s, grid ? *grid : MomentGrid::standard(), config);
      },
      py::arg("values"), py::arg("config") = BootstrapConfig{}, py::arg("scheme") = py::none(),
      py::arg("grid") = py::none(), py::arg("day") = "series");

  py::class_<BatchSummary>(m, "BatchSummary")
      .def_readonly("significance_level", &BatchSummary::significance_level)
      .def_readonly("day_count", &BatchSummary::day_count)
      .def_readonly("pct_p1_significant", &BatchSummary::pct_p1_significant)
      .def_readonly("pct_p2_significant", &BatchSummary::pct_p2_significant);
  m.def(
      "batch_summary",
      [](const std::vector<BootstrapReport>& reports, double level) {
        return batch_summary(reports, level);
      },
      py::arg("reports"), py::arg("level") = 0.05);

  m.def(
      "load_days",
      [](const std::string& path, const std::string& date_col, const std::string& time_col,
         const std::string& price_col) {
        const auto records = parse_intraday_csv(path, ColumnSpec{date_col, time_col, price_col});
        const auto seg = segment_by_day(records);
        py::list days;
        for (const auto& d : seg.days) days.append(py::make_tuple(d.day_id(), to_array(d.values())));
        py::list dropped;
        for (const auto& d : seg.dropped) dropped.append(py::make_tuple(d.day_id, d.length, d.reason));
        return py::make_tuple(days, dropped);
      },
      py::arg("path"), py::arg("date_col") = "date", py::arg("time_col") = "time",
      py::arg("price_col") = "price");

  m.def(
      "constant_series",
      [](std::size_t length, double value) { return to_array(constant_series(length, value).values()); },
      py::arg("length"), py::arg("value") = 1.0);
  m.def(
      "random_series",
      [](std::size_t length, const std::string& kind, double sigma, double level,
         std::uint64_t seed) {
        return to_array(
            random_positive_series(length, parse_noise_kind(kind), {sigma, level}, seed).values());
      },
      py::arg("length"), py::arg("kind") = "walk", py::arg("sigma") = 0.01, py::arg("level") = 1.0,
      py::arg("seed") = 0);
  m.def(
      "binomial_cascade",
      [](double p, unsigned levels, double total_mass, std::optional<std::uint64_t> seed) {
        return to_array(binomial_cascade({p, levels, total_mass}, seed).values());
      },
      py::arg("p") = 0.6, py::arg("levels") = 12, py::arg("total_mass") = 1.0,
      py::arg("seed") = py::none());
  m.def("analytic_binomial_tau", &analytic_binomial_tau, py::arg("p"), py::arg("q"));
  m.def("analytic_binomial_alpha", &analytic_binomial_alpha, py::arg("p"), py::arg("q"));
  m.def("analytic_binomial_f", &analytic_binomial_f, py::arg("p"), py::arg("q"));

  m.def(
      "cli_main",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "boxmf");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
