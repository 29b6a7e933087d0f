#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crownlab/campaign.hpp"
#include "crownlab/cfun.hpp"
#include "crownlab/errors.hpp"
#include "crownlab/heatkernel.hpp"
#include "crownlab/matrixlab.hpp"
#include "crownlab/sphfun.hpp"

namespace py = pybind11;
using namespace crownlab;

namespace {

RankOneGroup parse_group(const std::string& g) {
  if (g == "sl2r") return RankOneGroup::SL2R;
  if (g == "sl2c") return RankOneGroup::SL2C;
  throw std::invalid_argument("group must be 'sl2r' or 'sl2c'");
}

const RootSystem& system_for(const std::string& name) { return named_root_system(name); }

}  // namespace

PYBIND11_MODULE(_crownlab, m) {
  m.doc() = "Spherical functions on the complex crown and convexity checks";

  py::register_exception<NumericalGuard>(m, "NumericalGuard", PyExc_ArithmeticError);

  m.def(
      "root_system",
      [](const std::string& name) {
        const RootSystem& rs = system_for(name);
        py::dict d;
        d["rank"] = rs.rank;
        d["positive_roots"] = rs.positive_roots;
        d["multiplicities"] = rs.multiplicities;
        d["rho"] = rs.rho;
        d["weyl_order"] = rs.weyl_group.size();
        d["dim_n"] = rs.dim_n();
        return d;
      },
      py::arg("name"), "A1m1 (SL(2,R)), A1m2 (SL(2,C)) or A2m1 (SL(3,R))");

  m.def("majorization_margin", &majorization_margin, py::arg("x"), py::arg("y"),
        "Margin of x in the permutation hull of y (>= 0 inside).");

  m.def(
      "c_function",
      [](const std::string& name, const ComplexVec& lambda) { return c_function(make_cfunction(system_for(name)), lambda); },
      py::arg("system"), py::arg("lam"));

  m.def(
      "spherical_series",
      [](const std::string& name, const ComplexVec& lambda, const RealVec& H, const RealVec& C, int max_degree) {
        const RootSystem& rs = system_for(name);
        return spherical_series(rs, make_cfunction(rs), SpectralParameter::make(rs, lambda), {H, C}, max_degree).value;
      },
      py::arg("system"), py::arg("lam"), py::arg("H"), py::arg("C"), py::arg("max_degree") = 40);

  m.def(
      "spherical_integral",
      [](const std::string& group, const ComplexVec& lambda, const ComplexMat& g, const RealVec& Y) {
        const auto grp = parse_group(group);
        return spherical_integral(grp, SpectralParameter::make(rank_one_root_system(grp), lambda), g, Y).value;
      },
      py::arg("group"), py::arg("lam"), py::arg("g"), py::arg("Y"));

  m.def(
      "heat_kernel",
      [](double t, const ComplexMat& g, const RealVec& Y) {
        HeatEvalSpec spec;
        spec.t = t;
        return heat_kernel_continued(spec, g, Y).value;
      },
      py::arg("t"), py::arg("g"), py::arg("Y"));

  m.def("hyperbolic_plane_heat_kernel", &hyperbolic_plane_heat_kernel, py::arg("t"), py::arg("r"));

  m.def(
      "check_sample",
      [](int n, const std::string& field, std::uint64_t seed, std::uint64_t trial) {
        const auto s = sample_crown_point(n, parse_field(field), {}, seed, trial);
        const auto v = check_hull_convexity(s);
        return py::make_tuple(sample_to_json(s).dump(), verdict_to_json(v).dump());
      },
      py::arg("n"), py::arg("field"), py::arg("seed"), py::arg("trial"),
      "Samples one crown point and returns (sample, verdict) as JSON strings.");

  m.def(
      "verify_convexity",
      [](int n, const std::string& field, std::int64_t trials, std::uint64_t seed, int threads) {
        ConvexityConfig cfg;
        cfg.n = n;
        cfg.field = parse_field(field);
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.threads = threads;
        py::gil_scoped_release release;
        return run_convexity_campaign(cfg).report.dump();
      },
      py::arg("n"), py::arg("field"), py::arg("trials"), py::arg("seed"), py::arg("threads") = 1,
      "Runs a convexity campaign and returns the JSON report as a string.");
}
