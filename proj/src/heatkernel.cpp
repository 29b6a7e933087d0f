#include "crownlab/heatkernel.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "crownlab/cfun.hpp"
#include "crownlab/errors.hpp"
#include "crownlab/special.hpp"

namespace crownlab {

namespace {

constexpr double kMinScanMargin = 1e-4;

// Spectral integral over nu in [0, cutoff] with a fixed SO(2) sample.
cplx spectral_sum(const KOrbitSample& ks, double t, double cutoff, int nu_panels) {
  const auto rule = composite_gauss_legendre(0.0, cutoff, nu_panels, 32);
  std::vector<cplx> base(ks.u.size());
  for (std::size_t k = 0; k < ks.u.size(); ++k) base[k] = ks.weights[k] * std::exp(-ks.u[k]);
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double nu = rule.nodes[i];
    cplx phi{0.0, 0.0};
    for (std::size_t k = 0; k < ks.u.size(); ++k) phi += base[k] * std::exp(cplx(0.0, 2.0 * nu) * ks.u[k]);
    acc += rule.weights[i] * std::exp(-t * (nu * nu + 0.25)) * nu * std::tanh(kPi * nu) * phi;
  }
  return acc;
}

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), 1e-300); }

}  // namespace

double heat_cutoff(double t) {
  if (!(t > 0)) throw std::invalid_argument("heat kernel: t must be positive");
  return (kPi / 4 + std::sqrt(kPi * kPi / 16 + 30.0 * t)) / t;
}

HeatValue heat_kernel_continued(const HeatEvalSpec& spec, const ComplexMat& g, const RealVec& Y) {
  const double cutoff = spec.spectral_cutoff > 0 ? spec.spectral_cutoff : heat_cutoff(spec.t);
  const double norm = spec.normalization > 0 ? spec.normalization : heat_normalization();
  const ComplexMat Z = crown_point_matrix(RankOneGroup::SL2R, g, Y);
  constexpr int kMaxPanels = 1 << 13;

  // SO(2) rule first: refine until the spectral sum on a fixed nu rule settles.
  int kp = spec.k_panels;
  int np = spec.nu_panels;
  KOrbitSample ks = sample_k_orbit(RankOneGroup::SL2R, Z, kp);
  cplx prev = spectral_sum(ks, spec.t, cutoff, np);
  for (;;) {
    if (kp * 2 > kMaxPanels) throw NumericalGuard(ErrorKind::QuadratureUnconverged, "heat kernel: SO(2) rule");
    KOrbitSample finer = sample_k_orbit(RankOneGroup::SL2R, Z, kp * 2);
    const cplx cur = spectral_sum(finer, spec.t, cutoff, np);
    kp *= 2;
    ks = std::move(finer);
    const bool done = close(cur, prev, 0.1 * spec.rel_tol);
    prev = cur;
    if (done) break;
  }
  // Then the spectral rule.
  double change = 0.0;
  for (;;) {
    if (np * 2 > kMaxPanels) throw NumericalGuard(ErrorKind::QuadratureUnconverged, "heat kernel: spectral rule");
    const cplx cur = spectral_sum(ks, spec.t, cutoff, np * 2);
    np *= 2;
    change = std::abs(cur - prev) / std::max(std::abs(cur), 1e-300);
    prev = cur;
    if (change <= 0.1 * spec.rel_tol) break;
  }
  // Joint refinement must agree.
  const cplx check = spectral_sum(sample_k_orbit(RankOneGroup::SL2R, Z, kp * 2), spec.t, cutoff, np * 2);
  if (!close(check, prev, spec.rel_tol)) {
    throw NumericalGuard(ErrorKind::QuadratureUnconverged, "heat kernel: node doubling disagrees");
  }
  return {norm * check, kp * 2, np * 2, std::abs(check - prev) / std::max(std::abs(check), 1e-300)};
}

double hyperbolic_plane_heat_kernel(double t, double r) {
  if (!(t > 0) || r < 0) throw std::invalid_argument("hyperbolic_plane_heat_kernel: need t > 0, r >= 0");
  // s = r + v^2 removes the endpoint singularity:
  // cosh s - cosh r = 2 sinh((s + r)/2) sinh(v^2/2).
  auto shc = [](double x) { return x < 1e-8 ? 1.0 : std::sinh(x) / x; };
  auto f = [&](double v) {
    const double v2 = v * v;
    const double s = r + v2;
    const double g = 2.0 * std::exp(-s * s / (4.0 * t)) / std::sqrt(shc(0.5 * v2));
    if (r == 0.0) return g * v * std::sqrt(2.0 / shc(0.5 * v2));
    return g * s / std::sqrt(std::sinh(0.5 * (s + r)));
  };
  const double vmax = std::sqrt(std::sqrt(4.0 * t * 60.0) + 1.0);
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double integral = integrator.integrate(f, 0.0, vmax, 1e-14);
  return std::sqrt(2.0) * std::exp(-t / 4.0) / std::pow(4.0 * kPi * t, 1.5) * integral;
}

double calibrate_heat_normalization(double t, double r) {
  const double cutoff = heat_cutoff(t);
  ComplexMat g = ComplexMat::Zero(2, 2);
  g(0, 0) = std::exp(0.5 * r);
  g(1, 1) = std::exp(-0.5 * r);
  HeatEvalSpec spec;
  spec.t = t;
  spec.spectral_cutoff = cutoff;
  spec.normalization = 1.0;
  spec.rel_tol = 1e-9;
  const auto raw = heat_kernel_continued(spec, g, RealVec::Zero(2));
  return hyperbolic_plane_heat_kernel(t, r) / raw.value.real();
}

double heat_normalization() {
  static const double c = calibrate_heat_normalization(1.0, 0.5);
  return c;
}

double real_radius(const ComplexMat& g) {
  const ComplexMat Z = g * g.adjoint();
  return std::acosh(std::max(1.0, 0.5 * Z.trace().real()));
}

std::string to_string(ScanKind k) { return k == ScanKind::Spherical ? "spherical" : "heat"; }
std::string to_string(Trend t) { return t == Trend::BoundedPlateau ? "bounded-plateau" : "growing"; }

ScanReport boundedness_scan(ScanKind kind, double param, const ScanPath& path, const IntegralOptions& opts) {
  if (path.points < 2 || !(path.start_margin > path.end_margin) || !(path.end_margin > 0)) {
    throw std::invalid_argument("boundedness_scan: bad path");
  }
  ScanReport rep;
  rep.kind = kind;
  const RealVec edge = (RealVec(2) << kPi / 4, -kPi / 4).finished();
  const RootSystem& rs = rank_one_root_system(RankOneGroup::SL2R);
  const double ratio = std::pow(path.end_margin / path.start_margin, 1.0 / (path.points - 1));
  for (int i = 0; i < path.points; ++i) {
    const double margin = path.start_margin * std::pow(ratio, i);
    if (margin < kMinScanMargin) {
      rep.truncated = true;
      rep.note = "omega margin below validity threshold";
      break;
    }
    const double s = 1.0 - margin / (kPi / 2);
    const RealVec Y = s * edge;
    cplx v;
    try {
      if (kind == ScanKind::Spherical) {
        const auto lam = SpectralParameter::make(rs, (ComplexVec(2) << cplx(0, param), cplx(0, -param)).finished());
        v = spherical_integral(RankOneGroup::SL2R, lam, path.g, Y, opts).value;
      } else {
        HeatEvalSpec spec;
        spec.t = param;
        v = heat_kernel_continued(spec, path.g, Y).value;
      }
    } catch (const NumericalGuard& e) {
      rep.truncated = true;
      rep.note = e.what();
      break;
    }
    rep.s.push_back(s);
    rep.omega_margin.push_back(margin);
    rep.value.push_back(v);
    if (std::abs(v) > rep.sup) {
      rep.sup = std::abs(v);
      rep.argsup = s;
    }
  }
  const std::size_t m = rep.value.size();
  if (m >= 4) {
    std::vector<double> lx, ly;
    for (std::size_t i = m / 2; i < m; ++i) {
      lx.push_back(std::log(1.0 / rep.omega_margin[i]));
      ly.push_back(std::log(std::abs(rep.value[i])));
    }
    rep.tail_slope = linear_fit(lx, ly).exponent;
  }
  rep.trend = (std::isfinite(rep.sup) && rep.tail_slope <= 0.1) ? Trend::BoundedPlateau : Trend::Growing;
  return rep;
}

void write_scan_csv(std::ostream& os, const ScanReport& r) {
  os << "s,omega_margin,abs_value,re,im\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < r.s.size(); ++i) {
    os << r.s[i] << ',' << r.omega_margin[i] << ',' << std::abs(r.value[i]) << ',' << r.value[i].real() << ','
       << r.value[i].imag() << '\n';
  }
}

}  // namespace crownlab
