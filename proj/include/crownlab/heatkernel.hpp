#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "crownlab/sphfun.hpp"
#include "crownlab/types.hpp"

namespace crownlab {

/// Heat kernel of SL(2,R)/SO(2), the hyperbolic plane of curvature -1
/// (distance r from the base point satisfies cosh r = tr(Z)/2), through its
/// spectral resolution
///   rho_t(z) = c * int_0^inf e^{-t(nu^2 + 1/4)} phi_{i nu}(z) nu tanh(pi nu) dnu,
/// where nu tanh(pi nu) / pi is |c(i nu)|^{-2} and phi_{i nu} is the
/// K-integral at lambda = (i nu, -i nu).
struct HeatEvalSpec {
  double t = 1.0;
  double spectral_cutoff = 0.0;  // 0: heat_cutoff(t)
  int k_panels = 8;              // starting SO(2) panels (32 nodes each)
  int nu_panels = 4;             // starting spectral panels (32 nodes each)
  double rel_tol = 1e-7;
  double normalization = 0.0;    // 0: heat_normalization()
};

/// Lambda with t Lambda^2 - pi Lambda / 2 = 30: past it the integrand,
/// which can grow like e^{pi nu / 2} on the crown, is below e^{-30}.
double heat_cutoff(double t);

struct HeatValue {
  cplx value;
  int k_panels = 0;
  int nu_panels = 0;
  double rel_change = 0.0;
};

/// Throws NumericalGuard(QuadratureUnconverged) when refining either rule
/// changes the value by more than rel_tol.
HeatValue heat_kernel_continued(const HeatEvalSpec& spec, const ComplexMat& g, const RealVec& Y);

/// Independent closed form for curvature -1:
///   p_t(r) = sqrt(2) e^{-t/4} / (4 pi t)^{3/2} int_r^inf s e^{-s^2/4t} / sqrt(cosh s - cosh r) ds.
double hyperbolic_plane_heat_kernel(double t, double r);

/// Constant c above, fixed by matching the spectral integral with
/// hyperbolic_plane_heat_kernel at t = 1, r = 0.5 (computed once).
double heat_normalization();
double calibrate_heat_normalization(double t, double r);

/// Distance from the base point of the real point g.x_o.
double real_radius(const ComplexMat& g);

enum class ScanKind { Spherical, Heat };
enum class Trend { BoundedPlateau, Growing };

std::string to_string(ScanKind k);
std::string to_string(Trend t);

/// Y(s) = s * (pi/4, -pi/4) for s in [0, 1); the Omega margin of Y(s) is
/// (pi/2)(1 - s). Points are placed at geometrically shrinking margins from
/// start_margin down to end_margin.
struct ScanPath {
  ComplexMat g = ComplexMat::Identity(2, 2);
  double start_margin = 0.5;
  double end_margin = 1e-3;
  int points = 12;
};

struct ScanReport {
  ScanKind kind = ScanKind::Spherical;
  std::vector<double> s;             // path parameter, increasing
  std::vector<double> omega_margin;
  std::vector<cplx> value;
  double sup = 0.0;
  double argsup = 0.0;               // path parameter at the sup
  double tail_slope = 0.0;           // d log|v| / d log(1/margin), last half
  Trend trend = Trend::BoundedPlateau;
  bool truncated = false;            // path left the validity region
  std::string note;
};

/// Points whose Omega margin falls below 1e-4, or whose evaluation trips a
/// branch guard, end the scan with truncated = true.
ScanReport boundedness_scan(ScanKind kind, double lambda_nu_or_t, const ScanPath& path,
                            const IntegralOptions& opts = {});

/// Columns: s,omega_margin,abs_value,re,im
void write_scan_csv(std::ostream& os, const ScanReport& r);

}  // namespace crownlab
