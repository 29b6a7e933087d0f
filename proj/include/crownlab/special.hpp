#pragma once

#include <vector>

#include "crownlab/types.hpp"

namespace crownlab {

/// Principal-ish complex log-Gamma: Lanczos (g = 7, nine terms) for
/// Re z >= 1/2 and the reflection formula below that. The imaginary part is
/// only defined modulo 2*pi; exponentiate before comparing phases.
/// Throws NumericalGuard(PoleProximity) within pole_guard of a pole.
cplx log_gamma(cplx z, double pole_guard = 1e-8);

/// exp(log_gamma(z)).
cplx gamma(cplx z, double pole_guard = 1e-8);

/// Nodes and weights of a rule on [a, b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Composite Gauss-Legendre rule: `panels` equal panels of `order` points.
/// Supported orders: 8, 16, 20, 32.
QuadratureRule composite_gauss_legendre(double a, double b, int panels, int order = 32);

/// Plain Gauss-Legendre rule of the given order on [a, b].
QuadratureRule gauss_legendre(double a, double b, int order);

}  // namespace crownlab
