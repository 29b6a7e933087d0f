#pragma once

#include <vector>

#include "crownlab/hcseries.hpp"
#include "crownlab/rootsys.hpp"

namespace crownlab {

/// Gindikin-Karpelevich c-function of a reduced root system,
///   c(lambda) = c0 * prod_{a>0} 2^{-x_a} Gamma(x_a)
///                 / (Gamma((m_a/2 + 1 + x_a)/2) Gamma((m_a/2 + x_a)/2)),
/// with x_a = <lambda, a> / <a, a>. The normalization c0 defaults to the one
/// with c(rho) = 1.
struct CFunctionSpec {
  const RootSystem* root_system = nullptr;
  cplx c0{1.0, 0.0};
};

CFunctionSpec make_cfunction(const RootSystem& rs);

/// c0 for which c(rho) = 1.
cplx unit_rho_normalization(const RootSystem& rs);

/// log c(lambda), the imaginary part defined modulo 2 pi. Stays finite where
/// c itself would underflow (large imaginary parameters).
cplx log_c_function(const CFunctionSpec& spec, const ComplexVec& lambda);

/// Throws NumericalGuard(PoleProximity) when a Gamma argument is within 1e-8
/// of a nonpositive integer.
cplx c_function(const CFunctionSpec& spec, const ComplexVec& lambda);

struct DecayFit {
  double exponent = 0.0;  // p-hat, with |c(t l0)| ~ t^{-p-hat}
  double residual = 0.0;  // rms residual of the log-log fit
};

/// Least-squares fit of log|c(t lambda0)| against log t.
DecayFit decay_exponent_fit(const CFunctionSpec& spec, const ComplexVec& lambda0, const std::vector<double>& t_grid);

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

/// Slope and rms residual of the least-squares line through (x, y).
DecayFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace crownlab
