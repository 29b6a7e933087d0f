#pragma once

#include <vector>

#include "crownlab/cfun.hpp"
#include "crownlab/hcseries.hpp"
#include "crownlab/rootsys.hpp"

namespace crownlab {

/// Middle component of z = n a^2 n' with n upper unipotent and n' lower
/// unipotent (n' = n^t for symmetric z). a_log = log a.
struct HorosphericalCoords {
  ComplexVec a_log;
  bool valid = false;               // Im a_log lies in Omega
  double omega_margin = 0.0;        // type A margin of Im a_log
  double reconstruction_residual = 0.0;
};

/// The diagonal entries of a^2 are ratios of consecutive principal minors
/// anchored at the bottom-right corner: d_j = M_j / M_{j+1} with
/// M_j = det Z[j.., j..]. Logs use the principal branch per entry.
///
/// Throws NumericalGuard(MinorVanishes) for a (numerically) vanishing minor
/// and NumericalGuard(BranchAmbiguity) when some d_j has argument within
/// 1e-6 of +-pi.
HorosphericalCoords horospherical_a(const ComplexMat& Z);

/// pi/2 - max_{i,j} |c_i - c_j|, the Omega margin of a type A vector.
double type_a_omega_margin(const RealVec& c);

struct SeriesValue {
  cplx value;
  // value = scaled * e^{log_scale}; use the scaled pair where value overflows.
  cplx scaled;
  double log_scale = 0.0;
  double error_bound = 0.0;  // sum of per-term heuristic tails
  bool converged = false;
};

/// phi_lambda(a) = sum_w c(w lambda) a^{w lambda - rho} Psi_{w lambda}(a) for
/// a = exp(H + iC), H strictly dominant.
SeriesValue spherical_series(const RootSystem& rs, const CFunctionSpec& cspec, const SpectralParameter& lambda,
                             const ToralPoint& a, int max_degree);

enum class RankOneGroup { SL2R, SL2C };

/// A1 root system of the group: multiplicity 1 for SL(2,R), 2 for SL(2,C).
const RootSystem& rank_one_root_system(RankOneGroup group);

/// Point g exp(iY).x_o as a matrix: g e^{2iY} g^t (SL2R) or g e^{2iY} g^* (SL2C).
ComplexMat crown_point_matrix(RankOneGroup group, const ComplexMat& g, const RealVec& Y);

/// u = (1/2) log d_2 of k.Z at every node of a K-quadrature rule, so that
/// log a(k.z) = (-u, u). SL2R integrates over SO(2) with a composite
/// Gauss-Legendre rule (32 * panels nodes on [0, pi)). SL2C integrates over
/// SU(2) in Euler angles: Gauss-Legendre in cos(theta) (32 * panels nodes)
/// times uniform rules of 16 * panels points in each of the two angles.
struct KOrbitSample {
  std::vector<double> weights;
  std::vector<cplx> u;
};

KOrbitSample sample_k_orbit(RankOneGroup group, const ComplexMat& Z, int panels);

/// sum_k w_k exp(sigma(log a(k.z))) for a rank-one exponent sigma.
cplx integrate_character(const KOrbitSample& sample, const ComplexVec& sigma);

struct IntegralOptions {
  int initial_panels = 8;  // 256 nodes on SO(2)
  int max_panels = 1 << 14;
  double rel_tol = 1e-8;
};

struct IntegralValue {
  cplx value;
  int panels = 0;
  double rel_change = 0.0;
};

/// phi_lambda(g exp(iY).x_o) = int_K a(k g exp(iY))^{rho - lambda} dk, refined
/// by doubling until two successive values agree to rel_tol. Throws
/// NumericalGuard(QuadratureUnconverged) if max_panels is reached first.
IntegralValue spherical_integral(RankOneGroup group, const SpectralParameter& lambda, const ComplexMat& g,
                                 const RealVec& Y, const IntegralOptions& opts = {});

/// c0 that makes the series agree with the K-integral at exp(H_ref),
/// lambda_ref.
cplx calibrate_c0(RankOneGroup group, const RealVec& H_ref, const SpectralParameter& lambda_ref,
                  int max_degree = 40);

/// sup_w e^{i t lambda0(wY)} for imaginary lambda0 (the exponent is real).
double weyl_sup_exponential(const RootSystem& rs, const ComplexVec& lambda, const RealVec& Y);
double log_weyl_sup_exponential(const RootSystem& rs, const ComplexVec& lambda, const RealVec& Y);

struct UpperBoundReport {
  std::vector<double> t;
  std::vector<double> ratio;
  double sup = 0.0;
  double tail_slope = 0.0;  // d log r / d log t over the upper half of the grid
  bool bounded = false;     // finite sup and tail_slope <= 0.1
};

UpperBoundReport upper_bound_ratio(RankOneGroup group, const SpectralParameter& lambda0,
                                   const std::vector<double>& t_grid, const ComplexMat& g, const RealVec& Y,
                                   const IntegralOptions& opts = {});

struct LowerBoundReport {
  std::vector<double> t;
  std::vector<double> ratio;
  double p = 0.0;          // dim N / 2
  double slope = 0.0;      // fitted over the upper half of the grid
  double min_scaled = 0.0; // min_t ratio(t) * t^p
  bool success = false;    // slope >= -p - 0.1 and min_scaled > 0
  bool degenerate = false; // ratio decays faster than t^{-p-0.1}
};

/// Evaluates |phi_{t lambda0}(exp(H + iZ))| / sup_w e^{i t lambda0(wZ)} via the
/// series. Degenerate samples are reported, not thrown.
LowerBoundReport lower_bound_ratio(const RootSystem& rs, const CFunctionSpec& cspec,
                                   const SpectralParameter& lambda0, const std::vector<double>& t_grid,
                                   const RealVec& H, const RealVec& Z, int max_degree);

}  // namespace crownlab
