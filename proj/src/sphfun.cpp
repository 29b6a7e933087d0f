#include "crownlab/sphfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "crownlab/errors.hpp"
#include "crownlab/special.hpp"

namespace crownlab {

namespace {

constexpr double kBranchGuard = 1e-6;

void guard_branch(cplx d, const char* where) {
  if (std::abs(d) == 0.0 || !std::isfinite(std::abs(d))) {
    throw NumericalGuard(ErrorKind::MinorVanishes, std::string(where) + ": vanishing minor ratio");
  }
  if (kPi - std::abs(std::arg(d)) < kBranchGuard) {
    throw NumericalGuard(ErrorKind::BranchAmbiguity, std::string(where) + ": minor ratio on the branch cut");
  }
}

}  // namespace

double type_a_omega_margin(const RealVec& c) {
  return kPi / 2 - (c.maxCoeff() - c.minCoeff());
}

HorosphericalCoords horospherical_a(const ComplexMat& Z) {
  const Eigen::Index n = Z.rows();
  if (Z.cols() != n || n < 1) throw std::invalid_argument("horospherical_a: square matrix expected");
  const double scale = std::max(Z.cwiseAbs().maxCoeff(), 1e-300);

  // Bottom-right principal minors M_j, with M_n = 1.
  std::vector<cplx> minors(n + 1);
  minors[n] = 1.0;
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    const Eigen::Index k = n - j;
    minors[j] = Z.bottomRightCorner(k, k).determinant();
    if (std::abs(minors[j]) < 1e-13 * std::pow(scale, static_cast<double>(k))) {
      throw NumericalGuard(ErrorKind::MinorVanishes, "principal minor of order " + std::to_string(k) + " vanishes");
    }
  }

  HorosphericalCoords out;
  out.a_log.resize(n);
  RealVec im(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx d = minors[j] / minors[j + 1];
    guard_branch(d, "horospherical_a");
    out.a_log(j) = 0.5 * std::log(d);
    im(j) = out.a_log(j).imag();
  }
  out.omega_margin = type_a_omega_margin(im);
  out.valid = out.omega_margin > 0.0;

  // Reconstruction: reversing the index order turns Z = U D L into an
  // unpivoted L' D U' factorization.
  ComplexMat R = Z.reverse();
  ComplexMat L = ComplexMat::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = k + 1; i < n; ++i) {
      L(i, k) = R(i, k) / R(k, k);
      R.row(i) -= L(i, k) * R.row(k);
    }
  }
  const ComplexMat recon = (L * R).reverse();
  out.reconstruction_residual = (recon - Z).norm() / Z.norm();
  return out;
}

SeriesValue spherical_series(const RootSystem& rs, const CFunctionSpec& cspec, const SpectralParameter& lambda,
                             const ToralPoint& a, int max_degree) {
  const ComplexVec loga = a.H.cast<cplx>() + cplx(0.0, 1.0) * a.C.cast<cplx>();
  const ComplexVec rho = rs.rho.cast<cplx>();

  struct Term {
    cplx log_prefactor;
    PsiValue psi;
  };
  std::vector<Term> terms;
  terms.reserve(rs.weyl_group.size());
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& w : rs.weyl_group) {
    const ComplexVec wl = w.cast<cplx>() * lambda.coords;
    const auto table = gamma_coeffs(rs, SpectralParameter::make(rs, wl), max_degree);
    Term t{log_c_function(cspec, wl) + (wl - rho).cwiseProduct(loga).sum(), psi(table, a)};
    shift = std::max(shift, t.log_prefactor.real());
    terms.push_back(t);
  }

  SeriesValue out;
  out.log_scale = shift;
  out.scaled = 0.0;
  double err = 0.0;
  bool converged = true;
  for (const auto& t : terms) {
    const cplx pre = std::exp(t.log_prefactor - shift);
    out.scaled += pre * t.psi.value;
    err += std::abs(pre) * t.psi.tail_estimate;
    converged = converged && t.psi.converged;
  }
  const double s = std::exp(shift);
  out.value = out.scaled * s;
  out.error_bound = err * s;
  out.converged = converged;
  return out;
}

const RootSystem& rank_one_root_system(RankOneGroup group) {
  static const RootSystem split = build_root_system(RootFamily::TypeASplit, 2);
  static const RootSystem complex = build_root_system(RootFamily::TypeAComplex, 2);
  return group == RankOneGroup::SL2R ? split : complex;
}

ComplexMat crown_point_matrix(RankOneGroup group, const ComplexMat& g, const RealVec& Y) {
  ComplexVec e(Y.size());
  for (Eigen::Index i = 0; i < Y.size(); ++i) e(i) = std::exp(cplx(0.0, 2.0 * Y(i)));
  const ComplexMat ge = g * e.asDiagonal();
  return group == RankOneGroup::SL2R ? ComplexMat(ge * g.transpose()) : ComplexMat(ge * g.adjoint());
}

KOrbitSample sample_k_orbit(RankOneGroup group, const ComplexMat& Z, int panels) {
  if (Z.rows() != 2 || Z.cols() != 2) throw std::invalid_argument("sample_k_orbit: 2x2 matrix expected");
  KOrbitSample out;
  auto push = [&](double w, cplx d2) {
    guard_branch(d2, "K-integral node");
    if (std::abs(std::arg(d2)) >= kPi / 2) {
      throw NumericalGuard(ErrorKind::BranchAmbiguity, "K-integral node outside the crown chart");
    }
    out.weights.push_back(w);
    out.u.push_back(0.5 * std::log(d2));
  };

  if (group == RankOneGroup::SL2R) {
    const auto rule = composite_gauss_legendre(0.0, kPi, panels, 32);
    out.weights.reserve(rule.nodes.size());
    out.u.reserve(rule.nodes.size());
    const cplx off = Z(0, 1) + Z(1, 0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double s = std::sin(rule.nodes[i]);
      const double c = std::cos(rule.nodes[i]);
      push(rule.weights[i] / kPi, s * s * Z(0, 0) + s * c * off + c * c * Z(1, 1));
    }
    return out;
  }

  // SU(2) = {[[a, b], [-conj(b), conj(a)]]}, a = e^{i(phi+psi)/2} cos(theta/2),
  // b = e^{i(phi-psi)/2} sin(theta/2); normalized Haar measure
  // sin(theta) dtheta dphi dpsi / (16 pi^2) on [0,pi] x [0,2pi) x [0,4pi).
  const auto rule = composite_gauss_legendre(-1.0, 1.0, panels, 32);
  const int nang = 16 * panels;
  out.weights.reserve(rule.nodes.size() * nang * nang);
  out.u.reserve(rule.nodes.size() * nang * nang);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    const double ch = std::sqrt(0.5 * (1.0 + x));
    const double sh = std::sqrt(0.5 * (1.0 - x));
    const double w = 0.5 * rule.weights[i] / (static_cast<double>(nang) * nang);
    for (int jp = 0; jp < nang; ++jp) {
      const double phi = 2.0 * kPi * jp / nang;
      for (int jq = 0; jq < nang; ++jq) {
        const double psi_angle = 4.0 * kPi * jq / nang;
        const cplx a = std::polar(ch, 0.5 * (phi + psi_angle));
        const cplx b = std::polar(sh, 0.5 * (phi - psi_angle));
        const cplx r0 = -std::conj(b);
        const cplx r1 = std::conj(a);
        const cplx d2 = r0 * Z(0, 0) * std::conj(r0) + r0 * Z(0, 1) * std::conj(r1) +
                        r1 * Z(1, 0) * std::conj(r0) + r1 * Z(1, 1) * std::conj(r1);
        push(w, d2);
      }
    }
  }
  return out;
}

namespace {

struct CharacterSum {
  cplx value;
  double mass;  // sum of w |f|, the scale of accumulated rounding
};

CharacterSum sum_character(const KOrbitSample& sample, const ComplexVec& sigma) {
  // log a = (-u, u)
  const cplx coef = sigma(1) - sigma(0);
  CharacterSum out{{0.0, 0.0}, 0.0};
  for (std::size_t i = 0; i < sample.u.size(); ++i) {
    const cplx term = sample.weights[i] * std::exp(coef * sample.u[i]);
    out.value += term;
    out.mass += std::abs(term);
  }
  return out;
}

}  // namespace

cplx integrate_character(const KOrbitSample& sample, const ComplexVec& sigma) {
  return sum_character(sample, sigma).value;
}

IntegralValue spherical_integral(RankOneGroup group, const SpectralParameter& lambda, const ComplexMat& g,
                                 const RealVec& Y, const IntegralOptions& opts) {
  const RootSystem& rs = rank_one_root_system(group);
  if (lambda.coords.size() != 2 || Y.size() != 2 || g.rows() != 2 || g.cols() != 2) {
    throw std::invalid_argument("spherical_integral: rank-one data expected");
  }
  const ComplexMat Z = crown_point_matrix(group, g, Y);
  const ComplexVec sigma = rs.rho.cast<cplx>() - lambda.coords;

  // The SU(2) rule has 8192 * panels^3 nodes; start it coarser.
  int panels = group == RankOneGroup::SL2R ? opts.initial_panels : std::max(1, opts.initial_panels / 8);
  const int max_panels = group == RankOneGroup::SL2R ? opts.max_panels : std::max(2, opts.max_panels / 256);
  cplx prev = integrate_character(sample_k_orbit(group, Z, panels), sigma);
  while (panels * 2 <= max_panels) {
    panels *= 2;
    const auto sum = sum_character(sample_k_orbit(group, Z, panels), sigma);
    const cplx cur = sum.value;
    const double change = std::abs(cur - prev);
    // under heavy cancellation |cur| << mass and only the rounding floor is reachable
    const double floor = 1e3 * std::numeric_limits<double>::epsilon() * sum.mass;
    if (change <= opts.rel_tol * std::abs(cur) + floor) {
      return {cur, panels, std::abs(cur) > 0 ? change / std::abs(cur) : 0.0};
    }
    prev = cur;
  }
  throw NumericalGuard(ErrorKind::QuadratureUnconverged,
                       "K-integral did not settle to " + std::to_string(opts.rel_tol) + " within " +
                           std::to_string(max_panels) + " panels");
}

cplx calibrate_c0(RankOneGroup group, const RealVec& H_ref, const SpectralParameter& lambda_ref, int max_degree) {
  const RootSystem& rs = rank_one_root_system(group);
  const CFunctionSpec bare{&rs, cplx(1.0, 0.0)};
  const auto series = spherical_series(rs, bare, lambda_ref, {H_ref, RealVec::Zero(2)}, max_degree);
  ComplexMat g = ComplexMat::Zero(2, 2);
  g(0, 0) = std::exp(H_ref(0));
  g(1, 1) = std::exp(H_ref(1));
  const auto integral = spherical_integral(group, lambda_ref, g, RealVec::Zero(2));
  return integral.value / series.value;
}

double weyl_sup_exponential(const RootSystem& rs, const ComplexVec& lambda, const RealVec& Y) {
  return std::exp(log_weyl_sup_exponential(rs, lambda, Y));
}

double log_weyl_sup_exponential(const RootSystem& rs, const ComplexVec& lambda, const RealVec& Y) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& w : rs.weyl_group) {
    const RealVec wy = w * Y;
    const cplx e = cplx(0.0, 1.0) * lambda.cwiseProduct(wy.cast<cplx>()).sum();
    best = std::max(best, e.real());
  }
  return best;
}

UpperBoundReport upper_bound_ratio(RankOneGroup group, const SpectralParameter& lambda0,
                                   const std::vector<double>& t_grid, const ComplexMat& g, const RealVec& Y,
                                   const IntegralOptions& opts) {
  const RootSystem& rs = rank_one_root_system(group);
  UpperBoundReport rep;
  for (double t : t_grid) {
    if (!(t > 0)) throw std::invalid_argument("upper_bound_ratio: t must be positive");
    const auto lam = SpectralParameter::make(rs, t * lambda0.coords);
    const auto val = spherical_integral(group, lam, g, Y, opts);
    const double r = std::exp(std::log(std::abs(val.value)) - log_weyl_sup_exponential(rs, lam.coords, Y));
    rep.t.push_back(t);
    rep.ratio.push_back(r);
    rep.sup = std::max(rep.sup, r);
  }
  const std::size_t half = rep.t.size() / 2;
  std::vector<double> lx, ly;
  for (std::size_t i = half; i < rep.t.size(); ++i) {
    lx.push_back(std::log(rep.t[i]));
    ly.push_back(std::log(rep.ratio[i]));
  }
  rep.tail_slope = lx.size() >= 2 ? linear_fit(lx, ly).exponent : 0.0;
  rep.bounded = std::isfinite(rep.sup) && rep.tail_slope <= 0.1;
  return rep;
}

LowerBoundReport lower_bound_ratio(const RootSystem& rs, const CFunctionSpec& cspec,
                                   const SpectralParameter& lambda0, const std::vector<double>& t_grid,
                                   const RealVec& H, const RealVec& Z, int max_degree) {
  LowerBoundReport rep;
  rep.p = 0.5 * rs.dim_n();
  std::vector<double> log_ratio;
  for (double t : t_grid) {
    if (!(t > 0)) throw std::invalid_argument("lower_bound_ratio: t must be positive");
    const auto lam = SpectralParameter::make(rs, t * lambda0.coords);
    const auto val = spherical_series(rs, cspec, lam, {H, Z}, max_degree);
    const double lr = std::log(std::abs(val.scaled)) + val.log_scale - log_weyl_sup_exponential(rs, lam.coords, Z);
    rep.t.push_back(t);
    rep.ratio.push_back(std::exp(lr));
    log_ratio.push_back(lr);
  }
  const std::size_t half = rep.t.size() / 2;
  std::vector<double> lx, ly;
  rep.min_scaled = std::numeric_limits<double>::infinity();
  for (std::size_t i = half; i < rep.t.size(); ++i) {
    lx.push_back(std::log(rep.t[i]));
    ly.push_back(log_ratio[i]);
    rep.min_scaled = std::min(rep.min_scaled, std::exp(log_ratio[i] + rep.p * std::log(rep.t[i])));
  }
  rep.slope = linear_fit(lx, ly).exponent;
  rep.degenerate = rep.slope < -rep.p - 0.1;
  rep.success = !rep.degenerate && rep.min_scaled > 0.0 && std::isfinite(rep.min_scaled);
  return rep;
}

}  // namespace crownlab
