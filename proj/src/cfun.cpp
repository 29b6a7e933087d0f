#include "crownlab/cfun.hpp"

#include <cmath>
#include <stdexcept>

#include "crownlab/special.hpp"

namespace crownlab {

namespace {

cplx log_product(const RootSystem& rs, const ComplexVec& lambda) {
  if (lambda.size() != rs.ambient_dim) throw std::invalid_argument("c-function: dimension mismatch");
  const double ln2 = std::log(2.0);
  cplx acc{0.0, 0.0};
  for (int j = 0; j < rs.num_positive(); ++j) {
    const RealVec& a = rs.positive_roots[j];
    const cplx x = a.cast<cplx>().dot(lambda) / a.squaredNorm();
    const double half_m = 0.5 * rs.multiplicities[j];
    acc += -x * ln2 + log_gamma(x) - log_gamma(0.5 * (half_m + 1.0 + x)) - log_gamma(0.5 * (half_m + x));
  }
  return acc;
}

}  // namespace

cplx unit_rho_normalization(const RootSystem& rs) {
  return std::exp(-log_product(rs, rs.rho.cast<cplx>()));
}

CFunctionSpec make_cfunction(const RootSystem& rs) { return {&rs, unit_rho_normalization(rs)}; }

cplx log_c_function(const CFunctionSpec& spec, const ComplexVec& lambda) {
  return std::log(spec.c0) + log_product(*spec.root_system, lambda);
}

cplx c_function(const CFunctionSpec& spec, const ComplexVec& lambda) {
  return std::exp(log_c_function(spec, lambda));
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (n < 2 || !(lo > 0) || !(hi > lo)) throw std::invalid_argument("log_grid: bad range");
  std::vector<double> g(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

DecayFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  double rss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (my + slope * (x[i] - mx));
    rss += r * r;
  }
  return {slope, std::sqrt(rss / n)};
}

DecayFit decay_exponent_fit(const CFunctionSpec& spec, const ComplexVec& lambda0, const std::vector<double>& t_grid) {
  if (t_grid.size() < 8) throw std::invalid_argument("decay_exponent_fit: need at least 8 grid points");
  std::vector<double> lx, ly;
  for (double t : t_grid) {
    lx.push_back(std::log(t));
    ly.push_back(log_c_function(spec, t * lambda0).real());
  }
  DecayFit fit = linear_fit(lx, ly);
  fit.exponent = -fit.exponent;
  return fit;
}

}  // namespace crownlab
