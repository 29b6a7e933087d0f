#include "crownlab/special.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "crownlab/errors.hpp"

namespace crownlab {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log(sin(pi z)) without overflow for large |Im z|.
cplx log_sin_pi(cplx z) {
  const cplx ipz = cplx(0.0, kPi) * z;
  if (std::abs(z.imag()) < 20.0) return std::log(std::sin(kPi * z));
  if (z.imag() > 0) {
    // sin(pi z) = (e^{-i pi z} / (2i)) * (1 - e^{2 i pi z})
    return -ipz + std::log((1.0 - std::exp(2.0 * ipz)) / cplx(0.0, 2.0));
  }
  // sin(pi z) = (e^{i pi z} / (2i)) * (e^{-2 i pi z} - 1)
  return ipz + std::log((std::exp(-2.0 * ipz) - 1.0) / cplx(0.0, 2.0));
}

void guard_pole(cplx z, double guard) {
  if (z.real() > 0.5) return;
  const double n = std::round(z.real());
  if (n <= 0 && std::abs(z - cplx(n, 0.0)) < guard) {
    throw NumericalGuard(ErrorKind::PoleProximity,
                         "Gamma argument within " + std::to_string(guard) + " of pole " + std::to_string(n));
  }
}

template <int Order>
void append_gauss(double a, double b, QuadratureRule& out) {
  using rule = boost::math::quadrature::gauss<double, Order>;
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  // Boost stores the non-negative half of a symmetric rule.
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      out.nodes.push_back(mid);
      out.weights.push_back(half * w[i]);
      continue;
    }
    out.nodes.push_back(mid - half * x[i]);
    out.weights.push_back(half * w[i]);
    out.nodes.push_back(mid + half * x[i]);
    out.weights.push_back(half * w[i]);
  }
}

void append_rule(double a, double b, int order, QuadratureRule& out) {
  switch (order) {
    case 8: append_gauss<8>(a, b, out); break;
    case 16: append_gauss<16>(a, b, out); break;
    case 20: append_gauss<20>(a, b, out); break;
    case 32: append_gauss<32>(a, b, out); break;
    default: throw std::invalid_argument("gauss_legendre: unsupported order " + std::to_string(order));
  }
}

}  // namespace

cplx log_gamma(cplx z, double pole_guard) {
  guard_pole(z, pole_guard);
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  return std::log(kPi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
}

cplx gamma(cplx z, double pole_guard) { return std::exp(log_gamma(z, pole_guard)); }

QuadratureRule gauss_legendre(double a, double b, int order) {
  QuadratureRule r;
  append_rule(a, b, order, r);
  return r;
}

QuadratureRule composite_gauss_legendre(double a, double b, int panels, int order) {
  if (panels < 1) throw std::invalid_argument("composite_gauss_legendre: panels < 1");
  QuadratureRule r;
  r.nodes.reserve(static_cast<std::size_t>(panels) * order);
  r.weights.reserve(static_cast<std::size_t>(panels) * order);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) append_rule(a + p * h, a + (p + 1) * h, order, r);
  return r;
}

}  // namespace crownlab
