#include <doctest.h>

#include <cmath>

#include "crownlab/errors.hpp"
#include "crownlab/hcseries.hpp"
#include "crownlab/rng.hpp"
#include "oracles.hpp"

using namespace crownlab;

namespace {

Eigen::VectorXi ks(std::initializer_list<int> v) {
  Eigen::VectorXi r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (int x : v) r(i++) = x;
  return r;
}

ComplexVec a1_lambda(cplx s) { return (ComplexVec(2) << s, -s).finished(); }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("A1 low-order coefficients") {
  for (int m : {1, 2}) {
    const auto rs = build_root_system(m == 1 ? RootFamily::TypeASplit : RootFamily::TypeAComplex, 2);
    const cplx s(0.0, 1.0);  // lambda = i alpha
    const auto table = gamma_coeffs(rs, SpectralParameter::make(rs, a1_lambda(s)), 6);
    CHECK(table.value(ks({0})) == cplx(1.0, 0.0));
    CHECK(std::abs(table.value(ks({1}))) == 0.0);
    // one step by hand: (8 - 8s) Gamma_2 = 2m (m - 2s)
    const cplx hand = 2.0 * m * (cplx(m) - 2.0 * s) / (8.0 - 8.0 * s);
    CHECK(std::abs(table.value(ks({2})) - hand) < 1e-15);
  }
  // SL(2,C): Gamma_{2 alpha} = 1 for every s
  const auto c2 = build_root_system(RootFamily::TypeAComplex, 2);
  const auto t2 = gamma_coeffs(c2, SpectralParameter::make(c2, a1_lambda({0.3, 2.1})), 4);
  CHECK(std::abs(t2.value(ks({2})) - 1.0) < 1e-14);
  CHECK(t2.index_of(ks({5})) == -1);
  CHECK(t2.index_of(ks({-1})) == -1);
}

TEST_CASE("A1 coefficients match the symbolic unroll") {
  TrialRng rng(5, 0);
  for (int m : {1, 2}) {
    const auto rs = build_root_system(m == 1 ? RootFamily::TypeASplit : RootFamily::TypeAComplex, 2);
    for (int trial = 0; trial < 10; ++trial) {
      const cplx s(rng.uniform(-0.4, 0.4), rng.uniform(0.2, 5.0));
      const auto table = gamma_coeffs(rs, SpectralParameter::make(rs, a1_lambda(s)), 6);
      const auto ref = oracle::a1_unrolled_gamma(m, s, 6);
      for (int k = 0; k <= 6; ++k) {
        const cplx v = table.value(ks({k}));
        CHECK(std::abs(v - ref[k]) <= 1e-12 * std::max(std::abs(ref[k]), 1e-300) + (ref[k] == 0.0 ? 1e-300 : 0.0));
      }
    }
  }
}

TEST_CASE("parity: odd multiples of alpha vanish") {
  for (int m : {1, 2}) {
    const auto rs = build_root_system(m == 1 ? RootFamily::TypeASplit : RootFamily::TypeAComplex, 2);
    const auto table = gamma_coeffs(rs, SpectralParameter::make(rs, a1_lambda({0.0, 1.7})), 40);
    const auto lim = limit_coeffs(rs, SpectralParameter::make(rs, a1_lambda({0.0, 1.7})), 40);
    for (int k = 1; k <= 40; k += 2) {
      CHECK(table.value(ks({k})) == cplx(0.0, 0.0));
      CHECK(lim.value(ks({k})) == cplx(0.0, 0.0));
    }
  }
}

TEST_CASE("singular denominator is reported") {
  const auto rs = build_root_system(RootFamily::TypeASplit, 2);
  const auto lam = SpectralParameter::make(rs, a1_lambda(1.0));
  try {
    gamma_coeffs(rs, lam, 4);
    FAIL("expected SingularRecursion");
  } catch (const NumericalGuard& e) {
    CHECK(e.kind() == ErrorKind::SingularRecursion);
  }
  // a small perturbation is fine
  CHECK_NOTHROW(gamma_coeffs(rs, SpectralParameter::make(rs, a1_lambda({1.0, 1e-6})), 4));
}

TEST_CASE("limit table") {
  for (int n : {2, 3}) {
    const auto rs = build_root_system(RootFamily::TypeASplit, n);
    RealVec nu = n == 2 ? (RealVec(2) << 1.0, -1.0).finished() : (RealVec(3) << 1.37, 0.21, -1.58).finished();
    const auto l0 = SpectralParameter::imaginary(rs, nu);
    const auto lim = limit_coeffs(rs, l0, 12);
    CHECK(lim.entries()[0].value == cplx(1.0, 0.0));
    const auto far = gamma_coeffs(rs, SpectralParameter::make(rs, 1e6 * l0.coords), 12);
    REQUIRE(far.entries().size() == lim.entries().size());
    for (std::size_t i = 0; i < lim.entries().size(); ++i) {
      const cplx a = far.entries()[i].value, b = lim.entries()[i].value;
      CHECK(std::abs(a - b) <= 1e-4 * std::max(1.0, std::abs(b)));
    }
    // bounded in t along the ray
    double worst = 0;
    for (double t : {1.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6}) {
      const auto tab = gamma_coeffs(rs, SpectralParameter::make(rs, t * l0.coords), 8);
      for (const auto& e : tab.entries()) worst = std::max(worst, std::abs(e.value));
    }
    CHECK(std::isfinite(worst));
  }
  // A1 closed form of the limit: <2a, l0> Gamma = m <a,l0> => Gamma_{2a}[l0] = m/2
  const auto rs = build_root_system(RootFamily::TypeASplit, 2);
  const auto lim = limit_coeffs(rs, SpectralParameter::imaginary(rs, (RealVec(2) << 0.8, -0.8).finished()), 4);
  CHECK(std::abs(lim.value(ks({2})) - 0.5) < 1e-15);
  const auto far = gamma_coeffs(rs, SpectralParameter::make(rs, a1_lambda({0.0, 0.8e6})), 4);
  CHECK(std::abs(far.value(ks({2})) - 0.5) < 1e-5 * 0.5);
}

TEST_CASE("A2 table structure") {
  const auto rs = build_root_system(RootFamily::TypeASplit, 3);
  const auto lam = SpectralParameter::imaginary(rs, (RealVec(3) << 1.37, 0.21, -1.58).finished());
  const auto table = gamma_coeffs(rs, lam, 10);
  // (d + 1) coefficient vectors per degree d
  CHECK(table.entries().size() == 66u);
  int prev = 0;
  for (const auto& e : table.entries()) {
    CHECK(e.degree >= prev);
    prev = e.degree;
    CHECK(e.coeffs.sum() == e.degree);
  }
  // the odd-degree entries along a single simple root direction vanish
  CHECK(table.value(ks({1, 0})) == cplx(0.0, 0.0));
  CHECK(table.value(ks({3, 0})) == cplx(0.0, 0.0));
  CHECK(std::abs(table.value(ks({2, 0}))) > 0.0);
}

TEST_CASE("psi") {
  const auto rs = build_root_system(RootFamily::TypeASplit, 2);
  const auto lam = SpectralParameter::make(rs, a1_lambda({0.0, 1.3}));
  const ToralPoint a{(RealVec(2) << 0.6, -0.6).finished(), (RealVec(2) << 0.2, -0.2).finished()};

  const auto t0 = gamma_coeffs(rs, lam, 0);
  CHECK(psi(t0, a).value == cplx(1.0, 0.0));

  const ToralPoint far{(RealVec(2) << 5.0, -5.0).finished(), RealVec::Zero(2)};
  const auto t40 = gamma_coeffs(rs, lam, 40);
  CHECK(std::abs(psi(t40, far).value - 1.0) < 1e-3);

  // truncation monotonicity
  for (int d : {4, 8, 12, 20}) {
    const auto td = gamma_coeffs(rs, lam, d);
    const auto pd = psi(td, a);
    for (int d2 : {d + 2, d + 10, 40}) {
      const auto p2 = psi(gamma_coeffs(rs, lam, d2), a);
      CHECK(std::abs(p2.value - pd.value) <= pd.tail_estimate);
    }
  }
  CHECK(psi(t40, a).converged);

  const ToralPoint bad{(RealVec(2) << -0.1, 0.1).finished(), RealVec::Zero(2)};
  try {
    psi(t40, bad);
    FAIL("expected NotInPositiveChamber");
  } catch (const NumericalGuard& e) {
    CHECK(e.kind() == ErrorKind::NotInPositiveChamber);
  }
}

TEST_CASE("psi converges to the limit series") {
  for (int n : {2, 3}) {
    const auto rs = build_root_system(RootFamily::TypeASplit, n);
    RealVec nu = n == 2 ? (RealVec(2) << 1.0, -1.0).finished() : (RealVec(3) << 1.37, 0.21, -1.58).finished();
    const auto l0 = SpectralParameter::imaginary(rs, nu);
    RealVec H = n == 2 ? (RealVec(2) << 0.75, -0.75).finished() : (RealVec(3) << 1.0, 0.0, -1.0).finished();
    const ToralPoint a{H, RealVec::Zero(n)};
    const int deg = default_max_degree(rs);
    const cplx lim = psi(limit_coeffs(rs, l0, deg), a).value;
    const cplx at = psi(gamma_coeffs(rs, SpectralParameter::make(rs, 1e4 * l0.coords), deg), a).value;
    CHECK(std::abs(at - lim) / std::abs(lim) < 1e-3);
  }
}

TEST_CASE("growth constant") {
  const auto rs = build_root_system(RootFamily::TypeASplit, 2);
  const auto table = gamma_coeffs(rs, SpectralParameter::make(rs, a1_lambda({0.0, 2.0})), 30);
  const RealVec H = (RealVec(2) << 0.3, -0.3).finished();
  const double c = table.growth_constant(H);
  CHECK(c >= 1.0);
  for (const auto& e : table.entries()) CHECK(std::abs(e.value) <= c * std::exp(e.mu.dot(H)) * (1 + 1e-15));
  CHECK(rel(table.value(ks({0})), 1.0) == 0.0);
}
