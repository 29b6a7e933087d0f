#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include <unsupported/Eigen/MatrixFunctions>

#include "crownlab/matrixlab.hpp"
#include "crownlab/rootsys.hpp"

using namespace crownlab;

namespace {

RealVec vec(std::initializer_list<double> v) {
  RealVec r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) r(i++) = x;
  return r;
}

RealVec sorted_desc(RealVec v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

}  // namespace

TEST_CASE("sampler contract") {
  SamplerOptions opts;
  for (int n = 2; n <= 5; ++n) {
    for (Field f : {Field::Real, Field::Complex}) {
      for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const auto s = sample_crown_point(n, f, opts, 9, trial);
        CHECK(std::abs(s.Z.determinant() - 1.0) < 1e-10);
        CHECK(std::abs(s.g.determinant() - 1.0) < 1e-10);
        if (f == Field::Real) {
          CHECK((s.Z - s.Z.transpose()).norm() <= 1e-12 * s.Z.norm());
          CHECK(s.g.imag().norm() == 0.0);
        }
        CHECK(std::abs(s.Y.sum()) < 1e-14);
        CHECK(in_crown_omega(build_root_system(RootFamily::TypeASplit, n), s.Y).margin >= 0.02 - 1e-12);
      }
    }
  }
  const auto a = sample_crown_point(4, Field::Complex, opts, 123, 7);
  const auto b = sample_crown_point(4, Field::Complex, opts, 123, 7);
  CHECK(a.Z == b.Z);
  CHECK(a.Y == b.Y);
  CHECK_FALSE(sample_crown_point(4, Field::Complex, opts, 123, 8).Z == a.Z);
  CHECK_THROWS_AS(sample_crown_point(6, Field::Real, opts, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(sample_crown_point(1, Field::Real, opts, 0, 0), std::invalid_argument);
}

TEST_CASE("regular policy keeps the gaps") {
  SamplerOptions opts;
  opts.policy = YPolicy::RandomRegular;
  opts.omega_margin = 0.05;
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const RealVec y = sorted_desc(sample_crown_point(4, Field::Real, opts, 1, trial).Y);
    for (int i = 0; i < 3; ++i) CHECK(y(i) - y(i + 1) >= 0.05);
  }
}

TEST_CASE("fixed Y examples") {
  SamplerOptions opts;
  opts.policy = YPolicy::Fixed;
  opts.fixed_Y = RealVec::Zero(3);
  const auto s = sample_crown_point(3, Field::Real, opts, 4, 0);
  // a point of X: real positive definite
  CHECK(s.Z.imag().norm() < 1e-14);
  Eigen::SelfAdjointEigenSolver<RealMat> es(s.Z.real());
  CHECK(es.eigenvalues().minCoeff() > 0);

  opts.fixed_Y = vec({0.3, -0.3});
  opts.identity_g = true;
  const auto d = sample_crown_point(2, Field::Real, opts, 0, 0);
  CHECK(std::abs(d.Z(0, 0) - std::polar(1.0, 0.6)) < 1e-15);
  CHECK(std::abs(d.Z(1, 1) - std::polar(1.0, -0.6)) < 1e-15);
  CHECK(std::abs(d.Z(0, 1)) == 0.0);
  const auto v = check_hull_convexity(d);
  CHECK(v.status == VerdictStatus::Confirmed);
  CHECK(std::abs(v.hull_margin) < 1e-15);
}

TEST_CASE("Haar factors") {
  TrialRng rng(1, 2);
  for (int n = 2; n <= 5; ++n) {
    const RealMat k = haar_orthogonal(n, rng);
    CHECK((k.transpose() * k - RealMat::Identity(n, n)).norm() < 1e-13);
    CHECK(k.determinant() == doctest::Approx(1.0));
    const ComplexMat u = haar_unitary(n, rng);
    CHECK((u.adjoint() * u - ComplexMat::Identity(n, n)).norm() < 1e-13);
    CHECK(std::abs(u.determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("eigen-arguments") {
  const RealVec Y = vec({0.5, -0.1, -0.4});
  ComplexVec e(3);
  for (int i = 0; i < 3; ++i) e(i) = std::polar(1.0, 2 * Y(i));
  const auto ea = eigen_arguments(ComplexMat(e.asDiagonal()));
  CHECK((ea.C - sorted_desc(Y)).norm() < 1e-14);
  CHECK(ea.H.norm() < 1e-14);
  CHECK(ea.semisimple == Semisimplicity::Yes);

  // orthogonal conjugation leaves the spectrum alone
  TrialRng rng(3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const RealMat k = haar_orthogonal(3, rng);
    const ComplexMat Z = k.cast<cplx>() * e.asDiagonal() * k.transpose().cast<cplx>();
    const auto a = eigen_arguments(Z);
    CHECK((a.C - sorted_desc(Y)).norm() < 1e-10);
    CrownSample s{3, Field::Real, 0, 0, k.cast<cplx>(), Y, Z};
    CHECK(std::abs(check_hull_convexity(s).hull_margin) < 1e-10);
  }

  // a Jordan block is not semisimple
  ComplexMat J(2, 2);
  J << 1.0, 1.0, 0.0, 1.0;
  CHECK(eigen_arguments(J).semisimple == Semisimplicity::No);
  // equal eigenvalues but diagonal: the gap rule marks it borderline
  CHECK(eigen_arguments(ComplexMat::Identity(2, 2)).semisimple == Semisimplicity::Borderline);
}

TEST_CASE("hull convexity on random samples") {
  SamplerOptions opts;
  for (int n = 2; n <= 4; ++n) {
    for (Field f : {Field::Real, Field::Complex}) {
      int confirmed = 0;
      for (std::uint64_t trial = 0; trial < 300; ++trial) {
        const auto s = sample_crown_point(n, f, opts, 42, trial);
        const auto v = check_hull_convexity(s);
        CHECK(v.status != VerdictStatus::Violation);
        if (v.status == VerdictStatus::Confirmed) {
          ++confirmed;
          CHECK(v.reconstruction_residual <= 1e-8);
          CHECK(v.omega_margin > 0);
        }
      }
      CHECK(confirmed >= 294);
    }
  }
}

TEST_CASE("a forced violation is reported as such") {
  // Y from the sample is replaced by a smaller vector the eigen-arguments do not fit in.
  SamplerOptions opts;
  opts.policy = YPolicy::Fixed;
  opts.fixed_Y = vec({0.4, 0.0, -0.4});
  opts.identity_g = true;
  auto s = sample_crown_point(3, Field::Real, opts, 0, 0);
  s.Y = vec({0.2, 0.0, -0.2});
  const auto v = check_hull_convexity(s);
  CHECK(v.status == VerdictStatus::Violation);
  CHECK(v.hull_margin == doctest::Approx(-0.2));
  CHECK(to_string(v.status) == "VIOLATION");
}

TEST_CASE("quotient map") {
  CHECK((quotient_map_P(ComplexMat::Identity(3, 3)) - (ComplexVec(2) << -3.0, 3.0).finished()).norm() < 1e-14);
  CHECK((quotient_map_P(ComplexMat::Identity(4, 4)) - (ComplexVec(3) << -4.0, 6.0, -4.0).finished()).norm() < 1e-14);

  SamplerOptions opts;
  TrialRng rng(17, 0);
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const auto s = sample_crown_point(3, Field::Real, opts, 5, trial);
    // complex orthogonal k = exp(A) with A complex skew-symmetric
    ComplexMat A = ComplexMat::Zero(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        A(i, j) = cplx(rng.normal(), rng.normal()) * 0.5;
        A(j, i) = -A(i, j);
      }
    const ComplexMat k = A.exp();
    CHECK((k * k.transpose() - ComplexMat::Identity(3, 3)).norm() < 1e-12);
    const ComplexVec p0 = quotient_map_P(s.Z);
    const ComplexVec p1 = quotient_map_P(k * s.Z * k.transpose());
    CHECK((p0 - p1).norm() <= 1e-10 * std::max(1.0, p0.norm()));
  }

  // Weyl permutation of a toral point
  ComplexVec t(3);
  t << std::exp(cplx(0.3, 0.4)), std::exp(cplx(-0.1, -0.3)), std::exp(cplx(-0.2, -0.1));
  ComplexVec tp(3);
  tp << t(2), t(0), t(1);
  CHECK((quotient_map_P(ComplexMat(t.asDiagonal())) - quotient_map_P(ComplexMat(tp.asDiagonal()))).norm() < 1e-14);
  // same P, same eigen-argument multiset
  CHECK((eigen_arguments(ComplexMat(t.asDiagonal())).C - eigen_arguments(ComplexMat(tp.asDiagonal())).C).norm() <
        1e-9);
}

TEST_CASE("fiber margin") {
  SamplerOptions opts;
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const auto s = sample_crown_point(3, Field::Complex, opts, 6, trial);
    CHECK(fiber_margin(s.Z, s.Y) >= -1e-8);
    CHECK(std::abs(fiber_margin(s.Z, s.Y) - check_hull_convexity(s).hull_margin) < 1e-12);
  }
}

TEST_CASE("classical oracles") {
  const RealVec Y = vec({1.0, 0.0, -1.0});
  CHECK(std::abs(kostant_linear_check(RealMat::Identity(3, 3), Y)) < 1e-15);
  RealMat perm = RealMat::Zero(3, 3);
  perm(0, 2) = perm(1, 0) = perm(2, 1) = 1.0;
  CHECK(std::abs(kostant_linear_check(perm, Y)) < 1e-15);
  CHECK(std::abs(kostant_nonlinear_check(RealMat::Identity(3, 3), Y)) < 1e-14);

  TrialRng rng(21, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const RealMat k = haar_orthogonal(3, rng);
    CHECK(kostant_linear_check(k, Y) >= -1e-10);
    CHECK(kostant_nonlinear_check(k, vec({0.7, 0.2, -0.9})) >= -1e-9);
    CHECK(polar_convexity_check(vec({0.6, 0.1, -0.7}), vec({0.5, 0.0, -0.5}), k) >= -1e-9);
  }
  // Y = 0 gives log a = 0
  const RealMat k = haar_orthogonal(3, rng);
  CHECK(std::abs(kostant_nonlinear_check(k, RealVec::Zero(3))) < 1e-13);
  // commuting diagonals: log singular values are Y1 + Y2
  CHECK(std::abs(polar_convexity_check(vec({0.6, 0.1, -0.7}), vec({0.5, 0.0, -0.5}), RealMat::Identity(3, 3))) <
        1e-14);
  CHECK(std::abs(polar_convexity_check(vec({0.6, 0.1, -0.7}), RealVec::Zero(3), k)) < 1e-13);
}

TEST_CASE("probe paths") {
  const RealVec Y = vec({0.3, -0.3});
  const auto flat = boundary_probe_path(Field::Real, ComplexMat::Zero(2, 2), Y, 1.0, 10);
  CHECK(flat.violations == 0);
  CHECK(flat.borderline_steps == 0);
  CHECK(std::abs(flat.min_semisimple_margin) < 1e-15);

  ComplexMat X(2, 2);
  X << 0.4, 0.3, 0.3, -0.4;
  const auto sub = boundary_probe_path(Field::Real, X, Y, 1.0, 100);
  CHECK(sub.steps.size() == 101u);
  CHECK(sub.violations == 0);

  // through a Jordan point at t = 1
  const RealMat J = jordan_generator(0.3);
  const ComplexMat N = crown_matrix(Field::Real, J.cast<cplx>().exp(), Y);
  const ComplexMat D = N - 0.5 * N.trace() * ComplexMat::Identity(2, 2);
  CHECK(D.norm() > 0.1);
  CHECK((D * D).norm() < 1e-12);
  const auto jp = boundary_probe_path(Field::Real, J.cast<cplx>(), Y, 2.0, 100);
  CHECK(jp.borderline_steps >= 1);
  CHECK(jp.steps[50].verdict.semisimple != Semisimplicity::Yes);
  CHECK(jp.violations == 0);
  CHECK_THROWS_AS(jordan_generator(0.9), std::invalid_argument);
}

TEST_CASE("JSON serialization") {
  SamplerOptions opts;
  const auto s = sample_crown_point(2, Field::Complex, opts, 8, 1);
  const auto j = sample_to_json(s);
  CHECK(j["n"] == 2);
  CHECK(j["field"] == "complex");
  CHECK(j["g"].size() == 4u);
  CHECK(j["g"][1][1].get<double>() == s.g(0, 1).imag());
  CHECK(j["Y"].size() == 2u);
  const auto v = verdict_to_json(check_hull_convexity(s));
  CHECK(v["status"] == "confirmed");
  CHECK(v["eigenvalues"].size() == 2u);
  CHECK(j.dump() == sample_to_json(sample_crown_point(2, Field::Complex, opts, 8, 1)).dump());

  const auto r = sample_to_json(sample_crown_point(3, Field::Real, opts, 8, 1));
  CHECK(r["g"].size() == 9u);
  CHECK(r["g"][0].is_number());
  CHECK(parse_field("real") == Field::Real);
  CHECK_THROWS_AS(parse_field("quaternion"), std::invalid_argument);
}
