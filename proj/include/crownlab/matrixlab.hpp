#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "crownlab/rng.hpp"
#include "crownlab/types.hpp"

namespace crownlab {

enum class Field { Real, Complex };
enum class YPolicy { Fixed, RandomOmega, RandomRegular };
enum class Semisimplicity { Yes, No, Borderline };
enum class VerdictStatus { Confirmed, SkippedBorderline, Violation };

std::string to_string(Field f);
std::string to_string(Semisimplicity s);
std::string to_string(VerdictStatus s);
Field parse_field(const std::string& s);  // "real" | "complex", else invalid_argument

/// A point g exp(iY).x_o of the crown realized as a matrix. With the square
/// map a.x_o = a^2, exp(iY).x_o is the matrix e^{2iY}:
///   real field     Z = g e^{2iY} g^t   (complex symmetric, det 1)
///   complex field  Z = g e^{2iY} g^*   (det 1)
struct CrownSample {
  int n = 0;
  Field field = Field::Real;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  ComplexMat g;
  RealVec Y;
  ComplexMat Z;
};

struct SamplerOptions {
  YPolicy policy = YPolicy::RandomOmega;
  RealVec fixed_Y;              // used with YPolicy::Fixed
  double omega_margin = 0.02;   // Omega margin of random Y; also the min gap for RandomRegular
  double g_scale = 0.7;         // spread of the exp(p) factor of g
  bool identity_g = false;
};

ComplexMat crown_matrix(Field field, const ComplexMat& g, const RealVec& Y);

/// g = k exp(s P): k Haar on SO(n) or SU(n), P a Gaussian traceless symmetric
/// (Hermitian) matrix. Y uniform coordinates in [0, pi/2 - margin] shifted to
/// zero sum, so that max - min <= pi/2 - margin. Deterministic in (seed, trial).
CrownSample sample_crown_point(int n, Field field, const SamplerOptions& opts, std::uint64_t seed,
                               std::uint64_t trial);

/// Haar-distributed SO(n) / SU(n) element from the given stream.
RealMat haar_orthogonal(int n, TrialRng& rng);
ComplexMat haar_unitary(int n, TrialRng& rng);

/// Eigenvalues lambda_j = exp(2 h_j + 2i c_j), principal argument.
struct EigenArguments {
  RealVec C;  // sorted decreasing
  RealVec H;  // sorted decreasing
  ComplexVec eigenvalues;
  double eig_condition = 0.0;  // 2-norm condition number of the eigenvector matrix
  double min_gap = 0.0;        // min_{i<j} |lambda_i - lambda_j|
  double reconstruction_residual = 0.0;  // ||V D V^-1 - Z|| / ||Z||
  Semisimplicity semisimple = Semisimplicity::Borderline;
};

struct SemisimplicityThresholds {
  double condition = 1e6;    // below: confidently diagonalizable
  double gap = 1e-6;         // a rounded 2x2 Jordan block splits by ~sqrt(eps)
  double hopeless = 1e14;    // above: reported as not semisimple
  double residual = 1e-8;    // larger reconstruction error: verdict not trusted
};

/// Throws NumericalGuard(EigFailure) when the eigensolver does not converge.
EigenArguments eigen_arguments(const ComplexMat& Z, const SemisimplicityThresholds& th = {});

struct ConvexityVerdict {
  Semisimplicity semisimple = Semisimplicity::Borderline;
  RealVec arg_vector;
  ComplexVec eigenvalues;
  double hull_margin = 0.0;
  double omega_margin = 0.0;
  double eig_condition = 0.0;
  double reconstruction_residual = 0.0;
  VerdictStatus status = VerdictStatus::SkippedBorderline;
  std::string reason;
};

/// Semisimple points of G exp(iY).x_o must have eigen-arguments in
/// conv(S_n Y). Borderline or non-diagonalizable samples are skipped.
ConvexityVerdict check_hull_convexity(const CrownSample& sample, double tol = 1e-8,
                                      const SemisimplicityThresholds& th = {});

/// The n-1 nontrivial coefficients c_1..c_{n-1} of det(x - Z) = x^n + c_1 x^{n-1} + ... + c_n
/// (Faddeev-LeVerrier).
ComplexVec quotient_map_P(const ComplexMat& Z);

/// Points with the same P value as a toral point exp(H + iC) share its
/// eigenvalues e^{2(h_j + i c_j)}. For C with pairwise differences below
/// pi/2 the principal arguments are the only branch that can land in the
/// hull, so the fiber question reduces to the hull margin of the principal
/// half-arguments. Computed for every sample, semisimple or not.
double fiber_margin(const ComplexMat& Z, const RealVec& Y);

/// Margin of diag(k Y k^t) in conv(S_n Y).
double kostant_linear_check(const RealMat& k, const RealVec& Y);
/// Margin of log a(k exp(Y)) in conv(S_n Y), from k e^{2Y} k^t.
double kostant_nonlinear_check(const RealMat& k, const RealVec& Y);
/// Margin of the log singular values of e^{Y1} k e^{Y2} in conv(S_n (Y1 + Y2)).
double polar_convexity_check(const RealVec& Y1, const RealVec& Y2, const RealMat& k);

struct PathStep {
  double t = 0.0;
  ComplexVec P;
  ConvexityVerdict verdict;
};

struct PathReport {
  std::vector<PathStep> steps;
  int borderline_steps = 0;
  int violations = 0;
  double min_semisimple_margin = 0.0;
};

/// Follows g(t) = exp(t X), t in [0, t_max], at `steps` + 1 evenly spaced points.
PathReport boundary_probe_path(Field field, const ComplexMat& X, const RealVec& Y, double t_max, int steps,
                               double tol = 1e-8);

/// Symmetric traceless X (n = 2) such that exp(X) e^{2iY} exp(X) with
/// Y = (y, -y) is a nontrivial Jordan block: along exp(tX) the path passes
/// through a non-semisimple point at t = 1. Requires 0 < y < pi/4.
RealMat jordan_generator(double y);

nlohmann::json sample_to_json(const CrownSample& s);
nlohmann::json verdict_to_json(const ConvexityVerdict& v);

}  // namespace crownlab
