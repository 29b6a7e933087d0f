#include "crownlab/matrixlab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "crownlab/errors.hpp"
#include "crownlab/rootsys.hpp"
#include "crownlab/sphfun.hpp"

namespace crownlab {

namespace {

RealVec sorted_desc(RealVec v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

double omega_margin_of(const RealVec& c) { return type_a_omega_margin(c); }

RealVec sample_y(int n, const SamplerOptions& opts, TrialRng& rng) {
  const double width = kPi / 2 - opts.omega_margin;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    RealVec u(n);
    for (int i = 0; i < n; ++i) u(i) = rng.uniform(0.0, width);
    RealVec y = project_zero_sum(u);
    if (opts.policy != YPolicy::RandomRegular) return y;
    const RealVec s = sorted_desc(y);
    bool ok = true;
    for (int i = 0; i + 1 < n; ++i) ok = ok && (s(i) - s(i + 1) >= opts.omega_margin);
    if (ok) return y;
  }
  throw NumericalGuard(ErrorKind::DegenerateSample, "could not draw a regular Y");
}

ComplexMat cast(const RealMat& m) { return m.cast<cplx>(); }

}  // namespace

std::string to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

std::string to_string(Semisimplicity s) {
  switch (s) {
    case Semisimplicity::Yes: return "yes";
    case Semisimplicity::No: return "no";
    case Semisimplicity::Borderline: return "borderline";
  }
  return "?";
}

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Confirmed: return "confirmed";
    case VerdictStatus::SkippedBorderline: return "skipped_borderline";
    case VerdictStatus::Violation: return "VIOLATION";
  }
  return "?";
}

Field parse_field(const std::string& s) {
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw std::invalid_argument("field must be 'real' or 'complex', got '" + s + "'");
}

ComplexMat crown_matrix(Field field, const ComplexMat& g, const RealVec& Y) {
  ComplexVec e(Y.size());
  for (Eigen::Index i = 0; i < Y.size(); ++i) e(i) = std::polar(1.0, 2.0 * Y(i));
  const ComplexMat ge = g * e.asDiagonal();
  return field == Field::Real ? ComplexMat(ge * g.transpose()) : ComplexMat(ge * g.adjoint());
}

RealMat haar_orthogonal(int n, TrialRng& rng) {
  RealMat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
  Eigen::HouseholderQR<RealMat> qr(A);
  RealMat Q = qr.householderQ();
  const RealMat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0) Q.col(j) *= -1.0;
  if (Q.determinant() < 0) Q.col(0) *= -1.0;
  return Q;
}

ComplexMat haar_unitary(int n, TrialRng& rng) {
  ComplexMat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = cplx(rng.normal(), rng.normal());
  Eigen::HouseholderQR<ComplexMat> qr(A);
  ComplexMat Q = qr.householderQ();
  const ComplexMat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double r = std::abs(R(j, j));
    if (r > 0) Q.col(j) *= R(j, j) / r;
  }
  const cplx det = Q.determinant();
  Q *= std::polar(1.0, -std::arg(det) / n);
  return Q;
}

CrownSample sample_crown_point(int n, Field field, const SamplerOptions& opts, std::uint64_t seed,
                               std::uint64_t trial) {
  if (n < 2 || n > 5) throw std::invalid_argument("sample_crown_point: n must be in [2, 5]");
  TrialRng rng(seed, trial);
  CrownSample s;
  s.n = n;
  s.field = field;
  s.seed = seed;
  s.trial = trial;

  if (opts.policy == YPolicy::Fixed) {
    if (opts.fixed_Y.size() != n) throw std::invalid_argument("sample_crown_point: fixed Y has wrong size");
    s.Y = opts.fixed_Y;
  } else {
    s.Y = sample_y(n, opts, rng);
  }

  if (opts.identity_g) {
    s.g = ComplexMat::Identity(n, n);
  } else if (field == Field::Real) {
    const RealMat k = haar_orthogonal(n, rng);
    RealMat A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
    RealMat P = 0.5 * (A + A.transpose());
    P -= (P.trace() / n) * RealMat::Identity(n, n);
    Eigen::SelfAdjointEigenSolver<RealMat> es(P);
    const RealVec ev = (opts.g_scale * es.eigenvalues()).array().exp();
    const RealMat expP = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    s.g = cast(k * expP);
  } else {
    const ComplexMat k = haar_unitary(n, rng);
    ComplexMat A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = cplx(rng.normal(), rng.normal());
    ComplexMat P = 0.5 * (A + A.adjoint());
    P -= (P.trace() / static_cast<double>(n)) * ComplexMat::Identity(n, n);
    Eigen::SelfAdjointEigenSolver<ComplexMat> es(P);
    const RealVec ev = (opts.g_scale * es.eigenvalues()).array().exp();
    const ComplexMat expP = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    s.g = k * expP;
  }
  s.Z = crown_matrix(field, s.g, s.Y);
  return s;
}

EigenArguments eigen_arguments(const ComplexMat& Z, const SemisimplicityThresholds& th) {
  const Eigen::Index n = Z.rows();
  Eigen::ComplexEigenSolver<ComplexMat> es(Z);
  if (es.info() != Eigen::Success) throw NumericalGuard(ErrorKind::EigFailure, "eigensolver did not converge");
  EigenArguments out;
  out.eigenvalues = es.eigenvalues();
  const ComplexMat& V = es.eigenvectors();

  Eigen::JacobiSVD<ComplexMat> svd(V);
  const auto& sv = svd.singularValues();
  out.eig_condition = sv(n - 1) > 0 ? sv(0) / sv(n - 1) : std::numeric_limits<double>::infinity();

  out.min_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      out.min_gap = std::min(out.min_gap, std::abs(out.eigenvalues(i) - out.eigenvalues(j)));

  if (std::isfinite(out.eig_condition)) {
    const ComplexMat recon = V * out.eigenvalues.asDiagonal() * V.fullPivLu().inverse();
    out.reconstruction_residual = (recon - Z).norm() / Z.norm();
  } else {
    out.reconstruction_residual = std::numeric_limits<double>::infinity();
  }

  out.C.resize(n);
  out.H.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.C(j) = 0.5 * std::arg(out.eigenvalues(j));
    out.H(j) = 0.5 * std::log(std::abs(out.eigenvalues(j)));
  }
  out.C = sorted_desc(out.C);
  out.H = sorted_desc(out.H);

  if (!std::isfinite(out.eig_condition) || out.eig_condition > th.hopeless) {
    out.semisimple = Semisimplicity::No;
  } else if (out.eig_condition < th.condition && out.min_gap > th.gap && out.reconstruction_residual <= th.residual) {
    out.semisimple = Semisimplicity::Yes;
  } else {
    out.semisimple = Semisimplicity::Borderline;
  }
  return out;
}

ConvexityVerdict check_hull_convexity(const CrownSample& sample, double tol, const SemisimplicityThresholds& th) {
  ConvexityVerdict v;
  EigenArguments ea;
  try {
    ea = eigen_arguments(sample.Z, th);
  } catch (const NumericalGuard& e) {
    v.status = VerdictStatus::SkippedBorderline;
    v.reason = e.what();
    return v;
  }
  v.semisimple = ea.semisimple;
  v.arg_vector = ea.C;
  v.eigenvalues = ea.eigenvalues;
  v.eig_condition = ea.eig_condition;
  v.reconstruction_residual = ea.reconstruction_residual;
  v.hull_margin = majorization_margin(ea.C, sample.Y);
  v.omega_margin = omega_margin_of(ea.C);
  if (ea.semisimple != Semisimplicity::Yes) {
    v.status = VerdictStatus::SkippedBorderline;
    v.reason = "semisimplicity " + to_string(ea.semisimple);
    return v;
  }
  v.status = v.hull_margin < -tol ? VerdictStatus::Violation : VerdictStatus::Confirmed;
  return v;
}

ComplexVec quotient_map_P(const ComplexMat& Z) {
  const Eigen::Index n = Z.rows();
  const ComplexMat I = ComplexMat::Identity(n, n);
  ComplexVec c(n);
  ComplexMat M = I;
  for (Eigen::Index k = 1; k <= n; ++k) {
    const ComplexMat AM = Z * M;
    c(k - 1) = -AM.trace() / static_cast<double>(k);
    M = AM + c(k - 1) * I;
  }
  return c.head(n - 1);
}

double fiber_margin(const ComplexMat& Z, const RealVec& Y) {
  Eigen::ComplexEigenSolver<ComplexMat> es(Z, false);
  if (es.info() != Eigen::Success) throw NumericalGuard(ErrorKind::EigFailure, "eigensolver did not converge");
  RealVec c(Z.rows());
  for (Eigen::Index j = 0; j < Z.rows(); ++j) c(j) = 0.5 * std::arg(es.eigenvalues()(j));
  return majorization_margin(c, Y);
}

double kostant_linear_check(const RealMat& k, const RealVec& Y) {
  const RealMat M = k * Y.asDiagonal() * k.transpose();
  return majorization_margin(M.diagonal(), Y);
}

double kostant_nonlinear_check(const RealMat& k, const RealVec& Y) {
  const RealVec e = (2.0 * Y).array().exp();
  const RealMat Z = k * e.asDiagonal() * k.transpose();
  const auto hc = horospherical_a(Z.cast<cplx>());
  return majorization_margin(hc.a_log.real(), Y);
}

double polar_convexity_check(const RealVec& Y1, const RealVec& Y2, const RealMat& k) {
  const RealVec e1 = Y1.array().exp();
  const RealVec e2 = Y2.array().exp();
  const RealMat M = e1.asDiagonal() * k * e2.asDiagonal();
  Eigen::JacobiSVD<RealMat> svd(M);
  const RealVec ls = svd.singularValues().array().log();
  return majorization_margin(ls, Y1 + Y2);
}

PathReport boundary_probe_path(Field field, const ComplexMat& X, const RealVec& Y, double t_max, int steps,
                               double tol) {
  if (steps < 1) throw std::invalid_argument("boundary_probe_path: steps must be >= 1");
  PathReport rep;
  rep.min_semisimple_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) {
    const double t = t_max * i / steps;
    CrownSample s;
    s.n = static_cast<int>(Y.size());
    s.field = field;
    s.Y = Y;
    s.g = (t * X).exp();
    s.Z = crown_matrix(field, s.g, Y);
    PathStep step{t, quotient_map_P(s.Z), check_hull_convexity(s, tol)};
    if (step.verdict.semisimple == Semisimplicity::Yes) {
      rep.min_semisimple_margin = std::min(rep.min_semisimple_margin, step.verdict.hull_margin);
    } else {
      ++rep.borderline_steps;
    }
    if (step.verdict.status == VerdictStatus::Violation) ++rep.violations;
    rep.steps.push_back(std::move(step));
  }
  return rep;
}

RealMat jordan_generator(double y) {
  if (!(y > 0 && y < kPi / 4)) throw std::invalid_argument("jordan_generator: need 0 < y < pi/4");
  // exp(2X) = [[p, q], [q, p]] with p = 1/cos(2y), p^2 - q^2 = 1.
  const double r = std::acosh(1.0 / std::cos(2.0 * y));
  RealMat X(2, 2);
  X << 0.0, 0.5 * r, 0.5 * r, 0.0;
  return X;
}

namespace {

nlohmann::json complex_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json vec_json(const RealVec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

nlohmann::json sample_to_json(const CrownSample& s) {
  nlohmann::json j;
  j["n"] = s.n;
  j["field"] = to_string(s.field);
  j["seed"] = s.seed;
  j["trial"] = s.trial;
  nlohmann::json g = nlohmann::json::array();
  for (Eigen::Index r = 0; r < s.g.rows(); ++r)
    for (Eigen::Index c = 0; c < s.g.cols(); ++c) {
      if (s.field == Field::Real) {
        g.push_back(s.g(r, c).real());
      } else {
        g.push_back(complex_json(s.g(r, c)));
      }
    }
  j["g"] = g;
  j["Y"] = vec_json(s.Y);
  return j;
}

nlohmann::json verdict_to_json(const ConvexityVerdict& v) {
  nlohmann::json j;
  j["semisimple"] = to_string(v.semisimple);
  j["status"] = to_string(v.status);
  j["arg_vector"] = vec_json(v.arg_vector);
  nlohmann::json ev = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.eigenvalues.size(); ++i) ev.push_back(complex_json(v.eigenvalues(i)));
  j["eigenvalues"] = ev;
  j["hull_margin"] = v.hull_margin;
  j["omega_margin"] = v.omega_margin;
  j["eig_condition"] = v.eig_condition;
  j["reconstruction_residual"] = v.reconstruction_residual;
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

}  // namespace crownlab
