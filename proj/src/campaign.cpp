#include "crownlab/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "crownlab/cfun.hpp"
#include "crownlab/errors.hpp"
#include "crownlab/rootsys.hpp"
#include "crownlab/sphfun.hpp"

namespace crownlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Stream offsets so that auxiliary draws never share a stream with samples.
constexpr std::uint64_t kAuxStream = 1ull << 40;

nlohmann::json vec_json(const RealVec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

std::string policy_name(YPolicy p) {
  switch (p) {
    case YPolicy::Fixed: return "fixed";
    case YPolicy::RandomOmega: return "random";
    case YPolicy::RandomRegular: return "random-regular";
  }
  return "?";
}

// Dominant vector with consecutive differences drawn from [lo, hi], zero sum.
RealVec dominant_with_gaps(int n, double lo, double hi, TrialRng& rng) {
  RealVec v(n);
  v(0) = 0.0;
  for (int i = 1; i < n; ++i) v(i) = v(i - 1) - rng.uniform(lo, hi);
  return project_zero_sum(v);
}

}  // namespace

void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& body) {
  const int nt = static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(threads, count)));
  if (nt <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex mu;
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&] {
      for (std::int64_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

ConvexitySummary run_convexity_campaign(const ConvexityConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.n < 2 || cfg.n > 5) throw std::invalid_argument("n must be in [2, 5]");
  SamplerOptions opts;
  opts.policy = cfg.policy;
  opts.omega_margin = cfg.omega_margin;

  struct Row {
    CrownSample sample;
    ConvexityVerdict verdict;
    double fiber = 0.0;
    bool branch_valid = true;
  };
  std::vector<Row> rows(static_cast<std::size_t>(cfg.trials));
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t i) {
    Row& r = rows[static_cast<std::size_t>(i)];
    r.sample = sample_crown_point(cfg.n, cfg.field, opts, cfg.seed, static_cast<std::uint64_t>(i));
    if (cfg.check == ConvexityCheck::Eigen) {
      r.verdict = check_hull_convexity(r.sample, cfg.tol);
      r.fiber = fiber_margin(r.sample.Z, r.sample.Y);
      return;
    }
    try {
      const auto hc = horospherical_a(r.sample.Z);
      const RealVec im = hc.a_log.imag();
      r.verdict.arg_vector = im;
      r.verdict.hull_margin = majorization_margin(im, r.sample.Y);
      r.verdict.omega_margin = hc.omega_margin;
      r.verdict.reconstruction_residual = hc.reconstruction_residual;
      r.verdict.semisimple = Semisimplicity::Yes;
      r.verdict.status = r.verdict.hull_margin < -cfg.tol ? VerdictStatus::Violation : VerdictStatus::Confirmed;
    } catch (const NumericalGuard& e) {
      r.branch_valid = false;
      r.verdict.status = VerdictStatus::SkippedBorderline;
      r.verdict.reason = e.what();
    }
  });

  ConvexitySummary out;
  out.min_hull_margin = kInf;
  double min_omega = kInf;
  double min_fiber = kInf;
  std::int64_t fiber_negative = 0;
  std::int64_t worst = -1;
  nlohmann::json violations = nlohmann::json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    switch (r.verdict.status) {
      case VerdictStatus::Confirmed: ++out.confirmed; break;
      case VerdictStatus::SkippedBorderline: ++out.skipped; break;
      case VerdictStatus::Violation: ++out.violations; break;
    }
    if (cfg.check == ConvexityCheck::Eigen) {
      min_fiber = std::min(min_fiber, r.fiber);
      if (r.fiber < -cfg.tol) ++fiber_negative;
    }
    if (r.verdict.status == VerdictStatus::SkippedBorderline) continue;
    if (r.verdict.hull_margin < out.min_hull_margin) {
      out.min_hull_margin = r.verdict.hull_margin;
      worst = static_cast<std::int64_t>(i);
    }
    min_omega = std::min(min_omega, r.verdict.omega_margin);
    if (r.verdict.status == VerdictStatus::Violation) {
      violations.push_back({{"sample", sample_to_json(r.sample)}, {"verdict", verdict_to_json(r.verdict)}});
    }
  }

  nlohmann::json j;
  j["schema"] = 1;
  j["command"] = "verify-convexity";
  j["config"] = {{"n", cfg.n},
                 {"field", to_string(cfg.field)},
                 {"check", cfg.check == ConvexityCheck::Eigen ? "eigen" : "horospherical"},
                 {"trials", cfg.trials},
                 {"seed", cfg.seed},
                 {"tol", cfg.tol},
                 {"y_policy", policy_name(cfg.policy)},
                 {"omega_margin", cfg.omega_margin}};
  j["counts"] = {{"confirmed", out.confirmed}, {"skipped_borderline", out.skipped}, {"violations", out.violations}};
  j["min_hull_margin"] = finite_or_null(out.min_hull_margin);
  j["min_omega_margin"] = finite_or_null(min_omega);
  if (cfg.check == ConvexityCheck::Eigen) {
    j["fiber_probe"] = {{"min_margin", finite_or_null(min_fiber)}, {"negative", fiber_negative}};
  }
  if (worst >= 0) {
    const Row& r = rows[static_cast<std::size_t>(worst)];
    j["worst"] = {{"sample", sample_to_json(r.sample)}, {"verdict", verdict_to_json(r.verdict)}};
  }
  j["violations"] = violations;
  out.report = std::move(j);
  return out;
}

OracleSummary run_oracle_campaign(const OracleConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.n < 2) throw std::invalid_argument("n must be >= 2");
  struct Row {
    double linear, nonlinear, polar;
  };
  std::vector<Row> rows(static_cast<std::size_t>(cfg.trials));
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t i) {
    TrialRng rng(cfg.seed, static_cast<std::uint64_t>(i));
    const RealMat k = haar_orthogonal(cfg.n, rng);
    RealVec Y(cfg.n);
    for (int a = 0; a < cfg.n; ++a) Y(a) = rng.normal();
    Y = project_zero_sum(Y);
    const RealVec Y1 = dominant_with_gaps(cfg.n, 0.0, 1.5, rng);
    const RealVec Y2 = dominant_with_gaps(cfg.n, 0.0, 1.5, rng);
    rows[static_cast<std::size_t>(i)] = {kostant_linear_check(k, Y), kostant_nonlinear_check(k, Y),
                                         polar_convexity_check(Y1, Y2, k)};
  });
  OracleSummary out;
  out.min_linear = out.min_nonlinear = out.min_polar = kInf;
  for (const auto& r : rows) {
    out.min_linear = std::min(out.min_linear, r.linear);
    out.min_nonlinear = std::min(out.min_nonlinear, r.nonlinear);
    out.min_polar = std::min(out.min_polar, r.polar);
    out.failures += (r.linear < -cfg.tol) + (r.nonlinear < -cfg.tol) + (r.polar < -cfg.tol);
  }
  nlohmann::json j;
  j["schema"] = 1;
  j["command"] = "oracles";
  j["config"] = {{"n", cfg.n}, {"trials", cfg.trials}, {"seed", cfg.seed}, {"tol", cfg.tol}};
  j["kostant_linear"] = {{"min_margin", out.min_linear}};
  j["kostant_nonlinear"] = {{"min_margin", out.min_nonlinear}};
  j["polar"] = {{"min_margin", out.min_polar}};
  j["failures"] = out.failures;
  out.report = std::move(j);
  return out;
}

const RootSystem& named_root_system(const std::string& name) {
  static const RootSystem a1m1 = build_root_system(RootFamily::TypeASplit, 2);
  static const RootSystem a1m2 = build_root_system(RootFamily::TypeAComplex, 2);
  static const RootSystem a2m1 = build_root_system(RootFamily::TypeASplit, 3);
  if (name == "A1m1") return a1m1;
  if (name == "A1m2") return a1m2;
  if (name == "A2m1") return a2m1;
  throw std::invalid_argument("unknown root system '" + name + "' (expected A1m1, A1m2 or A2m1)");
}

ProbeSummary run_probe_campaign(const ProbeConfig& cfg) {
  const RootSystem& rs = named_root_system(cfg.system);
  const CFunctionSpec cspec = make_cfunction(rs);
  const int n = rs.ambient_dim;
  if (cfg.samples < 1 || cfg.points < 4) throw std::invalid_argument("probe: need samples >= 1 and points >= 4");

  ProbeSummary out;
  out.p = 0.5 * rs.dim_n();
  nlohmann::json j;
  j["schema"] = 1;
  j["command"] = "probe-bounds";
  j["config"] = {{"system", cfg.system},   {"samples", cfg.samples},       {"seed", cfg.seed},
                 {"points", cfg.points},   {"max_degree", cfg.max_degree}, {"upper_t", {cfg.upper_t_lo, cfg.upper_t_hi}},
                 {"lower_t", {cfg.lower_t_lo, cfg.lower_t_hi}}};
  j["p"] = out.p;

  // Upper bound: K-integral on SL(2,R) at random crown points.
  nlohmann::json upper = nlohmann::json::array();
  if (cfg.upper && cfg.system == "A1m1") {
    const auto grid = log_grid(cfg.upper_t_lo, cfg.upper_t_hi, cfg.points);
    std::vector<UpperBoundReport> reps(static_cast<std::size_t>(cfg.samples));
    std::vector<CrownSample> samples(reps.size());
    std::vector<double> nus(reps.size());
    parallel_for(cfg.samples, cfg.threads, [&](std::int64_t s) {
      TrialRng rng(cfg.seed, kAuxStream + static_cast<std::uint64_t>(s));
      const double nu = rng.uniform(0.5, 1.5);
      const auto cs = sample_crown_point(2, Field::Real, {}, cfg.seed, static_cast<std::uint64_t>(s));
      const auto lam = SpectralParameter::imaginary(rs, (RealVec(2) << nu, -nu).finished());
      reps[static_cast<std::size_t>(s)] = upper_bound_ratio(RankOneGroup::SL2R, lam, grid, cs.g, cs.Y);
      samples[static_cast<std::size_t>(s)] = cs;
      nus[static_cast<std::size_t>(s)] = nu;
    });
    for (std::size_t s = 0; s < reps.size(); ++s) {
      ++out.upper_total;
      out.upper_bounded += reps[s].bounded;
      upper.push_back({{"sample", sample_to_json(samples[s])},
                       {"nu", nus[s]},
                       {"ratio", reps[s].ratio},
                       {"sup", reps[s].sup},
                       {"tail_slope", reps[s].tail_slope},
                       {"bounded", reps[s].bounded}});
    }
  }
  j["upper"] = upper;

  // Lower bound: series at a = exp(H + iZ), resampling degenerate points.
  const auto grid = log_grid(cfg.lower_t_lo, cfg.lower_t_hi, cfg.points);
  nlohmann::json lower = nlohmann::json::array();
  out.min_lower_slope = kInf;
  const int max_attempts = 4 * cfg.samples;
  struct Attempt {
    RealVec H, Z, nu;
    LowerBoundReport rep;
    std::string error;
  };
  std::vector<Attempt> attempts(static_cast<std::size_t>(max_attempts));
  // Attempts are evaluated lazily in batches so the accepted set does not
  // depend on the thread count.
  int next = 0;
  while (out.lower_success < cfg.samples && next < max_attempts) {
    const int batch = std::min(cfg.samples - out.lower_success, max_attempts - next);
    parallel_for(batch, cfg.threads, [&](std::int64_t b) {
      const int a = next + static_cast<int>(b);
      Attempt& at = attempts[static_cast<std::size_t>(a)];
      TrialRng rng(cfg.seed, 2 * kAuxStream + static_cast<std::uint64_t>(a));
      at.H = dominant_with_gaps(n, 1.5, 2.5, rng);
      at.nu = dominant_with_gaps(n, 0.5, 1.5, rng);
      SamplerOptions so;
      so.policy = YPolicy::RandomRegular;
      at.Z = sample_crown_point(n, Field::Real, so, cfg.seed, 3 * kAuxStream + static_cast<std::uint64_t>(a)).Y;
      try {
        at.rep = lower_bound_ratio(rs, cspec, SpectralParameter::imaginary(rs, at.nu), grid, at.H, at.Z,
                                   cfg.max_degree);
      } catch (const NumericalGuard& e) {
        at.error = e.what();
      }
    });
    for (int a = next; a < next + batch; ++a) {
      const Attempt& at = attempts[static_cast<std::size_t>(a)];
      ++out.lower_total;
      nlohmann::json row = {{"H", vec_json(at.H)}, {"Z", vec_json(at.Z)}, {"nu", vec_json(at.nu)}};
      if (!at.error.empty()) {
        row["error"] = at.error;
        ++out.lower_degenerate;
      } else {
        row["ratio"] = at.rep.ratio;
        row["slope"] = at.rep.slope;
        row["min_scaled"] = at.rep.min_scaled;
        row["success"] = at.rep.success;
        row["degenerate"] = at.rep.degenerate;
        if (at.rep.success) {
          ++out.lower_success;
          out.min_lower_slope = std::min(out.min_lower_slope, at.rep.slope);
        } else {
          ++out.lower_degenerate;
        }
      }
      lower.push_back(row);
    }
    next += batch;
  }
  j["lower"] = lower;
  j["summary"] = {{"upper_bounded", out.upper_bounded},
                  {"upper_total", out.upper_total},
                  {"lower_success", out.lower_success},
                  {"lower_attempts", out.lower_total},
                  {"lower_degenerate", out.lower_degenerate},
                  {"min_lower_slope", finite_or_null(out.min_lower_slope)}};
  out.report = std::move(j);
  return out;
}

std::vector<ComplexMat> scan_path_elements() {
  auto rot = [](double a) {
    RealMat k(2, 2);
    k << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    return k;
  };
  auto boost = [](double h) {
    RealMat a = RealMat::Zero(2, 2);
    a(0, 0) = std::exp(h);
    a(1, 1) = std::exp(-h);
    return a;
  };
  RealMat shear = RealMat::Identity(2, 2);
  shear(0, 1) = 0.7;
  std::vector<ComplexMat> gs;
  gs.push_back(ComplexMat::Identity(2, 2));
  gs.push_back(boost(0.5).cast<cplx>());
  gs.push_back((boost(0.8) * rot(0.3)).cast<cplx>());
  gs.push_back(shear.cast<cplx>());
  gs.push_back((rot(1.1) * boost(-0.4) * rot(-0.6) * shear).cast<cplx>());
  return gs;
}

ScanSummary run_scan_campaign(const ScanConfig& cfg) {
  ScanSummary out;
  ScanPath path;
  path.points = cfg.points;
  path.end_margin = cfg.end_margin;
  const auto gs = scan_path_elements();
  nlohmann::json rows = nlohmann::json::array();
  for (double param : cfg.params) {
    for (std::size_t p = 0; p < gs.size(); ++p) {
      path.g = gs[p];
      auto rep = boundedness_scan(cfg.kind, param, path);
      out.bounded += rep.trend == Trend::BoundedPlateau && !rep.truncated;
      rows.push_back({{"param", param},
                      {"path", p},
                      {"points", rep.s.size()},
                      {"sup", rep.sup},
                      {"argsup", rep.argsup},
                      {"tail_slope", rep.tail_slope},
                      {"trend", to_string(rep.trend)},
                      {"truncated", rep.truncated},
                      {"note", rep.note}});
      out.scans.push_back(std::move(rep));
    }
  }
  nlohmann::json j;
  j["schema"] = 1;
  j["command"] = "scan-boundary";
  j["config"] = {{"kind", to_string(cfg.kind)}, {"params", cfg.params}, {"points", cfg.points},
                 {"end_margin", cfg.end_margin}};
  j["scans"] = rows;
  j["bounded"] = out.bounded;
  out.report = std::move(j);
  return out;
}

}  // namespace crownlab
