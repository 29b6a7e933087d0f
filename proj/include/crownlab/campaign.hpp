#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crownlab/heatkernel.hpp"
#include "crownlab/matrixlab.hpp"

namespace crownlab {

/// Randomized verification campaigns. Every report is a pure function of its
/// config: trial i draws from stream (seed, i), trials may run on several
/// threads, and aggregation is done in trial order. Reports carry
/// "schema": 1 and no timing data.

enum class ConvexityCheck { Eigen, Horospherical };

struct ConvexityConfig {
  int n = 3;
  Field field = Field::Real;
  ConvexityCheck check = ConvexityCheck::Eigen;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  YPolicy policy = YPolicy::RandomOmega;
  double omega_margin = 0.02;
  int threads = 1;
};

struct ConvexitySummary {
  std::int64_t confirmed = 0;
  std::int64_t skipped = 0;  // borderline semisimplicity, or branch-invalid for the horospherical check
  std::int64_t violations = 0;
  double min_hull_margin = 0.0;
  nlohmann::json report;
};

ConvexitySummary run_convexity_campaign(const ConvexityConfig& cfg);

struct OracleConfig {
  int n = 3;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int threads = 1;
};

struct OracleSummary {
  double min_linear = 0.0;
  double min_nonlinear = 0.0;
  double min_polar = 0.0;
  std::int64_t failures = 0;
  nlohmann::json report;
};

OracleSummary run_oracle_campaign(const OracleConfig& cfg);

/// "A1m1" (SL(2,R)), "A1m2" (SL(2,C)) or "A2m1" (SL(3,R)).
const RootSystem& named_root_system(const std::string& name);

struct ProbeConfig {
  std::string system = "A1m1";
  int samples = 10;
  std::uint64_t seed = 0;
  double upper_t_lo = 1.0, upper_t_hi = 100.0;
  double lower_t_lo = 20.0, lower_t_hi = 2000.0;
  int points = 10;
  int max_degree = 40;
  bool upper = true;  // rank one split group only
  int threads = 1;
};

struct ProbeSummary {
  int upper_bounded = 0, upper_total = 0;
  int lower_success = 0, lower_total = 0, lower_degenerate = 0;
  double min_lower_slope = 0.0;
  double p = 0.0;
  nlohmann::json report;
};

ProbeSummary run_probe_campaign(const ProbeConfig& cfg);

struct ScanConfig {
  ScanKind kind = ScanKind::Heat;
  std::vector<double> params{0.25, 1.0};  // t for heat, nu for spherical
  int points = 12;
  double end_margin = 1e-3;
};

/// The five probe paths: g in {e, a boost, a rotated boost, a shear, a mixed element}.
std::vector<ComplexMat> scan_path_elements();

struct ScanSummary {
  std::vector<ScanReport> scans;  // params x paths, row-major
  int bounded = 0;
  nlohmann::json report;
};

ScanSummary run_scan_campaign(const ScanConfig& cfg);

/// Runs body(i) for i in [0, count) on up to `threads` threads.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& body);

}  // namespace crownlab
