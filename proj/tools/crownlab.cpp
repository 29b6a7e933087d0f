// Command-line harness for the crownlab campaigns.
//
// Exit codes: 0 ok, 1 violation found, 2 usage or config error,
// 3 numerical guard tripped.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crownlab/campaign.hpp"
#include "crownlab/cfun.hpp"
#include "crownlab/errors.hpp"
#include "crownlab/sphfun.hpp"

using namespace crownlab;
namespace fs = std::filesystem;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;

// Relative output paths resolve against CROWNLAB_OUTPUT_DIR when it is set.
fs::path output_path(const std::string& p) {
  fs::path path(p);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("CROWNLAB_OUTPUT_DIR"); dir && *dir) path = fs::path(dir) / path;
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  return path;
}

void write_json(const std::string& file, const nlohmann::json& j) {
  if (file.empty()) return;
  std::ofstream os(output_path(file), std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + file);
  os << j.dump(2) << '\n';
}

YPolicy parse_policy(const std::string& s) {
  if (s == "random") return YPolicy::RandomOmega;
  if (s == "regular") return YPolicy::RandomRegular;
  throw std::invalid_argument("y-policy must be 'random' or 'regular'");
}

// Rank-one shorthand: a single number x stands for (x, -x).
RealVec ambient(const std::vector<double>& v, int dim, const char* what) {
  if (static_cast<int>(v.size()) == dim) return Eigen::Map<const RealVec>(v.data(), dim);
  if (dim == 2 && v.size() == 1) return (RealVec(2) << v[0], -v[0]).finished();
  throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(dim) + " coordinates");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(cplx z) {
  std::ostringstream os;
  os.precision(15);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crownlab: spherical functions on the complex crown and convexity campaigns"};
  app.set_config("--config", "", "INI/TOML file with option values; flags override");
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for campaigns")->check(CLI::PositiveNumber);

  // verify-convexity
  ConvexityConfig vc;
  std::string vc_field = "real", vc_policy = "random", vc_check = "eigen", vc_json;
  auto* verify = app.add_subcommand("verify-convexity", "random crown points: eigen-arguments in conv(S_n Y)");
  verify->add_option("--n", vc.n, "matrix size")->check(CLI::Range(2, 5));
  verify->add_option("--field", vc_field, "real | complex");
  verify->add_option("--trials", vc.trials)->check(CLI::PositiveNumber);
  verify->add_option("--seed", vc.seed)->required();
  verify->add_option("--tol", vc.tol, "violation tolerance");
  verify->add_option("--check", vc_check, "eigen | horospherical (Im log a of the Gauss decomposition)");
  verify->add_option("--y-policy", vc_policy, "random | regular");
  verify->add_option("--omega-margin", vc.omega_margin, "minimum Omega margin of Y");
  verify->add_option("--json", vc_json, "report file");

  // eval-sphfun
  std::string ev_group = "sl2r", ev_method = "both";
  std::vector<double> ev_nu{1.0}, ev_H{0.5}, ev_C{0.0};
  int ev_degree = 40;
  auto* eval = app.add_subcommand("eval-sphfun", "evaluate phi_lambda(exp(H + iC)) with lambda = i nu");
  eval->add_option("--group", ev_group, "sl2r | sl2c | sl3r");
  eval->add_option("--nu", ev_nu, "nu coordinates (one number x means (x, -x) at rank one)");
  eval->add_option("--H", ev_H, "H coordinates");
  eval->add_option("--C", ev_C, "C coordinates");
  eval->add_option("--method", ev_method, "series | integral | both");
  eval->add_option("--max-degree", ev_degree);

  // scan-boundary
  std::string sc_kind = "heat", sc_json, sc_csv;
  ScanConfig sc;
  auto* scan = app.add_subcommand("scan-boundary", "|value| along paths Y -> boundary of Omega (SL(2,R))");
  scan->add_option("--kind", sc_kind, "heat | spherical");
  scan->add_option("--param", sc.params, "t values (heat) or nu values (spherical)");
  scan->add_option("--points", sc.points)->check(CLI::Range(4, 200));
  scan->add_option("--end-margin", sc.end_margin, "smallest Omega margin (>= 1e-4)");
  scan->add_option("--json", sc_json, "summary file");
  scan->add_option("--csv-dir", sc_csv,
                   "directory for per-path CSV files scan_<kind>_<i>_<path>.csv with columns "
                   "s,omega_margin,abs_value,re,im (s increasing)");

  // probe-bounds
  ProbeConfig pc;
  std::string pc_json;
  auto* probe = app.add_subcommand("probe-bounds", "upper and lower bound ratios in t");
  probe->add_option("--system", pc.system, "A1m1 | A1m2 | A2m1");
  probe->add_option("--samples", pc.samples)->check(CLI::PositiveNumber);
  probe->add_option("--seed", pc.seed)->required();
  probe->add_option("--points", pc.points)->check(CLI::Range(4, 100));
  probe->add_option("--max-degree", pc.max_degree);
  probe->add_option("--json", pc_json, "report file");

  // oracles
  OracleConfig oc;
  std::string oc_json;
  auto* oracles = app.add_subcommand("oracles", "linear/nonlinear convexity and polar decomposition canaries");
  oracles->add_option("--n", oc.n)->check(CLI::Range(2, 8));
  oracles->add_option("--trials", oc.trials)->check(CLI::PositiveNumber);
  oracles->add_option("--seed", oc.seed)->required();
  oracles->add_option("--json", oc_json, "report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (*verify) {
      vc.field = parse_field(vc_field);
      vc.policy = parse_policy(vc_policy);
      if (vc_check == "eigen") {
        vc.check = ConvexityCheck::Eigen;
      } else if (vc_check == "horospherical") {
        vc.check = ConvexityCheck::Horospherical;
      } else {
        throw std::invalid_argument("check must be 'eigen' or 'horospherical'");
      }
      vc.threads = threads;
      const auto s = run_convexity_campaign(vc);
      write_json(vc_json, s.report);
      std::printf("verify-convexity n=%d field=%s check=%s trials=%lld: confirmed=%lld skipped=%lld violations=%lld "
                  "min_margin=%.3e (%.2fs)\n",
                  vc.n, vc_field.c_str(), vc_check.c_str(), static_cast<long long>(vc.trials),
                  static_cast<long long>(s.confirmed), static_cast<long long>(s.skipped),
                  static_cast<long long>(s.violations), s.min_hull_margin, seconds_since(t0));
      return s.violations == 0 ? 0 : kExitViolation;
    }

    if (*eval) {
      const bool rank_one = ev_group != "sl3r";
      if (ev_group != "sl2r" && ev_group != "sl2c" && ev_group != "sl3r") {
        throw std::invalid_argument("group must be sl2r, sl2c or sl3r");
      }
      const RootSystem& rs = named_root_system(ev_group == "sl2r" ? "A1m1" : ev_group == "sl2c" ? "A1m2" : "A2m1");
      const int dim = rs.ambient_dim;
      const auto lam = SpectralParameter::imaginary(rs, ambient(ev_nu, dim, "nu"));
      if (!lam.regular) throw std::invalid_argument("lambda is singular: <lambda, alpha> = 0 for some root");
      const RealVec H = ambient(ev_H, dim, "H");
      const RealVec C = ambient(ev_C, dim, "C");
      if (ev_method != "series" && ev_method != "integral" && ev_method != "both") {
        throw std::invalid_argument("method must be series, integral or both");
      }
      cplx vs{}, vi{};
      const bool want_series = ev_method != "integral";
      const bool want_integral = ev_method != "series";
      if (want_integral && !rank_one) throw std::invalid_argument("the K-integral is available for sl2r and sl2c only");
      if (want_series) {
        const auto sv = spherical_series(rs, make_cfunction(rs), lam, {H, C}, ev_degree);
        vs = sv.value;
        std::printf("series    %s  (heuristic tail %.2e%s)\n", fmt(vs).c_str(), sv.error_bound,
                    sv.converged ? "" : ", unconverged");
      }
      if (want_integral) {
        ComplexMat g = ComplexMat::Zero(2, 2);
        g(0, 0) = std::exp(H(0));
        g(1, 1) = std::exp(H(1));
        const auto grp = ev_group == "sl2r" ? RankOneGroup::SL2R : RankOneGroup::SL2C;
        const auto iv = spherical_integral(grp, lam, g, C);
        vi = iv.value;
        std::printf("integral  %s  (%d panels)\n", fmt(vi).c_str(), iv.panels);
      }
      if (want_series && want_integral) std::printf("rel_delta %.3e\n", std::abs(vs - vi) / std::abs(vi));
      return 0;
    }

    if (*scan) {
      if (sc_kind == "heat") {
        sc.kind = ScanKind::Heat;
      } else if (sc_kind == "spherical") {
        sc.kind = ScanKind::Spherical;
      } else {
        throw std::invalid_argument("kind must be heat or spherical");
      }
      if (sc.end_margin < 1e-4) throw std::invalid_argument("end-margin must be >= 1e-4");
      const auto s = run_scan_campaign(sc);
      write_json(sc_json, s.report);
      if (!sc_csv.empty()) {
        const std::size_t paths = scan_path_elements().size();
        for (std::size_t i = 0; i < s.scans.size(); ++i) {
          const std::string name = "scan_" + sc_kind + "_" + std::to_string(i / paths) + "_" + std::to_string(i % paths) + ".csv";
          std::ofstream os(output_path((fs::path(sc_csv) / name).string()));
          write_scan_csv(os, s.scans[i]);
        }
      }
      std::printf("scan-boundary kind=%s: %d of %zu scans bounded-plateau (%.2fs)\n", sc_kind.c_str(), s.bounded,
                  s.scans.size(), seconds_since(t0));
      return s.bounded == static_cast<int>(s.scans.size()) ? 0 : kExitViolation;
    }

    if (*probe) {
      pc.threads = threads;
      const auto s = run_probe_campaign(pc);
      write_json(pc_json, s.report);
      std::printf("probe-bounds %s: upper bounded %d/%d, lower success %d/%d (min slope %.3f, p = %.1f) (%.2fs)\n",
                  pc.system.c_str(), s.upper_bounded, s.upper_total, s.lower_success, s.lower_total,
                  s.min_lower_slope, s.p, seconds_since(t0));
      const bool ok = s.upper_bounded == s.upper_total && s.lower_success == pc.samples;
      return ok ? 0 : kExitViolation;
    }

    if (*oracles) {
      oc.threads = threads;
      const auto s = run_oracle_campaign(oc);
      write_json(oc_json, s.report);
      std::printf("oracles n=%d trials=%lld: min margins linear %.3e nonlinear %.3e polar %.3e (%.2fs)\n", oc.n,
                  static_cast<long long>(oc.trials), s.min_linear, s.min_nonlinear, s.min_polar, seconds_since(t0));
      return s.failures == 0 ? 0 : kExitViolation;
    }
  } catch (const NumericalGuard& e) {
    std::fprintf(stderr, "numerical guard: %s\n", e.what());
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return 0;
}
