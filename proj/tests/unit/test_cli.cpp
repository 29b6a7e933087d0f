#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CROWNLAB_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p)) r.out += buf;
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / ("crownlab_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("verify-convexity --n 3").code == 2);  // seed is required
  CHECK(run("verify-convexity --n 9 --seed 1").code == 2);
  CHECK(run("verify-convexity --seed 1 --field octonion").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("verify-convexity") {
  const fs::path dir = scratch_dir();
  const auto r = run("verify-convexity --n 3 --field real --trials 500 --seed 42 --json " + (dir / "a.json").string());
  CHECK(r.code == 0);
  CHECK(r.out.find("violations=0") != std::string::npos);
  const auto j = nlohmann::json::parse(slurp(dir / "a.json"));
  CHECK(j["schema"] == 1);
  CHECK(j["counts"]["violations"] == 0);

  CHECK(run("verify-convexity --n 2 --field complex --trials 500 --seed 42").code == 0);

  // identical JSON across invocations and thread counts
  CHECK(run("verify-convexity --n 3 --trials 1 --seed 7 --json " + (dir / "b1.json").string()).code == 0);
  CHECK(run("verify-convexity --n 3 --trials 1 --seed 7 --json " + (dir / "b2.json").string()).code == 0);
  CHECK(run("--threads 3 verify-convexity --n 3 --trials 40 --seed 7 --json " + (dir / "c1.json").string()).code == 0);
  CHECK(run("verify-convexity --n 3 --trials 40 --seed 7 --json " + (dir / "c2.json").string()).code == 0);
  CHECK(slurp(dir / "b1.json") == slurp(dir / "b2.json"));
  CHECK(slurp(dir / "c1.json") == slurp(dir / "c2.json"));
  CHECK(!slurp(dir / "b1.json").empty());

  // output directory override for relative paths
  const std::string env = "CROWNLAB_OUTPUT_DIR=" + (dir / "out").string() + " ";
  const std::string cmd = env + CROWNLAB_CLI + " verify-convexity --trials 3 --seed 1 --json rel.json > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "out" / "rel.json"));
  fs::remove_all(dir);
}

TEST_CASE("eval-sphfun") {
  auto base = run("eval-sphfun --group sl2r --nu 1.3 --H 0 --C 0 --method integral");
  CHECK(base.code == 0);
  const auto at = base.out.find("integral  ");
  REQUIRE(at != std::string::npos);
  CHECK(std::abs(std::stod(base.out.substr(at + 10)) - 1.0) < 1e-10);

  const auto both = run("eval-sphfun --group sl2r --nu 5 --H 0.75 --method both");
  CHECK(both.code == 0);
  const auto pos = both.out.find("rel_delta ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(both.out.substr(pos + 10)) < 1e-6);

  CHECK(run("eval-sphfun --group sl3r --nu 1.37 0.21 -1.58 --H 1 0 -1 --C 0.1 0 -0.1 --method series").code == 0);
  CHECK(run("eval-sphfun --group sl3r --method integral --nu 1 0 -1 --H 1 0 -1 --C 0 0 0").code == 2);
  // singular lambda
  CHECK(run("eval-sphfun --group sl2r --nu 0 --H 0.5").code == 2);
  CHECK(run("eval-sphfun --group sl2r --nu 1 2 3").code == 2);
}

TEST_CASE("scan-boundary CSV output") {
  const fs::path dir = scratch_dir();
  const auto r = run("scan-boundary --kind spherical --param 1.0 --points 5 --csv-dir " + (dir / "csv").string() +
                     " --json " + (dir / "scan.json").string());
  CHECK(r.code == 0);
  int files = 0;
  for (const auto& e : fs::directory_iterator(dir / "csv")) {
    ++files;
    std::ifstream is(e.path());
    std::string line;
    std::getline(is, line);
    CHECK(line == "s,omega_margin,abs_value,re,im");
    double prev = -1;
    while (std::getline(is, line)) {
      const double s = std::stod(line.substr(0, line.find(',')));
      CHECK(s > prev);
      prev = s;
    }
  }
  CHECK(files == 5);
  CHECK(fs::exists(dir / "csv" / "scan_spherical_0_4.csv"));
  CHECK(run("scan-boundary --kind heat --end-margin 1e-6").code == 2);
  fs::remove_all(dir);
}

TEST_CASE("probe-bounds and oracles") {
  const auto p = run("probe-bounds --system A1m1 --samples 2 --points 6 --seed 3");
  CHECK(p.code == 0);
  CHECK(run("probe-bounds --system E8 --seed 3").code == 2);
  const auto o = run("oracles --n 3 --trials 200 --seed 1");
  CHECK(o.code == 0);
  CHECK(o.out.find("min margins") != std::string::npos);
}
