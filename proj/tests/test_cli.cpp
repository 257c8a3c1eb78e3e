#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "quenchbat/cli.hpp"
#include "quenchbat/csv.hpp"
#include "quenchbat/errors.hpp"

namespace {

namespace fs = std::filesystem;
using namespace quenchbat;

std::string checked_field(const std::string& text) {
  try {
    (void)cli::parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("quenchbat_test_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int run_cli(const std::string& command_line) {
  int rc = std::system(command_line.c_str());
  REQUIRE(rc != -1);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

const std::string kCurveConfig =
    "command = curve\n"
    "[ising]\n"
    "h = 0.5\n"
    "[quench]\n"
    "param = h\n"
    "amount = 1.5\n"
    "[grid]\n"
    "mode = finite\n"
    "n = 64\n"
    "[thermal]\n"
    "beta = 5\n"
    "[tau]\n"
    "values = 0, 0.5, 1.0, 2.5\n";

TEST_SUITE("cli") {
  TEST_CASE("parse errors name the offending field") {
    CHECK(checked_field("") == "command");
    CHECK(checked_field("command = frobnicate\n[ising]\nh = 1\n[thermal]\nbeta = 1\n") ==
          "command");
    CHECK(checked_field("command = curve\n[ising]\nh = 1\n[foo]\nx = 1\n") == "foo");
    CHECK(checked_field("command = curve\n[ising]\nh = 1\n[quench]\nparam = h\n"
                        "[thermal]\nbeta = 1\nbogus = 2\n") == "thermal.bogus");
    CHECK(checked_field("command = curve\n[ising]\nh = 1\nh = 2\n") == "ising.h");
    CHECK(checked_field("command = curve\n[ising]\nh = 1\n[ising]\nh = 2\n") == "ising");
    CHECK(checked_field("command = curve\n[ising]\nh = 1\n[quench]\nparam = h\n") ==
          "thermal.beta");
    CHECK(checked_field("command = curve\n[ising]\nh = 1\n[xy]\ngamma = 1\n") == "model");
    CHECK(checked_field("command = curve\n[thermal]\nbeta = 1\n") == "model");
    CHECK(checked_field("command = curve\n[ising]\nh = 1\n[quench]\nparam = gamma\n"
                        "[thermal]\nbeta = 1\n") == "quench.param");
    CHECK(checked_field("command = curve\n[ising]\nh = 1\n[thermal]\nbeta = 1\n") ==
          "quench.param");
    CHECK(checked_field("command = sweep\n[ising]\nh = 1\n[quench]\nparam = h\namount = 1\n"
                        "[thermal]\nbeta = 1\n") == "sweep");
    CHECK(checked_field("command = sweep\n[ising]\nh = 1\n[quench]\nparam = h\namount = 1\n"
                        "[thermal]\nbeta = 1\n[sweep]\nfrom = 0\nto = 1\nstep = 0.1\n") ==
          "sweep.param");
    CHECK(checked_field("command = sweep\n[ising]\nh = 1\n[quench]\nparam = h\namount = 1\n"
                        "[thermal]\nbeta = 1\n[sweep]\nparam = h\nfrom = 0\nto = 1\nstep = 0.1\n"
                        "target = sideways\n") == "sweep.target");
    CHECK(checked_field("command = curve\n[ising]\nh = 1\n[quench]\nparam = h\namount = 1\n"
                        "[thermal]\nbeta = 1\n[tau]\nvalues = 1, 2\nfrom = 0.1\n") ==
          "tau.values");
    CHECK(checked_field("command = curve\n[ising]\nh = 1\n[quench]\nparam = h\namount = 1\n"
                        "[thermal]\nbeta = 1\n[tau]\nvalues = 2, 1\n") == "tau.values");
    CHECK(checked_field("command = scaling\n[ising]\nh = 1\n[quench]\nparam = h\namount = 1\n"
                        "[thermal]\nbeta = 1\n[scaling]\nn_list = 50, 100, 200\n") ==
          "scaling.n_list");
    CHECK(checked_field("command = recurrence\n[ising]\nh = 1\n[quench]\nparam = h\n"
                        "amount = 1\n[thermal]\nbeta = 1\n[grid]\nmode = finite\nn = 32\n"
                        "offset = integer\n") == "grid.offset");
    CHECK(checked_field("command = recurrence\n[ising]\nh = 1\n[quench]\nparam = h\n"
                        "amount = 1\n[thermal]\nbeta = 1\n[grid]\nmode = thermodynamic\n") ==
          "grid.mode");
    CHECK(checked_field("command = power\n[ising]\nh = 1\n[quench]\nparam = h\namount = 1\n"
                        "[thermal]\nbeta = 1\n[tau]\nvalue = 1\n") == "tau");
    CHECK(checked_field("command = curve\n[ising]\nh = 1\n[quench]\nparam = h\namount = 1\n"
                        "[thermal]\nbeta = 0\n") == "thermal.beta");
    CHECK(checked_field("command = curve\n[ssh]\nJ1 = 1\ndelta1 = 0.2\n[quench]\n"
                        "param = J1\namount = 1\n[thermal]\nbeta = 1\n") == "ssh");
    CHECK(checked_field("command = curve\n[ising]\nh = oops\n[quench]\nparam = h\namount = 1\n"
                        "[thermal]\nbeta = 1\n") == "ising.h");
  }

  TEST_CASE("missing config files are configuration errors") {
    CHECK_THROWS_AS((void)cli::load_config("/nonexistent/nowhere.ini"), ConfigError);
  }

  TEST_CASE("infinite beta and tau parse and round-trip") {
    std::string text =
        "command = power\n[ising]\nh = 0.5\n[quench]\nparam = h\namount = 1\n"
        "[thermal]\nbeta = inf\n";
    cli::RunConfig c = cli::parse_config_text(text);
    CHECK(std::isinf(c.beta));
    std::string canon = cli::canonical_ini(c);
    cli::RunConfig c2 = cli::parse_config_text(canon);
    CHECK(std::isinf(c2.beta));
  }

  TEST_CASE("canonical form is a fixpoint of parse and serialize") {
    for (const std::string& text :
         {kCurveConfig,
          std::string("command = sweep\n[xy]\ngamma = 1\nh = 0\n[quench]\nparam = gamma\n"
                      "amount = -0.5\n[thermal]\nbeta = inf\n[sweep]\nparam = gamma\n"
                      "from = -2\nto = 2\nstep = 0.25\ntarget = both\n"
                      "[grid]\nmode = thermodynamic\n"),
          std::string("command = recurrence\n[ssh]\nJ1 = 8.5\nJ1p = -5.5\n[quench]\n"
                      "param = J1\namount = -7\n[thermal]\nbeta = 10\n[grid]\n"
                      "mode = finite\nn = 50\n")}) {
      cli::RunConfig c = cli::parse_config_text(text);
      std::string canon = cli::canonical_ini(c);
      cli::RunConfig c2 = cli::parse_config_text(canon);
      CHECK(cli::canonical_ini(c2) == canon);
    }
  }

  TEST_CASE("doubles format with shortest round-trip") {
    CHECK(csv::format_double(0.25) == "0.25");
    CHECK(csv::format_double(0.0) == "0");
    CHECK(csv::format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(csv::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    for (double v : {0.1, 1.0 / 3.0, 1e-308, 1e300, -7.25, 6.02214076e23}) {
      CHECK(std::strtod(csv::format_double(v).c_str(), nullptr) == v);
    }
  }

  TEST_CASE("two-column layout") {
    std::string s = csv::two_columns("a", "b", {1.0, 2.5}, {3.0, 0.5});
    CHECK(s == "a,b\n1,3\n2.5,0.5\n");
  }

  TEST_CASE("run writes the CSV and a manifest that reproduces it") {
    fs::path dir1 = fresh_dir("run1");
    cli::RunConfig c = cli::parse_config_text(kCurveConfig);
    auto outs = cli::run(c, dir1.string(), 1, 42);
    REQUIRE(outs.files.size() == 2);
    CHECK(fs::exists(outs.files[0]));
    CHECK(fs::path(outs.files[1]).filename() == "manifest.json");

    std::string csv1 = slurp(dir1 / "curve.csv");
    CHECK(csv1.rfind("tau,energy_per_site\n", 0) == 0);
    // A zero-length pulse stores nothing: first row is exact.
    CHECK(csv1.find("\n0,0\n") != std::string::npos);

    auto manifest = nlohmann::json::parse(slurp(dir1 / "manifest.json"));
    CHECK(manifest["tool"] == "quenchbat");
    CHECK(manifest["command"] == "curve");
    CHECK(manifest["seed"] == 42);
    CHECK(manifest["outputs"][0] == "curve.csv");

    // Replaying the embedded canonical config reproduces the CSV byte for
    // byte.
    fs::path dir2 = fresh_dir("run2");
    cli::RunConfig replay = cli::parse_config_text(manifest["config_ini"].get<std::string>());
    (void)cli::run(replay, dir2.string(), 1, 42);
    CHECK(slurp(dir2 / "curve.csv") == csv1);

    fs::remove_all(dir1);
    fs::remove_all(dir2);
  }

  TEST_CASE("the binary runs end to end") {
    const std::string cli_path = QUENCHBAT_CLI_PATH;
    fs::path dir = fresh_dir("e2e");
    fs::path cfg = dir / "job.ini";
    csv::write_file(cfg.string(), kCurveConfig);

    int rc = run_cli(cli_path + " --config " + cfg.string() + " --out " + dir.string() +
                     " > /dev/null 2>&1");
    CHECK(rc == 0);
    REQUIRE(fs::exists(dir / "curve.csv"));
    REQUIRE(fs::exists(dir / "manifest.json"));
    std::string base_csv = slurp(dir / "curve.csv");

    // The scalar kernel must agree with whatever variant the host picked.
    fs::path sdir = fresh_dir("e2e_scalar");
    rc = run_cli("QUENCHBAT_KERNEL=scalar " + cli_path + " --config " + cfg.string() +
                 " --out " + sdir.string() + " > /dev/null 2>&1");
    CHECK(rc == 0);
    auto manifest = nlohmann::json::parse(slurp(sdir / "manifest.json"));
    CHECK(manifest["kernel"] == "scalar");
    std::string scalar_csv = slurp(sdir / "curve.csv");

    auto parse_rows = [](const std::string& text) {
      std::vector<std::pair<double, double>> rows;
      std::istringstream ss(text);
      std::string line;
      std::getline(ss, line);  // header
      while (std::getline(ss, line)) {
        auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        rows.emplace_back(std::strtod(line.substr(0, comma).c_str(), nullptr),
                          std::strtod(line.substr(comma + 1).c_str(), nullptr));
      }
      return rows;
    };
    auto base = parse_rows(base_csv);
    auto scalar = parse_rows(scalar_csv);
    REQUIRE(base.size() == 4);
    REQUIRE(scalar.size() == base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK(base[i].first == scalar[i].first);
      CHECK(std::abs(base[i].second - scalar[i].second) <=
            1e-12 * (1.0 + std::abs(base[i].second)));
    }

    // Configuration problems exit with the dedicated code.
    fs::path bad = dir / "bad.ini";
    csv::write_file(bad.string(), "command = curve\n[ising]\nh = 1\n");
    CHECK(run_cli(cli_path + " --config " + bad.string() + " > /dev/null 2>&1") == 2);
    CHECK(run_cli(cli_path + " --config /nonexistent.ini > /dev/null 2>&1") == 2);

    fs::remove_all(dir);
    fs::remove_all(sdir);
  }

  TEST_CASE("cli_main exit codes in process") {
    fs::path dir = fresh_dir("inproc");
    fs::path cfg = dir / "job.ini";
    csv::write_file(cfg.string(),
                    "command = power\n[cluster]\nlambda = 0.7\n[quench]\nparam = lambda\n"
                    "amount = 0.3\n[grid]\nmode = finite\nn = 32\n[thermal]\nbeta = inf\n");
    std::string cfg_s = cfg.string();
    std::string out_s = (dir / "out").string();
    const char* argv_ok[] = {"quenchbat", "--config", cfg_s.c_str(), "--out", out_s.c_str()};
    CHECK(cli::cli_main(5, argv_ok) == 0);
    CHECK(fs::exists(dir / "out" / "power.csv"));
    const char* argv_bad[] = {"quenchbat", "--config", "/nonexistent.ini"};
    CHECK(cli::cli_main(3, argv_bad) == 2);
    fs::remove_all(dir);
  }
}

}  // namespace
