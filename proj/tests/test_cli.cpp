#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mubqt/commands.hpp"
#include "mubqt/config.hpp"
#include "mubqt/fixtures.hpp"
#include "mubqt/io.hpp"
#include "test_helpers.hpp"

using namespace mubqt;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path write_config(const fs::path& dir, const std::string& body) {
  const auto path = dir / "config.json";
  io::write_file(path, body);
  return path;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("mub exports and certifies") {
    const auto dir = test::scratch_dir("cli_mub");
    auto r = cli({"mub", "--dim", "7", "--out", dir.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("bases=8") != std::string::npos);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(fs::exists(dir / "family.json"));
    CHECK(fs::exists(dir / "modulation.csv"));
    CHECK(fs::exists(dir / "certification.txt"));
    const auto fam = io::family_from_json(io::json::parse(io::read_file(dir / "family.json")));
    CHECK(fam.bases.size() == 8);

    r = cli({"mub", "--dim", "8", "--source", "tables", "--out", dir.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("bases=9") != std::string::npos);
    CHECK(r.out.find("{U1, U2, U3, U4, U5, U6, U7, U8, U9}") != std::string::npos);

    r = cli({"mub", "--dim", "6", "--out", dir.string()});
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("no construction available") != std::string::npos);

    CHECK(cli({"mub"}).code == kExitConfig);
    CHECK(cli({"bogus"}).code == kExitConfig);
  }

  TEST_CASE("simulate is deterministic and proportional without noise") {
    const auto dir = test::scratch_dir("cli_sim");
    const auto cfg = write_config(dir, R"({"dim": 7, "beam": {"fixture": "psi7"},
        "noise": {"kind": "poisson", "seed": 42, "mean_peak_rate": 10000, "integration_time": 1}})");
    const auto a = dir / "a", b = dir / "b";
    CHECK(cli({"simulate", "--config", cfg.string(), "--out", a.string()}).code == kExitOk);
    CHECK(cli({"simulate", "--config", cfg.string(), "--out", b.string()}).code == kExitOk);
    CHECK(io::read_file(a / "counts.csv") == io::read_file(b / "counts.csv"));
    CHECK(io::read_file(a / "counts.json") == io::read_file(b / "counts.json"));
    CHECK(cli({"simulate", "--config", cfg.string(), "--out", b.string(), "--seed", "7"}).code == kExitOk);
    CHECK(io::read_file(a / "counts.csv") != io::read_file(b / "counts.csv"));

    const auto counts = io::counts_from_json(io::json::parse(io::read_file(a / "counts.json")));
    CHECK(counts.seed == 42);
    // peak projector is the flat m = 0 Fourier vector, p ~ 0.95
    CHECK(counts.counts.maxCoeff() > 9000);
    CHECK(counts.counts.maxCoeff() < 10000);

    const auto quiet = write_config(dir, R"({"dim": 7, "beam": {"fixture": "psi7"}, "noise": {"kind": "none"}})");
    CHECK(cli({"simulate", "--config", quiet.string(), "--out", a.string()}).code == kExitOk);
    const auto exact = io::counts_from_json(io::json::parse(io::read_file(a / "counts.json")));
    const auto ideal = ideal_probabilities(fixture_state("psi7"), prime_mub_family(7));
    for (Eigen::Index r = 0; r < ideal.values.rows(); ++r)
      for (Eigen::Index m = 0; m < 7; ++m) CHECK(exact.counts(r, m) == std::llround(ideal.values(r, m) * 1e4));
  }

  TEST_CASE("config errors map to exit status 2") {
    const auto dir = test::scratch_dir("cli_cfg");
    const auto cfg = write_config(dir, "{\"dim\": 7,\n \"family\": 3}");
    const auto r = cli({"simulate", "--config", cfg.string(), "--out", dir.string()});
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("/family") != std::string::npos);
    CHECK(cli({"simulate", "--out", dir.string()}).code == kExitConfig);
  }

  TEST_CASE("noiseless reconstruction recovers the fixture") {
    const auto dir = test::scratch_dir("cli_rec");
    const auto cfg = write_config(dir, R"({"dim": 7, "beam": {"fixture": "psi7"},
        "noise": {"kind": "none", "mean_peak_rate": 1e12}})");
    CHECK(cli({"simulate", "--config", cfg.string(), "--out", dir.string()}).code == kExitOk);
    const auto r = cli({"reconstruct", "--config", cfg.string(), "--out", dir.string(), "--trials", "100"});
    CHECK(r.code == kExitOk);
    const auto rep = io::json::parse(io::read_file(dir / "reconstruction.json"));
    CHECK(rep["fidelity"][0]["point"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep["fidelity"][1]["point"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep["purity"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep["eigenvalues"].size() == 7);
    CHECK(rep.contains("diagnostics"));
  }

  TEST_CASE("cross-fixture fidelity equals the direct overlap") {
    const auto dir = test::scratch_dir("cli_cross");
    const auto cfg = write_config(dir, R"({"dim": 8, "beam": {"fixture": "psi8_2"}, "expected_state": "psi8_1",
        "noise": {"kind": "none", "mean_peak_rate": 1e12}})");
    CHECK(cli({"simulate", "--config", cfg.string(), "--out", dir.string()}).code == kExitOk);
    const auto r = cli({"fidelity", "--config", cfg.string(), "--out", dir.string(), "--trials", "100"});
    CHECK(r.code == kExitOk);
    const auto f = io::json::parse(io::read_file(dir / "fidelity.json"));
    const double direct =
        overlap_squared(fixture_state("psi8_1").amplitudes(), fixture_state("psi8_2").amplitudes());
    CHECK(f["point"].get<double>() == doctest::Approx(direct).epsilon(1e-9));
    CHECK(cli({"fidelity", "--config", cfg.string(), "--out", dir.string(), "--estimator", "x"}).code == kExitConfig);
  }

  TEST_CASE("pattern output") {
    const auto dir = test::scratch_dir("cli_pat");
    const auto cfg = write_config(dir, R"({"dim": 7, "beam": {"fixture": "psi7"}})");
    auto r = cli({"pattern", "--config", cfg.string(), "--out", dir.string(), "--alpha", "7", "--m", "1",
                  "--points", "101"});
    CHECK(r.code == kExitOk);
    const auto csv = io::read_file(dir / "pattern.csv");
    CHECK(csv.rfind("x_meters,relative_rate\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 102);

    // the center sample is the projection probability onto (alpha = 7, m = 1)
    r = cli({"pattern", "--config", cfg.string(), "--out", dir.string(), "--alpha", "7", "--m", "1", "--xmin", "0",
             "--xmax", "1e-3", "--points", "2"});
    CHECK(r.code == kExitOk);
    std::istringstream in(io::read_file(dir / "pattern.csv"));
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    const double center = std::stod(line.substr(line.find(',') + 1));
    const auto p = ideal_probabilities(fixture_state("psi7"), prime_mub_family(7));
    CHECK(center == doctest::Approx(p.values(7, 4)).epsilon(1e-12));

    CHECK(cli({"pattern", "--config", cfg.string(), "--out", dir.string(), "--alpha", "7", "--m", "0.5"}).code ==
          kExitConfig);
  }
}
