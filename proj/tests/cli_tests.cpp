#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

std::string g_cli;  // path to the CLI binary, from argv[1]

int run_cli(const std::string& args) {
  std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "fockkernel_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_identical(const fs::path& a, const fs::path& b, const std::string& file) {
  CHECK(slurp(a / file) == slurp(b / file));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen reruns byte-identical and reacts to the seed") {
  fs::path a = fresh_dir("gen_a"), b = fresh_dir("gen_b"), c = fresh_dir("gen_c");
  std::string args = "gen --family moons --n-train 12 --n-test 6 --seed 7 --out ";
  REQUIRE(run_cli(args + a.string()) == 0);
  REQUIRE(run_cli(args + b.string()) == 0);
  check_identical(a, b, "moons.csv");
  check_identical(a, b, "gen_config.json");
  REQUIRE(run_cli("gen --family moons --n-train 12 --n-test 6 --seed 8 --out " + c.string()) == 0);
  CHECK(slurp(a / "moons.csv") != slurp(c / "moons.csv"));
}

TEST_CASE("svm run reruns byte-identical including the decision grid") {
  fs::path a = fresh_dir("svm_a"), b = fresh_dir("svm_b");
  std::string args =
      "svm --family blobs --n-train 16 --n-test 8 --c 1.5 --C 2 --tol 1e-5 --grid 6 "
      "--seed 11 --out ";
  REQUIRE(run_cli(args + a.string()) == 0);
  REQUIRE(run_cli(args + b.string()) == 0);
  for (const char* f : {"svm_model.json", "svm_metrics.json", "svm_grid.csv", "svm_config.json"})
    check_identical(a, b, f);
}

TEST_CASE("svm c sweep emits one metrics row per value and no model file") {
  fs::path dir = fresh_dir("svm_sweep");
  REQUIRE(run_cli("svm --family blobs --n-train 14 --n-test 6 --c 0.5,1.5 --out " +
                  dir.string()) == 0);
  auto metrics = nlohmann::json::parse(slurp(dir / "svm_metrics.json"));
  REQUIRE(metrics.at("rows").size() == 2);
  CHECK(metrics["rows"][0].at("c").get<double>() == 0.5);
  CHECK(metrics["rows"][1].at("c").get<double>() == 1.5);
  for (const auto& row : metrics["rows"]) {
    CHECK(row.at("train_accuracy").get<double>() >= 0.5);
    CHECK(row.at("converged").get<bool>());
  }
  CHECK_FALSE(fs::exists(dir / "svm_model.json"));
  CHECK_FALSE(fs::exists(dir / "svm_grid.csv"));
}

TEST_CASE("perceptron run is deterministic") {
  fs::path a = fresh_dir("perc_a"), b = fresh_dir("perc_b");
  std::string args =
      "perceptron --family blobs --n-train 10 --n-test 4 --c 1.0 --cutoff 10 "
      "--min-captured 0.5 --seed 3 --out ";
  REQUIRE(run_cli(args + a.string()) == 0);
  REQUIRE(run_cli(args + b.string()) == 0);
  check_identical(a, b, "perceptron_metrics.json");
  check_identical(a, b, "perceptron_config.json");
  auto metrics = nlohmann::json::parse(slurp(a / "perceptron_metrics.json"));
  CHECK(metrics.at("min_captured_norm").get<double>() >= 0.5);
}

TEST_CASE("variational short run is deterministic") {
  fs::path a = fresh_dir("var_a"), b = fresh_dir("var_b");
  std::string args =
      "variational --family moons --n-train 8 --n-test 4 --blocks 1 --cutoff 8 --steps 2 "
      "--batch 4 --seed 5 --out ";
  REQUIRE(run_cli(args + a.string()) == 0);
  REQUIRE(run_cli(args + b.string()) == 0);
  for (const char* f : {"variational_checkpoint.json", "variational_trace.csv",
                        "variational_metrics.json", "variational_config.json"})
    check_identical(a, b, f);
  auto checkpoint = nlohmann::json::parse(slurp(a / "variational_checkpoint.json"));
  CHECK(checkpoint.at("step").get<long>() == 2);
  CHECK(checkpoint.at("theta").size() == 8);
}

TEST_CASE("verify passes at reduced sampling and reruns byte-identical") {
  fs::path a = fresh_dir("verify_a"), b = fresh_dir("verify_b");
  std::string args = "verify --pairs 5 --psd-sets 2 --seed 9 --out ";
  REQUIRE(run_cli(args + a.string()) == 0);
  REQUIRE(run_cli(args + b.string()) == 0);
  check_identical(a, b, "verify_report.json");
  auto report = nlohmann::json::parse(slurp(a / "verify_report.json"));
  CHECK(report.at("all_pass").get<bool>());
  REQUIRE(report.at("checks").size() == 5);

  // an absurdly small cutoff must fail the overlap check and exit nonzero
  fs::path c = fresh_dir("verify_low");
  CHECK(run_cli("verify --cutoff 4 --pairs 5 --psd-sets 2 --out " + c.string()) == 1);
  auto low = nlohmann::json::parse(slurp(c / "verify_report.json"));
  CHECK_FALSE(low.at("all_pass").get<bool>());
}

TEST_CASE("exit codes distinguish usage errors") {
  fs::path dir = fresh_dir("errors");
  CHECK(run_cli("gen --family spirals --out " + dir.string()) == 2);
  CHECK(run_cli("svm --family blobs --n-train 6 --n-test 2 --kernel warp --out " +
                dir.string()) == 2);
  CHECK(run_cli("svm --family blobs --n-train 6 --n-test 2 --c 0.5,abc --out " +
                dir.string()) == 2);
  CHECK(run_cli("") == 2);          // a subcommand is required
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("gen --help") == 0);
}

}  // TEST_SUITE

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_tests <path-to-cli> [doctest args]\n");
    return 1;
  }
  g_cli = argv[1];
  doctest::Context context;
  context.applyCommandLine(1, argv);
  return context.run();
}
