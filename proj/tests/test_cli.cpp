#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("capra_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

RunResult run(const std::string& args, const std::string& stdout_file) {
  const std::string cmd =
      std::string(CAPRA_CLI_PATH) + " " + args + " > " + stdout_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(stdout_file);
  std::ostringstream os;
  os << in.rdbuf();
  r.stdout_text = os.str();
  return r;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

ordered_json normalized_report(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  ordered_json j = ordered_json::parse(in);
  j["generated_at"] = "";
  for (auto& c : j.at("checks")) c["runtime_ms"] = 0.0;
  return j;
}

}  // namespace

TEST_CASE("norm subcommand evaluates the worked examples") {
  TempDir tmp;
  write_text(tmp.file("x.json"), "[3, 0, -4]");
  write_text(tmp.file("x2.txt"), "3 -4");

  auto r = run("norm --kind topk --k 2 --vec " + tmp.file("x.json"),
               tmp.file("out1"));
  CHECK(r.exit_code == 0);
  CHECK(ordered_json::parse(r.stdout_text).at("value").get<double>() == 5.0);

  r = run("norm --kind l0 --vec " + tmp.file("x.json"), tmp.file("out2"));
  CHECK(r.exit_code == 0);
  CHECK(ordered_json::parse(r.stdout_text).at("value").get<double>() == 2.0);

  r = run("norm --kind ksup --k 1 --vec " + tmp.file("x2.txt"), tmp.file("out3"));
  CHECK(r.exit_code == 0);
  CHECK(ordered_json::parse(r.stdout_text).at("value").get<double>() ==
        doctest::Approx(7.0).epsilon(1e-13));

  r = run("norm --kind euclid --vec " + tmp.file("x.json"), tmp.file("out4"));
  CHECK(ordered_json::parse(r.stdout_text).at("value").get<double>() == 5.0);

  // Forcing the scalar kernel backend changes nothing observable.
  r = run("--kernels scalar norm --kind topk --k 2 --vec " + tmp.file("x.json"),
          tmp.file("out5"));
  CHECK(r.exit_code == 0);
  CHECK(ordered_json::parse(r.stdout_text).at("value").get<double>() == 5.0);
}

TEST_CASE("exit codes distinguish usage, I/O and check failures") {
  TempDir tmp;
  auto r = run("norm --kind bogus --vec nowhere.json", tmp.file("out1"));
  CHECK(r.exit_code == 2);
  r = run("norm --kind topk --vec " + tmp.file("missing.json"), tmp.file("out2"));
  CHECK(r.exit_code == 3);
  write_text(tmp.file("x.json"), "[1, 2, 3]");
  r = run("norm --kind topk --k 9 --vec " + tmp.file("x.json"), tmp.file("out3"));
  CHECK(r.exit_code == 2);  // k out of range is a flag problem
  r = run("conjugate --fn l0", tmp.file("out4"));
  CHECK(r.exit_code == 2);  // missing required --at
}

TEST_CASE("conjugate subcommand: closed form and grid lower bound") {
  TempDir tmp;
  write_text(tmp.file("y.json"), "[2, 0]");

  auto r = run("conjugate --fn l0 --at " + tmp.file("y.json"), tmp.file("out1"));
  CHECK(r.exit_code == 0);
  CHECK(ordered_json::parse(r.stdout_text).at("closed_form").get<double>() == 1.0);

  r = run("conjugate --fn levelset --k 0 --at " + tmp.file("y.json"),
          tmp.file("out2"));
  CHECK(r.exit_code == 0);
  CHECK(ordered_json::parse(r.stdout_text).at("closed_form").get<double>() == 0.0);

  r = run("conjugate --fn l0 --at " + tmp.file("y.json") +
              " --engine grid --samples 2048 --seed 7",
          tmp.file("out3"));
  CHECK(r.exit_code == 0);
  const auto j = ordered_json::parse(r.stdout_text);
  const double closed = j.at("closed_form").get<double>();
  const double grid = j.at("grid").get<double>();
  CHECK(grid <= closed + 1e-12);
  CHECK(j.at("gap").get<double>() == doctest::Approx(closed - grid));

  r = run("conjugate --fn l0 --biconjugate --at " + tmp.file("y.json") +
              " --restarts 4",
          tmp.file("out4"));
  CHECK(r.exit_code == 0);
  const auto bj = ordered_json::parse(r.stdout_text);
  CHECK(bj.at("biconjugate").at("search_value").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("config files merge under flags") {
  TempDir tmp;
  write_text(tmp.file("x.json"), "[3, 0, -4]");
  write_text(tmp.file("cfg.toml"), "k = 2\nzero_tol = 0.5\n");

  // k comes from the config; the flag would override it.
  auto r = run("--config " + tmp.file("cfg.toml") + " norm --kind topk --vec " +
                   tmp.file("x.json"),
               tmp.file("out1"));
  CHECK(r.exit_code == 0);
  CHECK(ordered_json::parse(r.stdout_text).at("value").get<double>() == 5.0);

  r = run("--config " + tmp.file("cfg.toml") + " norm --kind topk --k 1 --vec " +
              tmp.file("x.json"),
          tmp.file("out2"));
  CHECK(ordered_json::parse(r.stdout_text).at("value").get<double>() == 4.0);

  // zero_tol = 0.5 from config wipes out the 0.3 entry.
  write_text(tmp.file("z.json"), "[0.3, 2.0]");
  r = run("--config " + tmp.file("cfg.toml") + " norm --kind l0 --vec " +
              tmp.file("z.json"),
          tmp.file("out3"));
  CHECK(ordered_json::parse(r.stdout_text).at("value").get<double>() == 1.0);
}

TEST_CASE("verify writes a schema-versioned report and is deterministic") {
  TempDir tmp;
  auto r = run("verify --suite moreau --seed 42 --out " + tmp.file("r1.json"),
               tmp.file("out1"));
  CHECK(r.exit_code == 0);
  const auto j1 = normalized_report(tmp.file("r1.json"));
  CHECK(j1.at("schema") == "capra-report/1");
  CHECK(j1.at("summary").at("failed").get<int>() == 0);
  CHECK(j1.at("checks").size() >= 20);

  r = run("verify --suite moreau --seed 42 --out " + tmp.file("r2.json"),
          tmp.file("out2"));
  CHECK(r.exit_code == 0);
  CHECK(normalized_report(tmp.file("r2.json")) == j1);

  // Seed via the environment fallback.
  const std::string cmd = std::string("CAPRA_SEED=42 ") + CAPRA_CLI_PATH +
                          " verify --suite moreau --out " + tmp.file("r3.json") +
                          " > /dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(normalized_report(tmp.file("r3.json")) == j1);

  r = run("verify --suite bogus", tmp.file("out3"));
  CHECK(r.exit_code == 2);
}

TEST_CASE("two full-suite runs with one seed agree modulo timestamps") {
  TempDir tmp;
  auto r = run("verify --suite all --seed 42 --out " + tmp.file("a1.json"),
               tmp.file("out1"));
  CHECK(r.exit_code == 0);
  r = run("verify --suite all --seed 42 --out " + tmp.file("a2.json"),
          tmp.file("out2"));
  CHECK(r.exit_code == 0);
  CHECK(normalized_report(tmp.file("a1.json")) ==
        normalized_report(tmp.file("a2.json")));
}

TEST_CASE("verify honors dims and runs a fast engine slice") {
  TempDir tmp;
  auto r = run("verify --suite engine --seed 7 --dims 1,2 --out " +
                   tmp.file("r.json"),
               tmp.file("out1"));
  CHECK(r.exit_code == 0);
  const auto j = normalized_report(tmp.file("r.json"));
  CHECK(j.at("dims") == ordered_json::array({1, 2}));
  CHECK(j.at("summary").at("failed").get<int>() == 0);
}
