// capra: norms, conjugates and verification suites from the command line.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "capra/capra_l0.hpp"
#include "capra/conjugacy.hpp"
#include "capra/io.hpp"
#include "capra/kernels.hpp"
#include "capra/vec.hpp"
#include "capra/verify.hpp"

namespace {

using capra::io::json;

constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// Flags win over the config file, which wins over the environment/defaults.
class Settings {
 public:
  explicit Settings(json config) : config_(std::move(config)) {}

  template <typename T>
  void merge(const CLI::Option* opt, const std::string& key, T& value) const {
    if (opt && opt->count() > 0) return;  // explicit flag wins
    if (config_.contains(key)) value = config_.at(key).get<T>();
  }

  std::uint64_t seed_fallback(const CLI::Option* opt, std::uint64_t value) const {
    if (opt && opt->count() > 0) return value;
    if (config_.contains("seed")) return config_.at("seed").get<std::uint64_t>();
    if (const char* env = std::getenv("CAPRA_SEED")) {
      try {
        return std::stoull(env);
      } catch (const std::exception&) {
        throw std::invalid_argument("CAPRA_SEED is not an integer");
      }
    }
    return value;
  }

 private:
  json config_;
};

int run_norm(const std::string& kind, int k, const std::string& vec_path,
             double zero_tol) {
  const capra::Vec x = capra::io::read_vector_file(vec_path);
  json out;
  out["kind"] = kind;
  double value = 0.0;
  if (kind == "l0") {
    value = static_cast<double>(capra::l0(x, zero_tol));
  } else if (kind == "topk") {
    out["k"] = k;
    value = capra::topk_norm(x, k);
  } else if (kind == "ksup") {
    out["k"] = k;
    value = capra::ksupport_norm(x, k);
  } else if (kind == "euclid") {
    value = capra::euclidean_norm(x);
  } else {
    throw std::invalid_argument("unknown norm kind: " + kind);
  }
  out["value"] = value;
  std::cout << out.dump() << "\n";
  return 0;
}

int run_conjugate(const std::string& fn, int k, const std::string& at_path,
                  const std::string& engine, int samples, std::uint64_t seed,
                  bool biconjugate, const capra::SolverParams& params) {
  const capra::Vec y = capra::io::read_vector_file(at_path);
  const int d = static_cast<int>(y.size());
  json out;
  out["fn"] = fn;
  if (fn == "levelset") out["k"] = k;

  if (biconjugate) {
    if (fn == "l0") {
      const capra::ConjugateReport rep = capra::biconj_l0_report(y, params);
      out["biconjugate"] = capra::io::conjugate_report_to_json(rep);
    } else if (fn == "levelset") {
      out["biconjugate"] =
          capra::io::xreal_to_json(capra::biconj_levelset_indicator(y, k));
    } else {
      throw std::invalid_argument("unknown conjugate fn: " + fn);
    }
    std::cout << out.dump() << "\n";
    return 0;
  }

  double closed = 0.0;
  if (fn == "l0") {
    closed = capra::conj_l0(y);
  } else if (fn == "levelset") {
    closed = capra::conj_levelset_indicator(y, k);
  } else {
    throw std::invalid_argument("unknown conjugate fn: " + fn);
  }
  out["closed_form"] = closed;

  if (engine == "grid") {
    std::vector<capra::Vec> pts = capra::sample_ball(d, samples, seed, 1.0);
    pts.push_back(capra::Vec(d, 0.0));
    pts = capra::dedupe_points(std::move(pts));
    const auto f = capra::SampledFunction::tabulate(pts, [&](const capra::Vec& p) {
      if (fn == "l0") return capra::XReal(static_cast<double>(capra::l0(p)));
      return capra::l0(p) <= k ? capra::XReal(0.0) : capra::XReal::pos_inf();
    });
    const auto grid = capra::conjugate(f, capra::capra_coupling(d), {y});
    const double gv = grid.value(0).value();
    out["engine"] = "grid";
    out["samples"] = samples;
    out["seed"] = seed;
    out["grid"] = gv;
    out["gap"] = closed - gv;  // nonnegative up to rounding: grid is a lower bound
  } else if (engine != "closed") {
    throw std::invalid_argument("unknown engine: " + engine);
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed,
               const std::string& out_path, const std::vector<int>& dims) {
  capra::verify::SuiteOptions opts;
  opts.seed = seed;
  if (!dims.empty()) opts.dims = dims;
  const capra::verify::VerificationReport report =
      capra::verify::run_suite(suite, opts);

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write report: " + out_path);
    out << capra::verify::report_to_json(report).dump(2) << "\n";
  }
  for (const auto& c : report.checks)
    std::cout << (c.status == "pass" ? "pass " : "FAIL ") << c.id << " ("
              << c.cases << " cases, worst gap " << c.worst_gap << ")"
              << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  std::cout << "suite " << suite << ": " << report.passed() << "/"
            << report.checks.size() << " checks passed\n";
  return report.all_passed() ? 0 : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moreau extended-real arithmetic, top-k and k-support norms, "
               "sampled Fenchel-Moreau conjugacy and the ray-constant "
               "coupling closed forms, with brute-force verification."};
  app.require_subcommand(1);

  std::string config_path;
  std::string kernels = "auto";
  app.add_option("--config", config_path, "TOML/JSON config merged under flags");
  app.add_option("--kernels", kernels, "kernel backend: auto|scalar|avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  auto* norm = app.add_subcommand("norm", "evaluate a norm or the l0 count");
  std::string norm_kind;
  int norm_k = 1;
  std::string norm_vec;
  double zero_tol = 0.0;
  norm->add_option("--kind", norm_kind, "l0|topk|ksup|euclid")
      ->required()
      ->check(CLI::IsMember({"l0", "topk", "ksup", "euclid"}));
  auto* norm_k_opt = norm->add_option("--k", norm_k, "order of the norm");
  norm->add_option("--vec", norm_vec, "vector file (.json or .txt)")->required();
  auto* zero_tol_opt =
      norm->add_option("--zero-tol", zero_tol, "magnitude counted as zero");

  auto* conj = app.add_subcommand("conjugate", "closed-form and grid conjugates");
  std::string conj_fn;
  int conj_k = 0;
  std::string conj_at;
  std::string conj_engine = "closed";
  int conj_samples = 1024;
  std::uint64_t conj_seed = 42;
  bool conj_bi = false;
  capra::SolverParams params;
  conj->add_option("--fn", conj_fn, "l0|levelset")
      ->required()
      ->check(CLI::IsMember({"l0", "levelset"}));
  auto* conj_k_opt = conj->add_option("--k", conj_k, "level-set order");
  conj->add_option("--at", conj_at, "dual point file (.json or .txt)")->required();
  conj->add_option("--engine", conj_engine, "closed|grid")
      ->check(CLI::IsMember({"closed", "grid"}));
  auto* samples_opt = conj->add_option("--samples", conj_samples, "grid sample count");
  auto* conj_seed_opt = conj->add_option("--seed", conj_seed, "grid sampling seed");
  conj->add_flag("--biconjugate", conj_bi, "evaluate the biconjugate instead");
  auto* lmax_opt = conj->add_option("--lambda-max", params.lambda_max,
                                    "top rung of the ray ladder");
  auto* restarts_opt =
      conj->add_option("--restarts", params.restarts, "random restarts");
  auto* budget_opt = conj->add_option("--eval-budget", params.eval_budget,
                                      "per-restart evaluation cap");
  auto* tol_opt =
      conj->add_option("--tol", params.tol, "target tolerance of the search");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  std::uint64_t verify_seed = 42;
  std::string out_path;
  std::vector<int> dims;
  verify->add_option("--suite", suite, "moreau|norms|engine|theorem|all")
      ->required()
      ->check(CLI::IsMember({"moreau", "norms", "engine", "theorem", "all"}));
  auto* verify_seed_opt = verify->add_option("--seed", verify_seed, "master seed");
  verify->add_option("--out", out_path, "report JSON path");
  auto* dims_opt = verify->add_option("--dims", dims, "dimensions, e.g. 2,3,4")
                       ->delimiter(',')
                       ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    json config = json::object();
    if (!config_path.empty()) config = capra::io::read_config_file(config_path);
    const Settings settings(std::move(config));

    settings.merge(app.get_option("--kernels"), "kernels", kernels);
    if (kernels != "auto") capra::kernels::force_backend(kernels);

    if (norm->parsed()) {
      settings.merge(norm_k_opt, "k", norm_k);
      settings.merge(zero_tol_opt, "zero_tol", zero_tol);
      return run_norm(norm_kind, norm_k, norm_vec, zero_tol);
    }
    if (conj->parsed()) {
      settings.merge(conj_k_opt, "k", conj_k);
      settings.merge(samples_opt, "samples", conj_samples);
      settings.merge(lmax_opt, "lambda_max", params.lambda_max);
      settings.merge(restarts_opt, "restarts", params.restarts);
      settings.merge(budget_opt, "eval_budget", params.eval_budget);
      settings.merge(tol_opt, "tol", params.tol);
      conj_seed = settings.seed_fallback(conj_seed_opt, conj_seed);
      params.seed = conj_seed;
      return run_conjugate(conj_fn, conj_k, conj_at, conj_engine, conj_samples,
                           conj_seed, conj_bi, params);
    }
    if (verify->parsed()) {
      verify_seed = settings.seed_fallback(verify_seed_opt, verify_seed);
      std::vector<int> config_dims;
      settings.merge(dims_opt, "dims", config_dims);
      if (dims.empty()) dims = config_dims;
      return run_verify(suite, verify_seed, out_path, dims);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
