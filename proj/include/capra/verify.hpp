#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "capra/capra_l0.hpp"

namespace capra::verify {

struct CheckRecord {
  std::string id;      // stable check identifier, e.g. "norms.topk_oracle"
  std::string ref;     // the mathematical statement the check verifies
  std::string status;  // "pass" | "fail" | "error"
  long long cases = 0;
  double worst_gap = 0.0;
  double runtime_ms = 0.0;
  std::string detail;  // first failure or a short summary
};

struct VerificationReport {
  std::string schema = "capra-report/1";
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<int> dims;
  std::string generated_at;  // ISO-8601 UTC
  std::vector<CheckRecord> checks;

  bool all_passed() const;
  int passed() const;
  int failed() const;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::vector<int> dims = {1, 2, 3, 4, 6};
};

/// Runs one of the suites "moreau", "norms", "engine", "theorem" or "all".
/// Checks run in parallel; per-check seeds derive from the master seed and
/// the check id, so scheduling never changes the outcome.
VerificationReport run_suite(const std::string& suite, const SuiteOptions& opts);

/// with_timing = false zeroes the timestamp and runtime fields; two runs
/// with the same seed and flags then serialize byte-identically.
nlohmann::ordered_json report_to_json(const VerificationReport& report,
                                      bool with_timing = true);

// Individual checks. `dims` is clamped to each check's validity range.
std::vector<CheckRecord> check_moreau_laws();
CheckRecord check_topk_oracle(const std::vector<int>& dims, int vectors_per_dim,
                              std::uint64_t seed);
CheckRecord check_norm_chain(const std::vector<int>& dims, int count,
                             std::uint64_t seed);
CheckRecord check_norm_axioms(const std::vector<int>& dims, int count,
                              std::uint64_t seed);
CheckRecord check_ksupport_oracle(const std::vector<int>& dims,
                                  int vectors_per_pair, std::uint64_t seed);
CheckRecord check_duality_pairing(const std::vector<int>& dims, int count,
                                  std::uint64_t seed);
CheckRecord check_l0_chain(const std::vector<int>& dims, int count,
                           std::uint64_t seed);
CheckRecord check_l0_ray_invariance(const std::vector<int>& dims, int count,
                                    std::uint64_t seed);
CheckRecord check_orthogonal_decomposition(const std::vector<int>& dims,
                                           int count, std::uint64_t seed);
CheckRecord check_sphere_levelset(const std::vector<int>& dims, int count,
                                  std::uint64_t seed);
CheckRecord check_hull_membership(const std::vector<int>& dims, int count,
                                  std::uint64_t seed);
CheckRecord check_engine_one_sided(const std::vector<int>& dims, int functions,
                                   std::uint64_t seed);
CheckRecord check_engine_reverse(const std::vector<int>& dims, int functions,
                                 std::uint64_t seed);
CheckRecord check_engine_characteristic(const std::vector<int>& dims,
                                        int functions, std::uint64_t seed);
CheckRecord check_engine_ray_constancy(const std::vector<int>& dims, int count,
                                       std::uint64_t seed);
CheckRecord check_engine_order_reversal(const std::vector<int>& dims, int count,
                                        std::uint64_t seed);
CheckRecord check_engine_dual_bound(const std::vector<int>& dims, int count,
                                    std::uint64_t seed);
CheckRecord check_biconjugate_ceiling(const std::vector<int>& dims, int count,
                                      std::uint64_t seed);
CheckRecord check_levelset_conjugate_grid(const std::vector<int>& dims,
                                          std::uint64_t seed);
CheckRecord check_levelset_biconjugate_grid(const std::vector<int>& dims,
                                            std::uint64_t seed);
CheckRecord check_conj_l0_grid(const std::vector<int>& dims, int count,
                               std::uint64_t seed);
CheckRecord check_biconj_l0(const std::vector<int>& dims, int count,
                            std::uint64_t seed, const SolverParams& params = {});
CheckRecord check_sphere_corollary(const std::vector<int>& dims, int count,
                                   std::uint64_t seed);
CheckRecord check_levelset_closure(const std::vector<int>& dims,
                                   std::uint64_t seed);
CheckRecord check_phi_rewriting(const std::vector<int>& dims, int count,
                                std::uint64_t seed);

}  // namespace capra::verify
