#pragma once

// Seeded property suites for every module. Each check draws its inputs from
// per-sample counter streams, evaluates a deviation per sample on a worker
// pool, and reduces in sample order, so a report depends only on
// (n, seed, samples, thresholds).

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "zlab/linalg.hpp"

namespace zlab {

struct CheckResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  /// When set the check passes iff max_deviation >= tolerance (a lower bound,
  /// e.g. a Gram determinant that must stay away from zero). Otherwise the
  /// measured value is the worst sample and must not exceed the tolerance.
  bool lower_bound = false;
  bool pass = false;
  int samples = 0;
  /// Samples outside the hypothesis of the property (e.g. complex times at
  /// which one side is undefined); they do not enter the reduction.
  int skipped = 0;
  /// Samples whose evaluation threw; each counts as a failure.
  int errors = 0;
  std::string first_error;
  double wall_seconds = 0.0;
};

struct Report {
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool pass() const;
  double wall_seconds() const;
};

struct SuiteConfig {
  int n = 2;
  std::uint64_t seed = 42;
  int samples = 20;
  Tolerances tol;
  /// Per-check threshold overrides, keyed by check name.
  std::map<std::string, double> thresholds;
};

/// Workers used for sample loops: hardware concurrency, capped by the
/// CENTRALIZER_LAB_THREADS environment variable when it holds a positive integer.
unsigned worker_count();

/// Runs body(k) for k in [0, count) on worker_count() threads.
void parallel_for(int count, const std::function<void(int)>& body);

/// Stream id for sample k of a named family, stable across platforms.
std::uint64_t stream_id(const std::string& family, int k);

using CheckFn = std::vector<CheckResult> (*)(const SuiteConfig&);

struct CheckGroup {
  const char* module;
  const char* name;
  CheckFn run;
};

/// Every check group, in report order.
const std::vector<CheckGroup>& all_check_groups();

/// Runs the checks of one module ("linalg", "lie_core", ...), or all when
/// module is empty. Throws std::invalid_argument for an unknown module.
Report run_suite(const SuiteConfig& cfg, const std::string& module = "");

/// Threshold for a named check: the override in cfg.thresholds if present,
/// else the built-in default.
double threshold(const SuiteConfig& cfg, const std::string& name, double fallback);

// Checks with parameters beyond the suite configuration, shared with the
// acceptance harness.

/// Conservation of F and of the spectrum along every flow for the given times.
std::vector<CheckResult> check_conservation(const SuiteConfig& cfg, const std::vector<double>& times);
/// ||F~(phi(x)) - F(x)|| on the same V-samples as check_conservation.
CheckResult check_embedding_invariants(const SuiteConfig& cfg);
/// Flow-level intertwining for the given complex times; the infinitesimal
/// variant is reported separately.
std::vector<CheckResult> check_intertwining(const SuiteConfig& cfg,
                                            const std::vector<cplx>& times);
/// Both inclusions of Z = mu^{-1}(S x -S).
std::vector<CheckResult> check_moment_preimage(const SuiteConfig& cfg);
/// The three block identities of the chart pullback, reported individually.
std::vector<CheckResult> check_cjl_pullback(const SuiteConfig& cfg);
/// Equal x gives identical F~; distinct x gives distinct F~.
std::vector<CheckResult> check_level_sets(const SuiteConfig& cfg);
/// psi, lambda/tau and phi roundtrips.
std::vector<CheckResult> check_roundtrips(const SuiteConfig& cfg);
/// RK4 on the Toda field from diag 0, roots 1 against the factorisation flow.
CheckResult check_rk4_cross(const SuiteConfig& cfg, double t_end, double step);

}  // namespace zlab
