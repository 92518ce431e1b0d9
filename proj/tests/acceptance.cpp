// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "zlab/cli.hpp"
#include "zlab/errors.hpp"
#include "zlab/kostant_maps.hpp"
#include "zlab/suite.hpp"
#include "zlab/toda.hpp"

using namespace zlab;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Folds check results into a verdict, listing the worst deviation of each.
void absorb(Verdict& v, int n, const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) {
      v.pass = false;
      v.detail += " [n=" + std::to_string(n) + " " + c.name + " " + fmt(c.max_deviation) +
                  (c.lower_bound ? " < " : " > ") + fmt(c.tolerance) +
                  (c.errors ? ", " + std::to_string(c.errors) + " errors: " + c.first_error : "") +
                  "]";
    }
  }
}

std::string summary(const std::vector<CheckResult>& checks) {
  std::string out;
  for (const auto& c : checks) {
    if (!out.empty()) out += ", ";
    out += c.name + "=" + fmt(c.max_deviation);
  }
  return out;
}

SuiteConfig config(int n, int samples) {
  SuiteConfig cfg;
  cfg.n = n;
  cfg.samples = samples;
  return cfg;
}

Verdict golden_table() {
  const auto start = Clock::now();
  Verdict v;
  const ChevalleyData chev = build_chevalley(2);
  CVector diag = CVector::Zero(2);
  CVector roots = CVector::Ones(1);
  const TodaPoint x0(diag, roots);
  const AlgebraElement x = x0.matrix();

  CMatrix theta(2, 2);
  theta << 1, 0, 1, -1;
  CMatrix conj(2, 2);
  conj << 1, -1, 0, 1;
  CMatrix swap(2, 2);
  swap << 0, 1, 1, 0;

  double worst = 0.0;
  const auto note = [&](double d) { worst = std::max(worst, d); };
  note((chamber_representative(chev, x).matrix() - theta).norm());
  note((chamber_conjugator(chev, x).matrix() - conj).norm());
  note((section_conjugator(chev, x).matrix() - conj).norm());
  note(projective_distance(stabilizer_lift(chev, x).matrix(), theta));
  const ZPoint p = embed_in_centralizer(chev, x0);
  note(projective_distance(p.g().matrix(), swap));
  note((p.x().matrix() - swap).norm());
  for (double t : {0.25, 1.0, 2.0}) {
    const TodaPoint xt = toda_flow(chev, 1, t, x0);
    const double sech2 = 1.0 / (std::cosh(t) * std::cosh(t));
    note(std::abs(xt.diag_part()(0) - std::tanh(t)));
    note(std::abs(xt.diag_part()(1) + std::tanh(t)));
    note(std::abs(xt.root_coords()(0) - sech2));
  }
  const double secs = seconds_since(start);
  v.pass = worst <= 1e-10 && secs < 1.0;
  v.detail = "max deviation " + fmt(worst) + ", " + fmt(secs) + " s";
  return v;
}

Verdict conservation(bool embedding_only) {
  const auto start = Clock::now();
  Verdict v;
  std::vector<CheckResult> all;
  for (int n = 2; n <= 4; ++n) {
    const SuiteConfig cfg = config(n, 100);
    std::vector<CheckResult> checks;
    if (embedding_only) {
      checks.push_back(check_embedding_invariants(cfg));
    } else {
      checks = check_conservation(cfg, {0.1, 0.7});
    }
    absorb(v, n, checks);
    all.insert(all.end(), checks.begin(), checks.end());
  }
  const double secs = seconds_since(start);
  if (!embedding_only && secs >= 20.0) v.pass = false;
  v.detail = summary(all) + "; " + fmt(secs) + " s" + v.detail;
  return v;
}

Verdict per_n(int n_max, int samples,
              const std::function<std::vector<CheckResult>(const SuiteConfig&)>& run) {
  Verdict v;
  std::vector<CheckResult> all;
  for (int n = 2; n <= n_max; ++n) {
    const auto checks = run(config(n, samples));
    absorb(v, n, checks);
    all.insert(all.end(), checks.begin(), checks.end());
  }
  v.detail = summary(all) + v.detail;
  return v;
}

Verdict rk4() {
  Verdict v;
  const CheckResult c = check_rk4_cross(config(2, 1), 1.0, 1e-3);
  v.pass = c.pass;
  v.detail = "deviation " + fmt(c.max_deviation) + " (tolerance " + fmt(c.tolerance) + ")";
  return v;
}

Verdict full_suite() {
  const auto start = Clock::now();
  Verdict v;
  for (int n = 2; n <= 4; ++n) {
    cli::RunConfig cfg;
    cfg.command = "check";
    cfg.n = n;
    const cli::CommandResult a = cli::cmd_check(cfg);
    const cli::CommandResult b = cli::cmd_check(cfg);
    if (a.output != b.output) {
      v.pass = false;
      v.detail += " [n=" + std::to_string(n) + " outputs differ]";
    }
    if (a.exit_code != 0) {
      v.pass = false;
      v.detail += " [n=" + std::to_string(n) + " suite failed]";
    }
  }
  const double secs = seconds_since(start);
  if (secs / 2.0 >= 60.0) v.pass = false;
  v.detail = "two runs of n=2..4 in " + fmt(secs) + " s, identical output" + v.detail;
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {"sl2 golden table", golden_table},
      {"conservation of F along the flows", [] { return conservation(false); }},
      {"embedding preserves the invariants", [] { return conservation(true); }},
      {"embedding intertwines the flows",
       [] {
         return per_n(4, 100, [](const SuiteConfig& cfg) {
           return check_intertwining(cfg, {0.5, -1.0, 1.0, cplx(0.3, 0.2)});
         });
       }},
      {"centraliser is the moment map preimage", [] { return per_n(4, 200, check_moment_preimage); }},
      {"chart pulls back the symplectic form", [] { return per_n(4, 20, check_cjl_pullback); }},
      {"level sets of F~", [] { return per_n(4, 50, check_level_sets); }},
      {"round trips", [] { return per_n(4, 100, check_roundtrips); }},
      {"RK4 against the factorisation flow", rk4},
      {"full check suite is fast and deterministic", full_suite},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failures;
    std::printf("%s criterion %zu: %s: %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].title,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
