#pragma once

#include <doctest.h>

#include <initializer_list>
#include <string>

#include "zlab/suite.hpp"

namespace test {

using zlab::cplx;
using zlab::CMatrix;

inline CMatrix mat(std::initializer_list<std::initializer_list<cplx>> rows) {
  CMatrix m(static_cast<Eigen::Index>(rows.size()),
            static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const cplx& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline double dist(const CMatrix& a, const CMatrix& b) { return (a - b).norm(); }

// Every check of a suite run must pass; failures are reported by name.
inline void require_all_pass(const std::vector<zlab::CheckResult>& checks) {
  for (const auto& c : checks) {
    INFO(c.name << ": deviation " << c.max_deviation << " vs " << c.tolerance << ", errors "
                << c.errors << " " << c.first_error);
    CHECK(c.pass);
  }
}

inline void require_module_passes(const std::string& module, int n, int samples,
                                  std::uint64_t seed = 42) {
  zlab::SuiteConfig cfg;
  cfg.n = n;
  cfg.samples = samples;
  cfg.seed = seed;
  const zlab::Report rep = zlab::run_suite(cfg, module);
  REQUIRE_FALSE(rep.checks.empty());
  require_all_pass(rep.checks);
}

}  // namespace test
