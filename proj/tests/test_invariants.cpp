#include "helpers.hpp"
#include "zlab/errors.hpp"
#include "zlab/invariants.hpp"
#include "zlab/sampling.hpp"

using namespace zlab;
using test::mat;

TEST_CASE("invariants of diagonal matrices") {
  const AlgebraElement x(mat({{1, 0, 0}, {0, 0, 0}, {0, 0, -1}}));
  CHECK(std::abs(invariant(x, 1) - 1.0) <= 1e-15);  // (1 + 0 + 1) / 2
  CHECK(std::abs(invariant(x, 2)) <= 1e-15);        // (1 + 0 - 1) / 3
  const AlgebraElement y(mat({{2, 0, 0}, {0, -1, 0}, {0, 0, -1}}));
  CHECK(std::abs(invariant(y, 2) - 2.0) <= 1e-15);  // (8 - 1 - 1) / 3
  CHECK_THROWS(invariant(x, 3));
  CHECK_THROWS(invariant(x, 0));
}

TEST_CASE("gradient of f_i is x^i minus its trace part") {
  const AlgebraElement x(mat({{1, 2}, {3, -1}}));
  CHECK(test::dist(invariant_gradient(x, 1).matrix(), x.matrix()) == 0.0);
  const ChevalleyData d = build_chevalley(3);
  const AlgebraElement s = section_point(d, CVector::Ones(2));
  const CMatrix sq = s.matrix() * s.matrix();
  const CMatrix expected = sq - (sq.trace() / 3.0) * CMatrix::Identity(3, 3);
  CHECK(test::dist(invariant_gradient(s, 2).matrix(), expected) <= 1e-14);
}

TEST_CASE("finite-difference gradient check") {
  for (int k = 0; k < 10; ++k) {
    CounterRng rng(21, static_cast<std::uint64_t>(k));
    const int n = 2 + k % 4;
    const AlgebraElement x = random_algebra(rng, n);
    const AlgebraElement v = random_algebra(rng, n);
    const double h = 1e-5;
    for (int i = 1; i < n; ++i) {
      const cplx fd = (invariant(x + cplx(h) * v, i) - invariant(x - cplx(h) * v, i)) / (2.0 * h);
      const cplx exact = pairing(invariant_gradient(x, i), v);
      CHECK(std::abs(fd - exact) <= 1e-6 * (1.0 + std::abs(exact)));
    }
  }
}

TEST_CASE("section chart for sl2: F_S^{-1}(z) = [[0, z], [1, 0]]") {
  // x = xi + s eta = [[0, s], [1, 0]] has x^2 = s I, so f_1 = s.
  const ChevalleyData d = build_chevalley(2);
  for (cplx z : {cplx(1.0), cplx(-0.5, 2.0), cplx(0.0)}) {
    CVector zv(1);
    zv << z;
    CHECK(test::dist(section_from_invariants(d, zv).matrix(), mat({{0, z}, {1, 0}})) <= 1e-15);
  }
}

TEST_CASE("section chart for sl3 is linear: s = z / 4") {
  // On xi + s1 eta + s2 eta^2 one finds f_1 = 4 s1 and f_2 = 4 s2 by expanding
  // the traces of the explicit 3 x 3 matrix.
  const ChevalleyData d = build_chevalley(3);
  CVector s(2);
  s << cplx(0.3, -0.2), cplx(-1.5, 0.5);
  const CVector f = section_invariants(d, s);
  CHECK(std::abs(f(0) - 4.0 * s(0)) <= 1e-14);
  CHECK(std::abs(f(1) - 4.0 * s(1)) <= 1e-14);
  CHECK(test::dist(section_from_invariants(d, 4.0 * s).matrix(), section_point(d, s).matrix()) <=
        1e-14);
}

TEST_CASE("chamber image membership for sl2") {
  const ChevalleyData d = build_chevalley(2);
  CVector z(1);
  z << 1.0;  // roots of l^2 - 1: +-1
  CHECK(in_chamber_image(d, z));
  z << -1.0;  // +-i
  CHECK_FALSE(in_chamber_image(d, z));
  z << 0.0;  // double root
  CHECK_FALSE(in_chamber_image(d, z));
  z << cplx(0.0, 1.0);  // +-(1 + i)/sqrt(2)
  CHECK(in_chamber_image(d, z));
  z << 1.0;
  const auto spectrum = spectrum_from_invariants(d, z);
  CHECK(std::abs(min_real_part_gap(spectrum) - 2.0) <= 1e-14);
}

TEST_CASE("invariants property suite") {
  for (int n = 2; n <= 6; ++n) test::require_module_passes("invariants", n, 30);
}
