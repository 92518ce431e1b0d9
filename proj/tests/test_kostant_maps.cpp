#include "helpers.hpp"
#include "zlab/errors.hpp"
#include "zlab/kostant_maps.hpp"
#include "zlab/sampling.hpp"

using namespace zlab;
using test::dist;
using test::mat;

namespace {

const ChevalleyData& sl2() {
  static const ChevalleyData d = build_chevalley(2);
  return d;
}

// x0 = xi + e_alpha with zero diagonal; eigenvalues +-1.
AlgebraElement golden() { return AlgebraElement(mat({{0, 1}, {1, 0}})); }

}  // namespace

TEST_CASE("longest Weyl lift is the antidiagonal permutation") {
  const ChevalleyData d = build_chevalley(3);
  const CMatrix w = longest_weyl_lift(d).matrix();
  CHECK(dist(w, mat({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})) == 0.0);
  CHECK(dist(w * w, CMatrix::Identity(3, 3)) == 0.0);
}

TEST_CASE("section decomposition in sl2 by hand") {
  // Ad_u(xi + s eta) with u = [[1, a], [0, 1]] is [[a, s - a^2], [1, -a]].
  const cplx a(0.5, -1.0);
  const cplx b(2.0, 0.25);
  const SectionDecomposition dec = decompose_into_section(sl2(), AlgebraElement(mat({{a, b}, {1, -a}})));
  CHECK(dist(dec.u.matrix(), mat({{1, a}, {0, 1}})) <= 1e-15);
  CHECK(dist(dec.s.matrix(), mat({{0, b + a * a}, {1, 0}})) <= 1e-15);
  CHECK(dist(conjugate_from_section(sl2(), dec.u, dec.s).matrix(), mat({{a, b}, {1, -a}})) <= 1e-14);
}

TEST_CASE("section decomposition rejects points off xi + b") {
  CHECK_THROWS_AS(decompose_into_section(sl2(), sl2().h), NotInXiPlusB);
  CHECK_THROWS_AS(conjugate_from_section(sl2(), GroupElement(mat({{2, 0}, {0, 1}})), golden()),
                  InvalidElement);
}

TEST_CASE("sl2 golden values at x0") {
  const AlgebraElement x0 = golden();
  CHECK(dist(chamber_representative(sl2(), x0).matrix(), mat({{1, 0}, {1, -1}})) <= 1e-14);
  CHECK(dist(chamber_conjugator(sl2(), x0).matrix(), mat({{1, -1}, {0, 1}})) <= 1e-14);
  CHECK(dist(section_conjugator(sl2(), x0).matrix(), mat({{1, -1}, {0, 1}})) <= 1e-14);
  CHECK(dist(section_representative(sl2(), x0).matrix(), x0.matrix()) <= 1e-14);
  CHECK(projective_distance(stabilizer_lift(sl2(), x0).matrix(), mat({{1, 0}, {1, -1}})) <= 1e-14);
}

TEST_CASE("big cell factorisation of [[1, 0], [1, -1]]") {
  // w0^{-1} g = [[1, -1], [1, 0]] has pivots 1 and 1, so t is trivial mod scalars.
  const BigCellFactorization f = big_cell_factor(sl2(), GroupElement(mat({{1, 0}, {1, -1}})));
  CHECK(dist(f.u_minus.matrix(), mat({{1, 0}, {1, 1}})) <= 1e-15);
  CHECK(projective_distance(f.t.matrix(), CMatrix::Identity(2, 2)) <= 1e-15);
  CHECK(dist(f.u.matrix(), mat({{1, -1}, {0, 1}})) <= 1e-15);
}

TEST_CASE("the identity is outside the translated big cell") {
  try {
    big_cell_factor(sl2(), GroupElement::identity(2));
    FAIL("expected NotInGStar");
  } catch (const NotInGStar& e) {
    CHECK(e.minor() == 1);
  }
}

TEST_CASE("torus from root coordinates inverts the simple roots") {
  CVector c(3);
  c << 2.0, cplx(0.0, 1.0), -0.5;
  const GroupElement t = torus_from_root_coordinates(c);
  for (int i = 1; i <= 3; ++i) CHECK(std::abs(root_char(t, i) - 1.0 / c(i - 1)) <= 1e-15);
}

TEST_CASE("chamber representative needs separated real parts") {
  CHECK_THROWS_AS(chamber_representative(sl2(), AlgebraElement(mat({{0, -1}, {1, 0}}))), NotInV);
  const ChevalleyData d = build_chevalley(3);
  const AlgebraElement x(mat({{2, 1, 0}, {1, 0, 1}, {0, 1, -2}}));
  const CMatrix rep = chamber_representative(d, x).matrix();
  CHECK(rep(0, 0).real() > rep(1, 1).real());
  CHECK(rep(1, 1).real() > rep(2, 2).real());
  CHECK(dist(rep - CMatrix(rep.diagonal().asDiagonal()), d.xi.matrix()) == 0.0);
}

TEST_CASE("level_set_point rejects non-centralising group elements") {
  const AlgebraElement rep = chamber_representative(sl2(), golden());
  CHECK_THROWS_AS(level_set_point(sl2(), rep, GroupElement(mat({{1, 1}, {0, 1}}))), NotCentralizing);
  CHECK_THROWS_AS(level_set_point(sl2(), rep, GroupElement::identity(2)), NotInGStar);
}

TEST_CASE("stabilizer lift and level set point are mutually inverse") {
  for (int n = 2; n <= 5; ++n) {
    const ChevalleyData d = build_chevalley(n);
    for (int k = 0; k < 10; ++k) {
      CounterRng rng(17, static_cast<std::uint64_t>(k));
      const AlgebraElement x = random_domain_point(rng, d).matrix();
      const AlgebraElement rep = chamber_representative(d, x);
      const GroupElement lift = stabilizer_lift(d, x);
      CHECK(dist(lift.adjoint(rep.matrix()), rep.matrix()) <= 1e-9 * (1.0 + rep.norm()));
      CHECK(dist(level_set_point(d, rep, lift).matrix(), x.matrix()) <= 1e-9 * (1.0 + x.norm()));
    }
  }
}

TEST_CASE("kostant_maps property suite") {
  for (int n = 2; n <= 5; ++n) test::require_module_passes("kostant_maps", n, 30);
}
