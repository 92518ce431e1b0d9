#include <limits>

#include "helpers.hpp"
#include "zlab/errors.hpp"
#include "zlab/lie_core.hpp"
#include "zlab/sampling.hpp"

using namespace zlab;
using test::mat;

TEST_CASE("sl2 Chevalley data by hand") {
  // [xi, eta] = h on 2x2 matrices: [[0,0],[1,0]] [[0,c],[0,0]] - ... = diag(-c, c),
  // so h = diag(-1, 1) forces c = 1.
  const ChevalleyData d = build_chevalley(2);
  CHECK(d.r == 1);
  CHECK(test::dist(d.xi.matrix(), mat({{0, 0}, {1, 0}})) == 0.0);
  CHECK(test::dist(d.h.matrix(), mat({{-1, 0}, {0, 1}})) == 0.0);
  CHECK(test::dist(d.eta.matrix(), mat({{0, 1}, {0, 0}})) == 0.0);
  CHECK(d.c == std::vector<int>{1});
}

TEST_CASE("sl3 Chevalley data") {
  const ChevalleyData d = build_chevalley(3);
  CHECK(d.c == std::vector<int>{2, 2});
  CHECK(test::dist(d.h.matrix(), mat({{-2, 0, 0}, {0, 0, 0}, {0, 0, 2}})) == 0.0);
  REQUIRE(d.centralizer_eta.size() == 2);
  CHECK(test::dist(d.centralizer_eta[1].matrix(), mat({{0, 0, 4}, {0, 0, 0}, {0, 0, 0}})) == 0.0);
}

TEST_CASE("the principal triple closes exactly for every supported rank") {
  for (int n = kMinRank; n <= kMaxRank; ++n) {
    const ChevalleyData d = build_chevalley(n);
    INFO("n = " << n);
    CHECK(commutator(d.xi.matrix(), d.eta.matrix()) == d.h.matrix());
    CHECK(commutator(d.h.matrix(), d.xi.matrix()) == 2.0 * d.xi.matrix());
    CHECK(commutator(d.h.matrix(), d.eta.matrix()) == -2.0 * d.eta.matrix());
    for (int k = 1; k <= d.r; ++k) {
      CHECK(d.c[k - 1] == k * (n - k));
      CHECK(d.h.matrix()(k - 1, k - 1) - d.h.matrix()(k, k) == cplx(-2.0));
      CHECK(pairing(d.e_plus[k - 1], d.e_minus[k - 1]) == cplx(1.0));
    }
  }
}

TEST_CASE("ranks outside [2, 8] are rejected") {
  CHECK_THROWS_AS(build_chevalley(1), UnsupportedRank);
  CHECK_THROWS_AS(build_chevalley(9), UnsupportedRank);
}

TEST_CASE("trace pairing") {
  const ChevalleyData d = build_chevalley(2);
  CHECK(pairing(d.e_plus[0], d.e_minus[0]) == cplx(1.0));
  CHECK(pairing(d.h, d.h) == cplx(2.0));
  CHECK_THROWS_AS(pairing(d.h, build_chevalley(3).h), DimensionMismatch);
}

TEST_CASE("AlgebraElement validation") {
  CHECK_THROWS_AS(AlgebraElement(mat({{1, 0}, {0, 0}})), InvalidElement);
  CHECK_THROWS_AS(AlgebraElement(CMatrix::Zero(2, 3)), InvalidElement);
  CHECK_THROWS_AS(AlgebraElement(CMatrix::Zero(1, 1)), InvalidElement);
  CMatrix nan = CMatrix::Zero(2, 2);
  nan(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(AlgebraElement{nan}, InvalidElement);
  CHECK(std::abs(AlgebraElement::project(mat({{3, 1}, {0, 1}})).matrix().trace()) == 0.0);
}

TEST_CASE("GroupElement validation and equality modulo scalars") {
  CHECK_THROWS_AS(GroupElement(mat({{1, 2}, {2, 4}})), InvalidElement);
  const GroupElement g(mat({{1, 2}, {3, 4}}));
  CHECK(g.equivalent(GroupElement(cplx(0, 3) * g.matrix())));
  CHECK_FALSE(g.equivalent(GroupElement::identity(2)));
  // A torus element with tiny but honest entries is invertible.
  CMatrix t = CMatrix::Zero(5, 5);
  for (int k = 0; k < 5; ++k) t(k, k) = std::pow(1e-2, k);
  CHECK_NOTHROW(GroupElement{t});
}

TEST_CASE("Ad is blind to rescaling of the group element") {
  const AlgebraElement x(mat({{1, 2}, {3, -1}}));
  const GroupElement g(mat({{1, 1}, {0, 2}}));
  const GroupElement g4(4.0 * g.matrix());
  CHECK(test::dist(g.adjoint(x).matrix(), g4.adjoint(x).matrix()) <= 1e-15);
}

TEST_CASE("centralizer bases") {
  const ChevalleyData d = build_chevalley(2);
  const auto of_eta = centralizer_basis(d.eta);
  REQUIRE(of_eta.size() == 1);
  CHECK(projective_distance(of_eta[0].matrix(), d.eta.matrix()) <= 1e-12);

  const auto of_diag = centralizer_basis(AlgebraElement(mat({{1, 0}, {0, -1}})));
  REQUIRE(of_diag.size() == 1);
  CHECK(projective_distance(of_diag[0].matrix(), mat({{1, 0}, {0, -1}})) <= 1e-12);

  CHECK(centralizer_basis(AlgebraElement::zero(2)).size() == 3);
  CHECK(centralizer_basis(AlgebraElement::zero(3)).size() == 8);
}

TEST_CASE("sl_n coordinates round trip") {
  CounterRng rng(1, 0);
  const AlgebraElement x = random_algebra(rng, 4);
  const CVector c = sl_coordinates(x.matrix());
  CHECK(c.size() == 15);
  CHECK(test::dist(from_sl_coordinates(4, c).matrix(), x.matrix()) <= 1e-15);
}

TEST_CASE("simple root characters of a torus element") {
  const GroupElement t(mat({{1, 0, 0}, {0, 2, 0}, {0, 0, 8}}));
  CHECK(std::abs(root_char(t, 1) - 0.5) <= 1e-15);
  CHECK(std::abs(root_char(t, 2) - 0.25) <= 1e-15);
  CHECK_THROWS_AS(root_char(GroupElement(mat({{1, 1}, {0, 1}})), 1), NotInTorus);
}

TEST_CASE("section membership and coordinates") {
  const ChevalleyData d = build_chevalley(3);
  CVector s(2);
  s << cplx(0.5, -1.0), 2.0;
  const AlgebraElement x = section_point(d, s);
  CHECK(on_section(d, x));
  CHECK((section_coordinates(d, x.matrix()) - s).norm() <= 1e-15);
  CHECK_FALSE(on_section(d, d.h));
}

TEST_CASE("lie_core property suite") {
  for (int n = 2; n <= 6; ++n) test::require_module_passes("lie_core", n, 30);
}
