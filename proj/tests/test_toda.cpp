#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "zlab/errors.hpp"
#include "zlab/toda.hpp"

using namespace zlab;
using test::dist;
using test::mat;

namespace {

const ChevalleyData& sl2() {
  static const ChevalleyData d = build_chevalley(2);
  return d;
}

TodaPoint point2(cplx a, cplx y) {
  CVector diag(2);
  diag << a, -a;
  CVector roots(1);
  roots << y;
  return TodaPoint(diag, roots);
}

// Closed form of the f_1 flow from diag 0, root 1 in sl2: the point stays on
// the level set a^2 + y = 1 with a' = y, so a = tanh t and y = sech^2 t.
TodaPoint closed_form(cplx t) {
  const cplx c = std::cosh(t);
  return point2(std::tanh(t), 1.0 / (c * c));
}

}  // namespace

TEST_CASE("Toda points") {
  const TodaPoint x = point2(0.5, 2.0);
  CHECK(dist(x.matrix().matrix(), mat({{0.5, 2.0}, {1.0, -0.5}})) == 0.0);
  CHECK(toda_distance(TodaPoint::from_matrix(sl2(), x.matrix().matrix()), x) == 0.0);
  CHECK_THROWS_AS(point2(0.5, 0.0), InvalidElement);
  CHECK_THROWS_AS(TodaPoint::from_matrix(sl2(), mat({{0, 1}, {2, 0}})), InvalidElement);
}

TEST_CASE("embedding domain for sl2") {
  CHECK(in_embedding_domain(sl2(), point2(0.0, 1.0)));
  CHECK_FALSE(in_embedding_domain(sl2(), point2(0.0, -1.0)));
  CHECK_FALSE(in_embedding_domain(sl2(), point2(1.0, -1.0)));
}

TEST_CASE("sl2 Toda flow matches tanh and sech^2") {
  const TodaPoint x0 = point2(0.0, 1.0);
  CHECK(toda_distance(toda_flow(sl2(), 1, 0.0, x0), x0) <= 1e-14);
  for (double t : {0.25, 1.0, 2.0, -0.7}) {
    INFO("t = " << t);
    CHECK(toda_distance(toda_flow(sl2(), 1, t, x0), closed_form(t)) <= 1e-10);
  }
  const cplx tc(0.3, 0.2);
  CHECK(toda_distance(toda_flow(sl2(), 1, tc, x0), closed_form(tc)) <= 1e-10);
}

TEST_CASE("the sl2 flow blows up at t = i pi / 2") {
  const cplx t(0.0, std::numbers::pi / 2);
  CHECK_THROWS_AS(toda_flow(sl2(), 1, t, point2(0.0, 1.0)), NotInGStar);
}

TEST_CASE("the Toda vector field is tangent to the phase space") {
  // At diag 0, root 1: a' = sech^2(0) = 1 and y' = -2 sech^2 tanh = 0.
  const AlgebraElement v = toda_vector_field(sl2(), 1, point2(0.0, 1.0));
  CHECK(dist(v.matrix(), mat({{1, 0}, {0, -1}})) <= 1e-8);

  const ChevalleyData d = build_chevalley(4);
  CVector diag(4);
  diag << 3.0, 1.0, -1.0, -3.0;
  CVector roots(3);
  roots << 0.5, 0.25, 0.5;
  const CMatrix w = toda_vector_field(d, 2, TodaPoint(diag, roots)).matrix();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (j == i || j == i + 1) continue;
      CHECK(std::abs(w(i, j)) <= 1e-7);
    }
  }
}

TEST_CASE("embedding of the sl2 golden point") {
  const TodaPoint x0 = point2(0.0, 1.0);
  const ZPoint p = embed_in_centralizer(sl2(), x0);
  CHECK(projective_distance(p.g().matrix(), mat({{0, 1}, {1, 0}})) <= 1e-14);
  CHECK(dist(p.x().matrix(), mat({{0, 1}, {1, 0}})) <= 1e-14);
  CHECK(toda_distance(embedding_inverse(sl2(), p), x0) <= 1e-14);
  CHECK_THROWS_AS(embed_in_centralizer(sl2(), point2(0.0, -1.0)), NotInV);
}

TEST_CASE("points outside the image of the embedding") {
  const AlgebraElement s(mat({{0, -1}, {1, 0}}));
  const ZPoint p = ZPoint::make(sl2(), GroupElement::identity(2), s);
  CHECK_THROWS_AS(embedding_inverse(sl2(), p), NotInW);
  // (e, x0) has the right spectrum but e is outside the translated big cell.
  const ZPoint q = ZPoint::make(sl2(), GroupElement::identity(2), AlgebraElement(mat({{0, 1}, {1, 0}})));
  CHECK_THROWS_AS(embedding_inverse(sl2(), q), NotInW);
}

TEST_CASE("RK4 integration agrees with the closed form") {
  const TodaPoint x1 = integrate_toda_rk4(sl2(), 1, point2(0.0, 1.0), 1.0, 1e-3);
  CHECK(toda_distance(x1, closed_form(1.0)) <= 1e-5);
}

TEST_CASE("spectrum distance is order independent") {
  CHECK(spectrum_distance({1.0, 2.0, cplx(0, 1)}, {cplx(0, 1), 2.0, 1.0}) <= 1e-15);
  CHECK(spectrum_distance({1.0, 2.0}, {1.0, 2.5}) >= 0.5 - 1e-15);
}

TEST_CASE("toda property suite") {
  for (int n = 2; n <= 3; ++n) test::require_module_passes("toda", n, 20);
}
