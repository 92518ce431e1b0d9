#include "zlab/centralizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <Eigen/SVD>

#include "zlab/errors.hpp"

namespace zlab {

namespace {

CMatrix gradient_combination(const AlgebraElement& x, const CVector& lambda) {
  CMatrix m = CMatrix::Zero(x.dim(), x.dim());
  for (int i = 1; i <= x.dim() - 1; ++i) {
    m += lambda(i - 1) * invariant_gradient(x, i).matrix();
  }
  return m;
}

CMatrix chart_group(const AlgebraElement& s, const CVector& lambda) {
  return mat_exp(gradient_combination(s, lambda));
}

double vector_gap(const TangentVectorGxg& a, const TangentVectorGxg& b) {
  const double diff = std::hypot((a.y - b.y).norm(), (a.z - b.z).norm());
  const double size = std::hypot(a.y.norm(), a.z.norm());
  return diff / (1.0 + size);
}

// Pushforwards of the coordinate basis (e_1..e_r, df_1..df_r) of C^r x S,
// differenced with the complex step `step`.
std::vector<TangentVectorGxg> chart_pushforwards(const ChevalleyData& chev, const CJLPoint& c,
                                                 cplx step) {
  const int r = chev.r;
  const GroupElement g0(chart_group(c.s, c.lambda));
  const InvariantVector z0 = invariants(c.s);
  std::vector<TangentVectorGxg> out;
  out.reserve(static_cast<std::size_t>(2 * r));
  for (int i = 0; i < r; ++i) {
    CVector lp = c.lambda;
    CVector lm = c.lambda;
    lp(i) += step;
    lm(i) -= step;
    out.push_back(left_trivialized_difference(g0, chart_group(c.s, lp), chart_group(c.s, lm),
                                              c.s.matrix(), c.s.matrix(), step));
  }
  for (int j = 0; j < r; ++j) {
    InvariantVector zp = z0;
    InvariantVector zm = z0;
    zp(j) += step;
    zm(j) -= step;
    const AlgebraElement sp = section_from_invariants(chev, zp);
    const AlgebraElement sm = section_from_invariants(chev, zm);
    out.push_back(left_trivialized_difference(g0, chart_group(sp, c.lambda),
                                              chart_group(sm, c.lambda), sp.matrix(),
                                              sm.matrix(), step));
  }
  return out;
}

}  // namespace

ZPoint ZPoint::make(const ChevalleyData& chev, GroupElement g, AlgebraElement x, double tol) {
  if (g.dim() != chev.n || x.dim() != chev.n) throw DimensionMismatch("Z-point dimension");
  if (!on_section(chev, x)) throw InvalidElement("x is not on the Kostant section");
  const double defect = stabilizer_defect(g, x);
  if (!(defect <= tol)) {
    char msg[64];
    std::snprintf(msg, sizeof msg, "g does not stabilise x (defect %.3g)", defect);
    throw InvalidElement(msg);
  }
  return ZPoint(std::move(g), std::move(x));
}

cplx cotangent_symplectic_form(const AlgebraElement& x, const TangentVectorGxg& v1,
                               const TangentVectorGxg& v2) {
  return pairing(v1.y, v2.z) - pairing(v2.y, v1.z) + pairing(x, bracket(v1.y, v2.y));
}

AlgebraElement left_moment_map(const GroupElement& g, const AlgebraElement& x) {
  return g.adjoint(x);
}

AlgebraElement right_moment_map(const GroupElement&, const AlgebraElement& x) { return -x; }

MomentPair moment_map(const GroupElement& g, const AlgebraElement& x) {
  return {left_moment_map(g, x), right_moment_map(g, x)};
}

double stabilizer_defect(const GroupElement& g, const AlgebraElement& x) {
  const double d = (g.adjoint(x.matrix()) - x.matrix()).norm();
  const double nx = x.norm();
  return nx > 0.0 ? d / nx : d;
}

double section_distance(const ChevalleyData& chev, const AlgebraElement& x) {
  double res = 0.0;
  section_coordinates(chev, x.matrix(), &res);
  return res;
}

bool is_z_point(const ChevalleyData& chev, const GroupElement& g, const AlgebraElement& x,
                double tol) {
  return section_distance(chev, x) <= tol && stabilizer_defect(g, x) <= tol;
}

InvariantVector centralizer_invariants(const ZPoint& p) { return invariants(p.x()); }

TangentVectorGxg hamiltonian_field(const ZPoint& p, int i) {
  return {invariant_gradient(p.x(), i), AlgebraElement::zero(p.x().dim())};
}

ZPoint centralizer_flow(const ChevalleyData& chev, cplx t, const ZPoint& p, int i) {
  const CMatrix step = mat_exp(t * invariant_gradient(p.x(), i).matrix());
  return ZPoint::make(chev, GroupElement(p.g().matrix() * step), p.x());
}

ZPoint cjl_chart(const ChevalleyData& chev, const CJLPoint& c) {
  if (c.lambda.size() != chev.r) throw DimensionMismatch("chart coordinate length");
  return ZPoint::make(chev, GroupElement(chart_group(c.s, c.lambda)), c.s);
}

double z_point_distance(const ZPoint& a, const ZPoint& b) {
  return projective_distance(a.g().matrix(), b.g().matrix()) +
         (a.x().matrix() - b.x().matrix()).norm() / (1.0 + a.x().norm());
}

TangentVectorGxg left_trivialized_difference(const GroupElement& g_center,
                                             const CMatrix& g_plus, const CMatrix& g_minus,
                                             const CMatrix& x_plus, const CMatrix& x_minus,
                                             cplx step) {
  const CMatrix dg = (g_plus - g_minus) / (2.0 * step);
  const CMatrix y = g_center.matrix().partialPivLu().solve(dg);
  const CMatrix z = (x_plus - x_minus) / (2.0 * step);
  return {AlgebraElement::project(y), AlgebraElement::project(z)};
}

double CjlPullbackReport::max_deviation() const {
  return std::max({block_lambda_lambda, block_lambda_f, block_f_f});
}

CjlPullbackReport cjl_pullback_check(const ChevalleyData& chev, const CJLPoint& c,
                                     double fd_step) {
  if (!(fd_step >= 1e-8 && fd_step <= 1e-4)) {
    throw std::invalid_argument("fd_step must lie in [1e-8, 1e-4]");
  }
  const int r = chev.r;
  const auto vecs = chart_pushforwards(chev, c, cplx(fd_step, 0.0));
  const auto vecs_imag = chart_pushforwards(chev, c, cplx(0.0, fd_step));
  CjlPullbackReport rep;
  for (std::size_t k = 0; k < vecs.size(); ++k) {
    rep.holomorphy = std::max(rep.holomorphy, vector_gap(vecs[k], vecs_imag[k]));
  }
  const auto omega = [&](int a, int b) {
    return cotangent_symplectic_form(c.s, vecs[static_cast<std::size_t>(a)],
                                     vecs[static_cast<std::size_t>(b)]);
  };
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      rep.block_lambda_lambda = std::max(rep.block_lambda_lambda, std::abs(omega(i, j)));
      const double expected = i == j ? 1.0 : 0.0;
      rep.block_lambda_f = std::max(rep.block_lambda_f, std::abs(omega(i, r + j) - expected));
      rep.block_f_f = std::max(rep.block_f_f, std::abs(omega(r + i, r + j)));
    }
  }
  return rep;
}

CVector gradient_coordinates(const AlgebraElement& x, const AlgebraElement& y, double* residual) {
  const int n = x.dim();
  const int r = n - 1;
  CMatrix basis(n * n, r);
  for (int i = 1; i <= r; ++i) {
    basis.col(i - 1) = invariant_gradient(x, i).matrix().reshaped();
  }
  const CVector target = y.matrix().reshaped();
  double res = 0.0;
  CVector lambda = solve_least_squares(basis, target, &res);
  if (residual != nullptr) *residual = res / (1.0 + target.norm());
  return lambda;
}

int cjl_jacobian_rank(const ChevalleyData& chev, const CJLPoint& c, double fd_step, double tol) {
  const auto vecs = chart_pushforwards(chev, c, cplx(fd_step, 0.0));
  const int dim = sl_dimension(chev.n);
  CMatrix jac(2 * dim, static_cast<Eigen::Index>(vecs.size()));
  for (std::size_t k = 0; k < vecs.size(); ++k) {
    jac.col(static_cast<Eigen::Index>(k)) << sl_coordinates(vecs[k].y.matrix()),
        sl_coordinates(vecs[k].z.matrix());
  }
  Eigen::JacobiSVD<CMatrix> svd(jac);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > tol * s(0)) ++rank;
  }
  return rank;
}

}  // namespace zlab
