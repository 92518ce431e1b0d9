#include "zlab/kostant_maps.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "zlab/errors.hpp"

namespace zlab {

namespace {

// Entries (k, k + d) of m, k = 0..n-1-d.
CVector superdiagonal(const CMatrix& m, int d) {
  const auto n = static_cast<int>(m.rows());
  CVector v(n - d);
  for (int k = 0; k < n - d; ++k) v(k) = m(k, k + d);
  return v;
}

void require_xi_plus_b(const ChevalleyData& chev, const CMatrix& z) {
  const CMatrix lower = CMatrix(z - chev.xi.matrix()).triangularView<Eigen::StrictlyLower>();
  if (lower.norm() > 1e-10 * (1.0 + z.norm())) {
    throw NotInXiPlusB("z - xi has a strictly lower part of norm " +
                       std::to_string(lower.norm()));
  }
}

bool is_upper_unitriangular(const CMatrix& u, double tol) {
  const auto n = u.rows();
  const CMatrix lower = u.triangularView<Eigen::StrictlyLower>();
  const CMatrix diag_defect = u.diagonal() - CVector::Ones(n);
  return lower.norm() <= tol * u.norm() && diag_defect.norm() <= tol * u.norm();
}

// Root coordinates x_alpha of a point xi + diag + sum x_alpha E_{i,i+1}.
CVector superdiagonal_root_coordinates(const ChevalleyData& chev, const CMatrix& x) {
  require_xi_plus_b(chev, x);
  const CMatrix higher = x.triangularView<Eigen::StrictlyUpper>();
  CMatrix band = CMatrix::Zero(chev.n, chev.n);
  for (int k = 0; k + 1 < chev.n; ++k) band(k, k + 1) = x(k, k + 1);
  if ((higher - band).norm() > 1e-10 * (1.0 + x.norm())) {
    throw InvalidElement("point is not in xi + t + simple root spaces");
  }
  return superdiagonal(x, 1);
}

}  // namespace

GroupElement longest_weyl_lift(const ChevalleyData& chev) {
  const int n = chev.n;
  CMatrix w = CMatrix::Zero(n, n);
  // Ad_w(E_{i,i+1}) = (s_i / s_{i+1}) E_{n-i+1,n-i} for w = antidiag(s); the
  // defining condition forces all s_i equal.
  for (int k = 0; k < n; ++k) w(n - 1 - k, k) = 1.0;
  return GroupElement(w);
}

AlgebraElement conjugate_from_section(const ChevalleyData& chev, const GroupElement& u,
                                      const AlgebraElement& s) {
  if (!is_upper_unitriangular(u.matrix(), 1e-12)) {
    throw InvalidElement("conjugator must be upper unitriangular");
  }
  if (!on_section(chev, s)) throw InvalidElement("point is not on the Kostant section");
  return u.adjoint(s);
}

SectionDecomposition decompose_into_section(const ChevalleyData& chev, const AlgebraElement& z) {
  const int n = chev.n;
  require_xi_plus_b(chev, z.matrix());
  CMatrix current = z.matrix();
  CMatrix u = CMatrix::Identity(n, n);
  const CMatrix& xi = chev.xi.matrix();

  // Degree d is the d-th superdiagonal. Its part of (current - xi) is split as
  // [xi, y] + a eta^d with y on superdiagonal d + 1; conjugating by exp(y)
  // removes [xi, y] and only disturbs degrees > d.
  for (int d = 0; d + 1 < n; ++d) {
    const int unknown_y = n - 1 - d;
    const int unknowns = unknown_y + (d >= 1 ? 1 : 0);
    CMatrix system(n - d, unknowns);
    for (int k = 0; k < unknown_y; ++k) {
      CMatrix e = CMatrix::Zero(n, n);
      e(k, k + d + 1) = 1.0;
      system.col(k) = superdiagonal(commutator(xi, e), d);
    }
    if (d >= 1) system.col(unknown_y) = superdiagonal(chev.centralizer_eta[d - 1].matrix(), d);
    const CVector rhs = superdiagonal(current, d);
    double residual = 0.0;
    const CVector sol = solve_least_squares(system, rhs, &residual);
    if (residual > 1e-10 * (1.0 + rhs.norm())) {
      throw NoConvergence("graded split failed at degree " + std::to_string(d));
    }
    CMatrix y = CMatrix::Zero(n, n);
    for (int k = 0; k < unknown_y; ++k) y(k, k + d + 1) = sol(k);
    const CMatrix ey = exp_nilpotent(y);
    const CMatrix ey_inv = exp_nilpotent(-y);
    current = ey * current * ey_inv;
    u = u * ey_inv;
  }
  // The last superdiagonal (degree n - 1) is entirely in g_eta.
  const CVector coords = section_coordinates(chev, current);
  return {GroupElement(u), section_point(chev, coords)};
}

AlgebraElement section_representative(const ChevalleyData& chev, const AlgebraElement& x) {
  return decompose_into_section(chev, x).s;
}

AlgebraElement chamber_representative(const ChevalleyData& chev, const AlgebraElement& x,
                                      const Tolerances& tol) {
  std::vector<cplx> values = eigenvalues(x.matrix(), tol);
  std::sort(values.begin(), values.end(),
            [](const cplx& a, const cplx& b) { return a.real() > b.real(); });
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    if (!(values[k].real() - values[k + 1].real() > tol.chamber)) {
      throw NotInV("eigenvalue real parts not separated (gap " +
                   std::to_string(values[k].real() - values[k + 1].real()) + ")");
    }
  }
  CMatrix m = chev.xi.matrix();
  for (int k = 0; k < chev.n; ++k) m(k, k) = values[static_cast<std::size_t>(k)];
  return AlgebraElement::project(m);
}

GroupElement chamber_conjugator(const ChevalleyData& chev, const AlgebraElement& x,
                                const Tolerances& tol) {
  const AlgebraElement rep = chamber_representative(chev, x, tol);
  const GroupElement u1 = decompose_into_section(chev, x).u;
  const GroupElement u2 = decompose_into_section(chev, rep).u;
  return u1 * u2.inverse();
}

GroupElement section_conjugator(const ChevalleyData& chev, const AlgebraElement& x,
                                const Tolerances& tol) {
  const AlgebraElement rep = chamber_representative(chev, x, tol);
  return decompose_into_section(chev, rep).u.inverse();
}

BigCellFactorization big_cell_factor(const ChevalleyData& chev, const GroupElement& g,
                                     const Tolerances& tol) {
  const CMatrix w = longest_weyl_lift(chev).matrix();
  // w is a symmetric permutation matrix, so w^{-1} = w.
  try {
    LduFactors f = gauss_ldu(w * g.matrix(), tol);
    return {GroupElement(std::move(f.l)), GroupElement(std::move(f.d)),
            GroupElement(std::move(f.u))};
  } catch (const SingularMinor& e) {
    throw NotInGStar(e.index());
  }
}

GroupElement torus_from_root_coordinates(const CVector& coords) {
  const auto n = coords.size() + 1;
  CMatrix t = CMatrix::Zero(n, n);
  t(0, 0) = 1.0;
  // alpha_i(t) = t_i / t_{i+1} = 1 / coords_i.
  for (Eigen::Index k = 0; k < coords.size(); ++k) t(k + 1, k + 1) = t(k, k) * coords(k);
  return GroupElement(t);
}

GroupElement stabilizer_lift(const ChevalleyData& chev, const AlgebraElement& x,
                             const Tolerances& tol) {
  const CVector coords = superdiagonal_root_coordinates(chev, x.matrix());
  const GroupElement w = longest_weyl_lift(chev);
  const GroupElement t = torus_from_root_coordinates(coords);
  const GroupElement u = chamber_conjugator(chev, x, tol);
  const AlgebraElement flipped = (w * t).adjoint(x);
  const GroupElement u_minus =
      GroupElement(w.matrix() * chamber_conjugator(chev, flipped, tol).inverse().matrix() *
                   w.matrix());
  return w * u_minus * t * u;
}

AlgebraElement level_set_point(const ChevalleyData& chev, const AlgebraElement& rep,
                               const GroupElement& g, const Tolerances& tol) {
  const double defect = (g.adjoint(rep.matrix()) - rep.matrix()).norm();
  if (defect > 1e-8 * (1.0 + rep.norm())) {
    char msg[64];
    std::snprintf(msg, sizeof msg, "Ad_g moves the representative by %.3g", defect);
    throw NotCentralizing(msg);
  }
  const BigCellFactorization f = big_cell_factor(chev, g, tol);
  return f.u.adjoint(rep);
}

}  // namespace zlab
