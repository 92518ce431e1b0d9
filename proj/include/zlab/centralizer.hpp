#pragma once

// The universal centralizer Z = {(g, x) : x on the Kostant section, Ad_g x = x}
// inside G x g, with the cotangent symplectic form in left trivialisation,
// its moment maps, the integrable system F~(g, x) = F(x) and its flows.

#include <vector>

#include "zlab/invariants.hpp"
#include "zlab/lie_core.hpp"

namespace zlab {

/// Validated point of the universal centraliser.
class ZPoint {
 public:
  /// Throws InvalidElement unless x is on the section (1e-10) and
  /// ||Ad_g(x) - x|| <= tol * ||x||.
  static ZPoint make(const ChevalleyData& chev, GroupElement g, AlgebraElement x,
                     double tol = 1e-9);

  const GroupElement& g() const noexcept { return g_; }
  const AlgebraElement& x() const noexcept { return x_; }

 private:
  ZPoint(GroupElement g, AlgebraElement x) : g_(std::move(g)), x_(std::move(x)) {}
  GroupElement g_;
  AlgebraElement x_;
};

/// Carathéodory-Jacobi-Lie chart point (lambda, s) in C^r x S.
struct CJLPoint {
  CVector lambda;
  AlgebraElement s;
};

/// Omega_(g,x)(v1, v2) = <y1, z2> - <y2, z1> + <x, [y1, y2]>; independent of g.
cplx cotangent_symplectic_form(const AlgebraElement& x, const TangentVectorGxg& v1,
                               const TangentVectorGxg& v2);

AlgebraElement left_moment_map(const GroupElement& g, const AlgebraElement& x);
AlgebraElement right_moment_map(const GroupElement& g, const AlgebraElement& x);

struct MomentPair {
  AlgebraElement left;
  AlgebraElement right;
};
MomentPair moment_map(const GroupElement& g, const AlgebraElement& x);

/// Stabiliser defect ||Ad_g(x) - x|| / ||x|| (absolute when x = 0).
double stabilizer_defect(const GroupElement& g, const AlgebraElement& x);

bool is_z_point(const ChevalleyData& chev, const GroupElement& g, const AlgebraElement& x,
                double tol = 1e-9);

/// F~(p) = F(x).
InvariantVector centralizer_invariants(const ZPoint& p);

/// H(f~_i) at p, left-trivialised: (grad f_i(x), 0).
TangentVectorGxg hamiltonian_field(const ZPoint& p, int i);

/// Flow of H(f~_i) for complex time t: (g exp(t grad f_i(x)), x).
ZPoint centralizer_flow(const ChevalleyData& chev, cplx t, const ZPoint& p, int i);

/// (exp(sum lambda_i grad f_i(s)), s).
ZPoint cjl_chart(const ChevalleyData& chev, const CJLPoint& c);

/// Distance between Z-points: group slot modulo scalars plus algebra slot.
double z_point_distance(const ZPoint& a, const ZPoint& b);

/// Left-trivialised central difference of a curve in G x g:
/// y = g^{-1} (g(+h) - g(-h)) / 2h projected to sl_n (this removes the
/// ambiguity from rescaled representatives), z = (x(+h) - x(-h)) / 2h.
TangentVectorGxg left_trivialized_difference(const GroupElement& g_center,
                                             const CMatrix& g_plus, const CMatrix& g_minus,
                                             const CMatrix& x_plus, const CMatrix& x_minus,
                                             cplx step);

struct CjlPullbackReport {
  double block_lambda_lambda = 0.0;  ///< max |omega(dPhi e_i, dPhi e_j)|
  double block_lambda_f = 0.0;       ///< max |omega(dPhi e_i, dPhi df_j) - delta_ij|
  double block_f_f = 0.0;            ///< max |omega(dPhi df_i, dPhi df_j)|
  double holomorphy = 0.0;           ///< real vs imaginary step disagreement
  double max_deviation() const;
};

/// Push the coordinate basis of C^r x S through the chart by central
/// differences and compare omega with sum dz_i ^ df_i block by block.
/// fd_step must lie in [1e-8, 1e-4] (std::invalid_argument otherwise).
CjlPullbackReport cjl_pullback_check(const ChevalleyData& chev, const CJLPoint& c,
                                     double fd_step);

/// Solve y = sum lambda_i grad f_i(x) for lambda by least squares;
/// `residual` receives the relative fit error.
CVector gradient_coordinates(const AlgebraElement& x, const AlgebraElement& y,
                             double* residual = nullptr);

/// Numerical rank of the central-difference Jacobian of the chart at c
/// (full rank is 2r).
int cjl_jacobian_rank(const ChevalleyData& chev, const CJLPoint& c, double fd_step = 1e-6,
                      double tol = 1e-6);

/// Distance of a point from the section S, relative to 1 + ||x||.
double section_distance(const ChevalleyData& chev, const AlgebraElement& x);

}  // namespace zlab
