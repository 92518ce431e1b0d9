#pragma once

// Maps on the Kostant-Toda side:
//
//   U x S -> xi + b,  (u, s) -> Ad_u(s)         conjugate_from_section / decompose
//   x -> xi + y, y diagonal in the chamber      chamber_representative
//   x -> unique u in U with Ad_u(rep) = x       chamber_conjugator
//   x -> unique u in U with Ad_u(rep) = beta(x) section_conjugator
//   g -> (u_-, t, u) with g = w0 u_- t u        big_cell_factor
//   x -> the stabiliser element over x          stabilizer_lift
//   (rep, g) -> Ad_{sigma_U(g)}(rep)            level_set_point
//
// The chamber is Re(alpha_i) > 0 for every simple root, i.e. the diagonal of
// the representative has strictly decreasing real parts.

#include "zlab/invariants.hpp"
#include "zlab/lie_core.hpp"

namespace zlab {

/// (u, s) with u upper unitriangular and s on the Kostant section.
struct SectionDecomposition {
  GroupElement u;
  AlgebraElement s;

  const GroupElement& unipotent() const noexcept { return u; }
  const AlgebraElement& section_part() const noexcept { return s; }
};

/// g = w0 * u_minus * t * u, with w0 the longest Weyl lift.
struct BigCellFactorization {
  GroupElement u_minus;  ///< lower unitriangular
  GroupElement t;        ///< diagonal, meaningful modulo scalars
  GroupElement u;        ///< upper unitriangular
};

/// The lift of the longest Weyl element with Ad_w(E_{i,i+1}) = E_{n-i+1,n-i}.
/// For type A this is the antidiagonal permutation matrix.
GroupElement longest_weyl_lift(const ChevalleyData& chev);

/// Ad_u(s). Requires u upper unitriangular and s on the section.
AlgebraElement conjugate_from_section(const ChevalleyData& chev, const GroupElement& u,
                                      const AlgebraElement& s);

/// Inverse of conjugate_from_section on xi + b, by graded elimination along
/// g = [xi, g] (+) g_eta, one superdiagonal at a time.
/// Throws NotInXiPlusB when z - xi is not upper triangular.
SectionDecomposition decompose_into_section(const ChevalleyData& chev, const AlgebraElement& z);

/// beta(x): the unique section point conjugate to x in xi + b.
AlgebraElement section_representative(const ChevalleyData& chev, const AlgebraElement& x);

/// xi + diag(eigenvalues of x sorted by strictly decreasing real part).
/// Throws NotInV when the real parts are not separated by tol.chamber.
AlgebraElement chamber_representative(const ChevalleyData& chev, const AlgebraElement& x,
                                      const Tolerances& tol = {});

/// The unique u in U with Ad_u(chamber_representative(x)) = x.
GroupElement chamber_conjugator(const ChevalleyData& chev, const AlgebraElement& x,
                                const Tolerances& tol = {});

/// The unique u in U with Ad_u(chamber_representative(x)) = section_representative(x).
GroupElement section_conjugator(const ChevalleyData& chev, const AlgebraElement& x,
                                const Tolerances& tol = {});

/// Gauss factorisation of w0^{-1} g. Throws NotInGStar with the failing minor.
BigCellFactorization big_cell_factor(const ChevalleyData& chev, const GroupElement& g,
                                     const Tolerances& tol = {});

/// The unique g in the stabiliser of the chamber representative, inside the
/// big cell, with level_set_point(rep, g) = x. Built from its factors
/// (u = chamber_conjugator(x), alpha_i(t) = 1 / x_{alpha_i}, u_- from the
/// conjugator of Ad_{w0 t}(x)), never by search. Requires x in O_KT.
GroupElement stabilizer_lift(const ChevalleyData& chev, const AlgebraElement& x,
                             const Tolerances& tol = {});

/// Ad_{sigma_U(g)}(rep) for g in the stabiliser of rep and in the big cell.
/// Throws NotCentralizing when ||Ad_g(rep) - rep|| > 1e-8 (1 + ||rep||),
/// NotInGStar when the factorisation fails.
AlgebraElement level_set_point(const ChevalleyData& chev, const AlgebraElement& rep,
                               const GroupElement& g, const Tolerances& tol = {});

/// Torus element with alpha_i(t) = 1 / coords[i]: diag(1, c_1, c_1 c_2, ...).
GroupElement torus_from_root_coordinates(const CVector& coords);

}  // namespace zlab
