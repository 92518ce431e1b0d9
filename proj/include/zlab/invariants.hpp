#pragma once

// Generators of the invariant ring of sl_n and the Kostant section as a
// global chart for them.
//
//   f_i(x) = tr(x^{i+1}) / (i+1),   i = 1..r
//
// Their trace-form duals are x^i minus its trace part; these commute with x.

#include "zlab/lie_core.hpp"

namespace zlab {

/// A value of F = (f_1, ..., f_r).
using InvariantVector = CVector;

/// f_i(x), i in [1, r].
cplx invariant(const AlgebraElement& x, int i);

/// F(x) = (f_1(x), ..., f_r(x)).
InvariantVector invariants(const AlgebraElement& x);

/// (d_x f_i)^vee = x^i - tr(x^i)/n I, the trace-form gradient of f_i.
AlgebraElement invariant_gradient(const AlgebraElement& x, int i);

/// F restricted to the section, in section coordinates.
InvariantVector section_invariants(const ChevalleyData& chev, const CVector& section_coords);

/// The unique point of the Kostant section with F(x) = z.
///
/// f_i on xi + sum_j s_j eta^j depends only on s_1..s_i and is affine in s_i
/// (weight argument), so forward substitution solves it exactly in exact
/// arithmetic; two Newton steps with the analytic Jacobian polish rounding.
/// Throws NoConvergence when ||F(x) - z|| > 1e-10 (1 + ||z||) afterwards.
AlgebraElement section_from_invariants(const ChevalleyData& chev, const InvariantVector& z);

/// The n roots of the characteristic polynomial determined by z.
std::vector<cplx> spectrum_from_invariants(const ChevalleyData& chev, const InvariantVector& z,
                                           const Tolerances& tol = {});

/// Smallest gap between consecutive real parts of a spectrum (0 for n < 2).
double min_real_part_gap(std::vector<cplx> values);

/// Membership in D = F(C): the characteristic roots have pairwise distinct
/// real parts, with minimal gap above tol.chamber.
bool in_chamber_image(const ChevalleyData& chev, const InvariantVector& z,
                      const Tolerances& tol = {});

}  // namespace zlab
