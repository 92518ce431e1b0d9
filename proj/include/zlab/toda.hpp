#pragma once

// The Kostant-Toda phase space O_KT = xi + t + (nonzero simple root lines),
// its flows solved by factorisation in the big cell, and the open embedding
// of V = {x in O_KT : F(x) in D} into the universal centraliser.
//
// Flows are defined by
//   x(t) = level_set_point(rep, lift(x) exp(t grad f_i(rep))),  rep = chamber rep of x,
// i.e. right translation along the left-invariant field on the stabiliser.

#include <vector>

#include "zlab/centralizer.hpp"
#include "zlab/kostant_maps.hpp"

namespace zlab {

class TodaPoint {
 public:
  /// diag: n entries summing to zero; roots: n - 1 entries of modulus > 1e-13.
  TodaPoint(CVector diag, CVector roots);

  /// Reads xi + diag + sum roots_i E_{i,i+1} off a matrix; entries outside
  /// that pattern must vanish to tol (relative to 1 + ||m||).
  static TodaPoint from_matrix(const ChevalleyData& chev, const CMatrix& m, double tol = 1e-8);

  const CVector& diag_part() const noexcept { return diag_; }
  const CVector& root_coords() const noexcept { return roots_; }
  int dim() const noexcept { return static_cast<int>(diag_.size()); }

  AlgebraElement matrix() const;

 private:
  CVector diag_;
  CVector roots_;
};

/// x in V: F(x) lies in the chamber image D.
bool in_embedding_domain(const ChevalleyData& chev, const TodaPoint& x,
                         const Tolerances& tol = {});

/// Flow of f_i for complex time t. Throws NotInV off V, NotInGStar when the
/// translated group element leaves the big cell (finite-time blow-up).
TodaPoint toda_flow(const ChevalleyData& chev, int i, cplx t, const TodaPoint& x,
                    const Tolerances& tol = {});

/// d/dt of toda_flow at t = 0 by central differences with step h.
AlgebraElement toda_vector_field(const ChevalleyData& chev, int i, const TodaPoint& x,
                                 double h = 1e-6, const Tolerances& tol = {});

/// x -> (delta(x) lift(x) delta(x)^{-1}, beta(x)).
ZPoint embed_in_centralizer(const ChevalleyData& chev, const TodaPoint& x,
                            const Tolerances& tol = {});

/// Inverse of embed_in_centralizer on its image W. Throws NotInW when F(x) is
/// outside D or the conjugated group slot leaves the big cell.
TodaPoint embedding_inverse(const ChevalleyData& chev, const ZPoint& p,
                            const Tolerances& tol = {});

struct IntertwiningReport {
  double flow_level = 0.0;     ///< distance between phi(x(t)) and the Z-flow of phi(x)
  double infinitesimal = 0.0;  ///< H(f~_i) at phi(x) vs d phi(toda field), relative
};

/// Compares phi(toda_flow(i, t, x)) with centralizer_flow(t, phi(x), i), and
/// H(f~_i)_{phi(x)} with the central-difference pushforward of the Toda field.
IntertwiningReport intertwining_deviation(const ChevalleyData& chev, int i, cplx t,
                                          const TodaPoint& x, double fd_step = 1e-6,
                                          const Tolerances& tol = {});

/// Classical RK4 on dx/dt = toda_vector_field(i, x) from x0 over [0, t_end].
TodaPoint integrate_toda_rk4(const ChevalleyData& chev, int i, const TodaPoint& x0, double t_end,
                             double step, const Tolerances& tol = {});

/// Distance between Toda points, relative to 1 + ||a||.
double toda_distance(const TodaPoint& a, const TodaPoint& b);

/// Greedy matching distance between two spectra of equal size.
double spectrum_distance(std::vector<cplx> a, std::vector<cplx> b);

}  // namespace zlab
