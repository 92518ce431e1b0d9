#pragma once

// Structure data for g = sl_n(C): Chevalley generators, the principal
// sl2-triple (xi, h, eta), the invariant pairing and the adjoint group PGL_n
// realised as invertible matrices modulo scalars.

#include <vector>

#include "zlab/linalg.hpp"

namespace zlab {

inline constexpr int kMinRank = 2;
inline constexpr int kMaxRank = 8;

/// Traceless complex n x n matrix.
class AlgebraElement {
 public:
  /// Validates squareness, n >= 2, finiteness and |tr m| <= 1e-12 ||m||.
  explicit AlgebraElement(CMatrix m);

  /// Drops the trace part instead of checking it. For values that are
  /// traceless by construction but carry rounding (Ad_g(x), commutators, ...).
  static AlgebraElement project(const CMatrix& m);
  static AlgebraElement zero(int n);

  const CMatrix& matrix() const noexcept { return m_; }
  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  double norm() const { return m_.norm(); }

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(cplx c);

 private:
  struct Unchecked {};
  AlgebraElement(CMatrix m, Unchecked) : m_(std::move(m)) {}
  CMatrix m_;
};

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a);
AlgebraElement operator*(cplx c, AlgebraElement a);
AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);

/// Invertible n x n matrix standing for its class in PGL_n.
class GroupElement {
 public:
  /// Validates |det m|^{1/n} > 1e-12 ||m||.
  explicit GroupElement(CMatrix m);
  static GroupElement identity(int n);

  const CMatrix& matrix() const noexcept { return m_; }
  int dim() const noexcept { return static_cast<int>(m_.rows()); }

  GroupElement inverse() const;
  /// Ad_g(x) = g x g^{-1}. Blind to rescaling of g.
  AlgebraElement adjoint(const AlgebraElement& x) const;
  CMatrix adjoint(const CMatrix& x) const;

  /// g1 ~ g2 iff g1 g2^{-1} is within tol (relative) of a scalar matrix.
  bool equivalent(const GroupElement& other, double tol = 1e-9) const;

 private:
  CMatrix m_;
};

GroupElement operator*(const GroupElement& a, const GroupElement& b);

/// exp of an algebra element, as a group element.
GroupElement group_exp(const AlgebraElement& x);

/// Left-trivialised tangent vector (d_e L_g(y), z) to G x g at (g, x).
struct TangentVectorGxg {
  AlgebraElement y;
  AlgebraElement z;
};

struct ChevalleyData {
  int n = 0;
  int r = 0;
  std::vector<AlgebraElement> e_plus;   ///< E_{i,i+1}
  std::vector<AlgebraElement> e_minus;  ///< E_{i+1,i}
  AlgebraElement h = AlgebraElement::zero(2);    ///< diag(2k - n - 1)
  AlgebraElement xi = AlgebraElement::zero(2);   ///< sum of e_minus
  AlgebraElement eta = AlgebraElement::zero(2);  ///< sum of c_i e_plus[i]
  std::vector<int> c;                            ///< c_i = i (n - i), 1-based i
  /// eta^1, ..., eta^r: a basis of the centraliser of eta, ordered by degree
  /// (eta^k lives on the k-th superdiagonal).
  std::vector<AlgebraElement> centralizer_eta;
};

/// Throws UnsupportedRank unless 2 <= n <= 8.
ChevalleyData build_chevalley(int n);

/// Trace form tr(x y). Throws DimensionMismatch on differing n.
cplx pairing(const AlgebraElement& x, const AlgebraElement& y);

// Coordinates on sl_n: off-diagonal matrix units E_ij (i != j, row-major)
// followed by H_k = E_kk - E_{k+1,k+1}.
int sl_dimension(int n);
CVector sl_coordinates(const CMatrix& m);
AlgebraElement from_sl_coordinates(int n, const CVector& coords);

/// Matrix of y -> [x, y] in the sl_n coordinates above.
CMatrix ad_action(const AlgebraElement& x);

/// Numerical basis of the centraliser g_x.
std::vector<AlgebraElement> centralizer_basis(const AlgebraElement& x, double tol = 1e-9);

struct TriangularParts {
  AlgebraElement t_part;
  AlgebraElement u_part;
  AlgebraElement uminus_part;
};

/// Split into diagonal, strictly upper and strictly lower parts.
TriangularParts project_triangular(const AlgebraElement& x);

/// alpha_i(t) = t_i / t_{i+1} for the simple root i (1-based).
/// Throws NotInTorus if t has off-diagonal mass above 1e-10 ||t||.
cplx root_char(const GroupElement& t, int i);

/// True when x - xi lies in g_eta, i.e. x is on the Kostant section.
/// The residual is measured as the off-section part of x - xi relative to 1 + ||x||.
bool on_section(const ChevalleyData& chev, const AlgebraElement& x, double tol = 1e-10);

/// Coordinates of x - xi in the basis centralizer_eta (least squares on the
/// superdiagonals); `residual` receives the relative off-section mass.
CVector section_coordinates(const ChevalleyData& chev, const CMatrix& x,
                            double* residual = nullptr);

/// xi + sum_k coords[k] eta^{k+1}.
AlgebraElement section_point(const ChevalleyData& chev, const CVector& coords);

}  // namespace zlab
