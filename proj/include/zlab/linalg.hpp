#pragma once

// Dense complex kernels used by the rest of the library. Dimensions are small
// (n <= 8 for sl_n, (n^2 - 1) for adjoint operators), so everything is
// dynamic-size Eigen with no attempt at blocking.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace zlab {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Numerical thresholds shared across modules. Every field can be overridden
/// from the command line as `--tol.<name>`.
struct Tolerances {
  double eig = 1e-10;      ///< eigenpair residual, relative to ||a||
  double minor = 1e-12;    ///< LDU pivot threshold, relative to ||a||
  double exp = 1e-13;      ///< advertised accuracy of mat_exp (not a knob of the algorithm)
  double chamber = 1e-9;   ///< minimal real-part gap between eigenvalues
  double kernel = 1e-9;    ///< singular value cut for null spaces, relative to sigma_max
  double fd_step = 1e-6;   ///< central finite-difference step
};

struct EigenDecomposition {
  std::vector<cplx> values;  // unordered
  CMatrix vectors;           // column k pairs with values[k]
};

/// Eigenpairs of a general complex matrix (Hessenberg reduction + shifted QR).
/// Throws NoConvergence when the iteration fails or a pair misses the residual
/// bound ||a v - l v|| <= tol.eig * ||a||.
EigenDecomposition eig(const CMatrix& a, const Tolerances& tol = {});

/// Eigenvalues only, with the same convergence contract as eig().
std::vector<cplx> eigenvalues(const CMatrix& a, const Tolerances& tol = {});

/// Matrix exponential by scaling and squaring with a diagonal Pade approximant
/// of degree 3, 5, 7, 9 or 13 chosen from the 1-norm.
CMatrix mat_exp(const CMatrix& a);

/// exp of a nilpotent matrix, summed exactly as sum_{k<n} a^k / k!.
CMatrix exp_nilpotent(const CMatrix& a);

struct LduFactors {
  CMatrix l;  // lower unitriangular
  CMatrix d;  // diagonal
  CMatrix u;  // upper unitriangular
};

/// a = l d u without pivoting. Throws SingularMinor(k) when the k-th pivot
/// (the ratio of consecutive leading minors) has modulus <= tol.minor * ||a||.
LduFactors gauss_ldu(const CMatrix& a, const Tolerances& tol = {});

/// Orthonormal basis (as columns) of the numerical null space of `a`: right
/// singular vectors whose singular value is below tol * sigma_max.
CMatrix kernel_basis(const CMatrix& a, double tol);

/// Least-squares solution of a x = b; `residual` receives ||a x - b||.
CVector solve_least_squares(const CMatrix& a, const CVector& b, double* residual = nullptr);

/// Frobenius norm.
double norm(const CMatrix& a);

CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// min over c of ||a - c b|| / ||a||. Zero iff a and b agree up to a scalar.
double projective_distance(const CMatrix& a, const CMatrix& b);

/// Determinant via LU, used for Gram-determinant style checks.
cplx determinant(const CMatrix& a);

}  // namespace zlab
