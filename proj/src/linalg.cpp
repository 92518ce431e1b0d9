#include "zlab/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "zlab/errors.hpp"

namespace zlab {

namespace {

double one_norm(const CMatrix& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

// (U, V) such that (V + U)(V - U)^{-1} is the [m/m] Pade approximant of exp(a).
template <std::size_t N>
void pade_low(const CMatrix& a, const std::array<double, N>& b, CMatrix& u, CMatrix& v) {
  const auto n = a.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix a2 = a * a;
  CMatrix odd = b[1] * id;
  CMatrix even = b[0] * id;
  CMatrix power = id;
  for (std::size_t k = 2; k < N; k += 2) {
    power = power * a2;
    even += b[k] * power;
    if (k + 1 < N) odd += b[k + 1] * power;
  }
  u = a * odd;
  v = even;
}

void pade13(const CMatrix& a, CMatrix& u, CMatrix& v) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  const auto n = a.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix a2 = a * a;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a4 * a2;
  const CMatrix inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
  u = a * (a6 * inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const CMatrix inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
  v = a6 * inner_v + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

}  // namespace

EigenDecomposition eig(const CMatrix& a, const Tolerances& tol) {
  Eigen::ComplexEigenSolver<CMatrix> solver(a, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw NoConvergence("complex QR iteration did not converge");
  }
  EigenDecomposition out;
  out.values.assign(solver.eigenvalues().data(),
                    solver.eigenvalues().data() + solver.eigenvalues().size());
  out.vectors = solver.eigenvectors();
  const double scale = std::max(norm(a), 1e-300);
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    const CVector v = out.vectors.col(k);
    const double res = (a * v - out.values[k] * v).norm() / std::max(v.norm(), 1e-300);
    if (res > tol.eig * scale) {
      throw NoConvergence("eigenpair residual " + std::to_string(res) + " above threshold");
    }
  }
  return out;
}

std::vector<cplx> eigenvalues(const CMatrix& a, const Tolerances& tol) {
  return eig(a, tol).values;
}

CMatrix mat_exp(const CMatrix& a) {
  static constexpr std::array<double, 4> b3 = {120.0, 60.0, 12.0, 1.0};
  static constexpr std::array<double, 6> b5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
  static constexpr std::array<double, 8> b7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                               25200.0,    1512.0,    56.0,      1.0};
  static constexpr std::array<double, 10> b9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                                302702400.0,   30270240.0,   2162160.0,
                                                110880.0,      3960.0,       90.0,
                                                1.0};
  // Higham's backward-error bounds for each degree at double precision.
  constexpr double theta3 = 1.495585217958292e-2;
  constexpr double theta5 = 2.539398330063230e-1;
  constexpr double theta7 = 9.504178996162932e-1;
  constexpr double theta9 = 2.097847961257068e0;
  constexpr double theta13 = 5.371920351148152e0;

  const double l1 = one_norm(a);
  CMatrix u;
  CMatrix v;
  int squarings = 0;
  if (l1 <= theta3) {
    pade_low(a, b3, u, v);
  } else if (l1 <= theta5) {
    pade_low(a, b5, u, v);
  } else if (l1 <= theta7) {
    pade_low(a, b7, u, v);
  } else if (l1 <= theta9) {
    pade_low(a, b9, u, v);
  } else {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(l1 / theta13))));
    pade13(a * std::ldexp(1.0, -squarings), u, v);
  }
  CMatrix result = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

CMatrix exp_nilpotent(const CMatrix& a) {
  const auto n = a.rows();
  CMatrix result = CMatrix::Identity(n, n);
  CMatrix term = CMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k < n; ++k) {
    term = term * a / static_cast<double>(k);
    result += term;
  }
  return result;
}

LduFactors gauss_ldu(const CMatrix& a, const Tolerances& tol) {
  const auto n = a.rows();
  const double threshold = tol.minor * norm(a);
  CMatrix work = a;
  CMatrix l = CMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx pivot = work(k, k);
    if (std::abs(pivot) <= threshold) throw SingularMinor(static_cast<int>(k) + 1);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const cplx m = work(i, k) / pivot;
      l(i, k) = m;
      work.row(i).tail(n - k) -= m * work.row(k).tail(n - k);
      work(i, k) = 0.0;
    }
  }
  LduFactors out;
  out.l = std::move(l);
  out.d = CMatrix::Zero(n, n);
  out.u = CMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.d(k, k) = work(k, k);
    for (Eigen::Index j = k + 1; j < n; ++j) out.u(k, j) = work(k, j) / work(k, k);
  }
  return out;
}

CMatrix kernel_basis(const CMatrix& a, double tol) {
  const auto cols = a.cols();
  if (a.rows() == 0) return CMatrix::Identity(cols, cols);
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  Eigen::Index rank = 0;
  if (smax > 0.0) {
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (s(k) >= tol * smax) ++rank;
    }
  }
  return svd.matrixV().rightCols(cols - rank);
}

CVector solve_least_squares(const CMatrix& a, const CVector& b, double* residual) {
  CVector x = a.completeOrthogonalDecomposition().solve(b);
  if (residual != nullptr) *residual = (a * x - b).norm();
  return x;
}

double norm(const CMatrix& a) { return a.norm(); }

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

double projective_distance(const CMatrix& a, const CMatrix& b) {
  const double na = a.norm();
  const double nb2 = b.squaredNorm();
  if (na == 0.0 || nb2 == 0.0) return (na == 0.0 && nb2 == 0.0) ? 0.0 : 1.0;
  // Frobenius projection of a onto span{b}.
  const cplx c = (b.array().conjugate() * a.array()).sum() / nb2;
  return (a - c * b).norm() / na;
}

cplx determinant(const CMatrix& a) { return a.partialPivLu().determinant(); }

}  // namespace zlab
