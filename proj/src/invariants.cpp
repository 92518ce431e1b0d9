#include "zlab/invariants.hpp"

#include <algorithm>
#include <stdexcept>

#include "zlab/errors.hpp"

namespace zlab {

namespace {

void check_label(int i, int r) {
  if (i < 1 || i > r) throw std::out_of_range("invariant label out of range");
}

CMatrix power(const CMatrix& x, int k) {
  CMatrix p = CMatrix::Identity(x.rows(), x.cols());
  for (int j = 0; j < k; ++j) p = p * x;
  return p;
}

}  // namespace

cplx invariant(const AlgebraElement& x, int i) {
  check_label(i, x.dim() - 1);
  return power(x.matrix(), i + 1).trace() / static_cast<double>(i + 1);
}

InvariantVector invariants(const AlgebraElement& x) {
  const int r = x.dim() - 1;
  InvariantVector z(r);
  CMatrix p = x.matrix();
  for (int i = 1; i <= r; ++i) {
    p = p * x.matrix();
    z(i - 1) = p.trace() / static_cast<double>(i + 1);
  }
  return z;
}

AlgebraElement invariant_gradient(const AlgebraElement& x, int i) {
  check_label(i, x.dim() - 1);
  return AlgebraElement::project(power(x.matrix(), i));
}

InvariantVector section_invariants(const ChevalleyData& chev, const CVector& section_coords) {
  return invariants(section_point(chev, section_coords));
}

AlgebraElement section_from_invariants(const ChevalleyData& chev, const InvariantVector& z) {
  const int r = chev.r;
  if (z.size() != r) throw DimensionMismatch("invariant vector length");
  CVector s = CVector::Zero(r);
  for (int i = 1; i <= r; ++i) {
    s(i - 1) = 0.0;
    const cplx base = invariant(section_point(chev, s), i);
    s(i - 1) = 1.0;
    const cplx slope = invariant(section_point(chev, s), i) - base;
    s(i - 1) = (z(i - 1) - base) / slope;
  }
  for (int step = 0; step < 2; ++step) {
    const AlgebraElement x = section_point(chev, s);
    const CVector defect = invariants(x) - z;
    // d f_i / d s_j = <grad f_i, eta^j>
    CMatrix jac(r, r);
    for (int i = 1; i <= r; ++i) {
      const AlgebraElement g = invariant_gradient(x, i);
      for (int j = 0; j < r; ++j) jac(i - 1, j) = pairing(g, chev.centralizer_eta[j]);
    }
    s -= jac.partialPivLu().solve(defect);
  }
  AlgebraElement x = section_point(chev, s);
  const double err = (invariants(x) - z).norm();
  if (!(err <= 1e-10 * (1.0 + z.norm()))) {
    throw NoConvergence("section solve residual " + std::to_string(err));
  }
  return x;
}

std::vector<cplx> spectrum_from_invariants(const ChevalleyData& chev, const InvariantVector& z,
                                           const Tolerances& tol) {
  return eigenvalues(section_from_invariants(chev, z).matrix(), tol);
}

double min_real_part_gap(std::vector<cplx> values) {
  if (values.size() < 2) return 0.0;
  std::sort(values.begin(), values.end(),
            [](const cplx& a, const cplx& b) { return a.real() > b.real(); });
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    gap = std::min(gap, values[k].real() - values[k + 1].real());
  }
  return gap;
}

bool in_chamber_image(const ChevalleyData& chev, const InvariantVector& z, const Tolerances& tol) {
  return min_real_part_gap(spectrum_from_invariants(chev, z, tol)) > tol.chamber;
}

}  // namespace zlab
