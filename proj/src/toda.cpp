#include "zlab/toda.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zlab/errors.hpp"

namespace zlab {

TodaPoint::TodaPoint(CVector diag, CVector roots) : diag_(std::move(diag)), roots_(std::move(roots)) {
  if (diag_.size() < kMinRank || roots_.size() != diag_.size() - 1) {
    throw InvalidElement("Toda point needs n diagonal and n - 1 root coordinates");
  }
  if (!diag_.allFinite() || !roots_.allFinite()) throw InvalidElement("non-finite Toda point");
  if (std::abs(diag_.sum()) > 1e-12 * (1.0 + diag_.norm())) {
    throw InvalidElement("Toda diagonal part is not traceless");
  }
  for (Eigen::Index k = 0; k < roots_.size(); ++k) {
    if (!(std::abs(roots_(k)) > 1e-13)) throw InvalidElement("Toda root coordinate vanishes");
  }
}

TodaPoint TodaPoint::from_matrix(const ChevalleyData& chev, const CMatrix& m, double tol) {
  const int n = chev.n;
  if (m.rows() != n || m.cols() != n) throw DimensionMismatch("Toda matrix dimension");
  CVector diag = m.diagonal();
  CVector roots(n - 1);
  for (int k = 0; k + 1 < n; ++k) roots(k) = m(k, k + 1);
  CMatrix pattern = chev.xi.matrix();
  pattern.diagonal() = diag;
  for (int k = 0; k + 1 < n; ++k) pattern(k, k + 1) = roots(k);
  const double off = (m - pattern).norm();
  if (off > tol * (1.0 + m.norm())) {
    throw InvalidElement("matrix is not of Kostant-Toda shape (defect " + std::to_string(off) +
                         ")");
  }
  diag.array() -= diag.sum() / static_cast<double>(n);
  return TodaPoint(std::move(diag), std::move(roots));
}

AlgebraElement TodaPoint::matrix() const {
  const auto n = diag_.size();
  CMatrix m = CMatrix::Zero(n, n);
  m.diagonal() = diag_;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    m(k + 1, k) = 1.0;
    m(k, k + 1) = roots_(k);
  }
  return AlgebraElement::project(m);
}

bool in_embedding_domain(const ChevalleyData& chev, const TodaPoint& x, const Tolerances& tol) {
  return in_chamber_image(chev, invariants(x.matrix()), tol);
}

namespace {

void require_domain(const ChevalleyData& chev, const TodaPoint& x, const Tolerances& tol) {
  if (x.dim() != chev.n) throw DimensionMismatch("Toda point dimension");
  if (!in_embedding_domain(chev, x, tol)) throw NotInV("F(x) is outside the chamber image");
}

}  // namespace

TodaPoint toda_flow(const ChevalleyData& chev, int i, cplx t, const TodaPoint& x,
                    const Tolerances& tol) {
  require_domain(chev, x, tol);
  const AlgebraElement xm = x.matrix();
  const AlgebraElement rep = chamber_representative(chev, xm, tol);
  const GroupElement lift = stabilizer_lift(chev, xm, tol);
  const CMatrix moved = lift.matrix() * mat_exp(t * invariant_gradient(rep, i).matrix());
  const AlgebraElement y = level_set_point(chev, rep, GroupElement(moved), tol);
  return TodaPoint::from_matrix(chev, y.matrix());
}

AlgebraElement toda_vector_field(const ChevalleyData& chev, int i, const TodaPoint& x, double h,
                                 const Tolerances& tol) {
  const CMatrix plus = toda_flow(chev, i, h, x, tol).matrix().matrix();
  const CMatrix minus = toda_flow(chev, i, -h, x, tol).matrix().matrix();
  return AlgebraElement::project((plus - minus) / (2.0 * h));
}

ZPoint embed_in_centralizer(const ChevalleyData& chev, const TodaPoint& x, const Tolerances& tol) {
  require_domain(chev, x, tol);
  const AlgebraElement xm = x.matrix();
  const GroupElement delta = section_conjugator(chev, xm, tol);
  const GroupElement lift = stabilizer_lift(chev, xm, tol);
  const AlgebraElement beta = section_representative(chev, xm);
  return ZPoint::make(chev, delta * lift * delta.inverse(), beta);
}

TodaPoint embedding_inverse(const ChevalleyData& chev, const ZPoint& p, const Tolerances& tol) {
  if (!in_chamber_image(chev, invariants(p.x()), tol)) {
    throw NotInW("F(x) is outside the chamber image");
  }
  const AlgebraElement rep = chamber_representative(chev, p.x(), tol);
  const GroupElement delta = section_conjugator(chev, rep, tol);
  const GroupElement h = delta.inverse() * p.g() * delta;
  try {
    return TodaPoint::from_matrix(chev, level_set_point(chev, rep, h, tol).matrix());
  } catch (const NotInGStar& e) {
    throw NotInW(std::string("group slot outside the big cell: ") + e.what());
  }
}

IntertwiningReport intertwining_deviation(const ChevalleyData& chev, int i, cplx t,
                                          const TodaPoint& x, double fd_step,
                                          const Tolerances& tol) {
  IntertwiningReport rep;
  const ZPoint base = embed_in_centralizer(chev, x, tol);
  const ZPoint along_toda = embed_in_centralizer(chev, toda_flow(chev, i, t, x, tol), tol);
  const ZPoint along_z = centralizer_flow(chev, t, base, i);
  rep.flow_level = z_point_distance(along_toda, along_z);

  const CMatrix field = toda_vector_field(chev, i, x, fd_step, tol).matrix();
  const CMatrix xm = x.matrix().matrix();
  const ZPoint plus = embed_in_centralizer(chev, TodaPoint::from_matrix(chev, xm + fd_step * field), tol);
  const ZPoint minus = embed_in_centralizer(chev, TodaPoint::from_matrix(chev, xm - fd_step * field), tol);
  const TangentVectorGxg pushed = left_trivialized_difference(
      base.g(), plus.g().matrix(), minus.g().matrix(), plus.x().matrix(), minus.x().matrix(),
      fd_step);
  const TangentVectorGxg ham = hamiltonian_field(base, i);
  const double diff = std::hypot((pushed.y - ham.y).norm(), (pushed.z - ham.z).norm());
  rep.infinitesimal = diff / (1.0 + ham.y.norm());
  return rep;
}

TodaPoint integrate_toda_rk4(const ChevalleyData& chev, int i, const TodaPoint& x0, double t_end,
                             double step, const Tolerances& tol) {
  const auto steps = static_cast<long>(std::llround(std::abs(t_end) / step));
  const double h = steps > 0 ? t_end / static_cast<double>(steps) : 0.0;
  const auto field = [&](const CMatrix& m) {
    return toda_vector_field(chev, i, TodaPoint::from_matrix(chev, m), tol.fd_step, tol).matrix();
  };
  CMatrix x = x0.matrix().matrix();
  for (long k = 0; k < steps; ++k) {
    const CMatrix k1 = field(x);
    const CMatrix k2 = field(x + 0.5 * h * k1);
    const CMatrix k3 = field(x + 0.5 * h * k2);
    const CMatrix k4 = field(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return TodaPoint::from_matrix(chev, x);
}

double toda_distance(const TodaPoint& a, const TodaPoint& b) {
  return (a.matrix().matrix() - b.matrix().matrix()).norm() / (1.0 + a.matrix().norm());
}

double spectrum_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const cplx& v : a) {
    auto best = std::min_element(b.begin(), b.end(), [&](const cplx& p, const cplx& q) {
      return std::abs(p - v) < std::abs(q - v);
    });
    worst = std::max(worst, std::abs(*best - v));
    b.erase(best);
  }
  return worst;
}

}  // namespace zlab
