#include "zlab/lie_core.hpp"

#include <cmath>
#include <string>

#include "zlab/errors.hpp"

namespace zlab {

namespace {

void require_same_dim(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) {
    throw DimensionMismatch("sl_" + std::to_string(a.rows()) + " vs sl_" +
                            std::to_string(b.rows()));
  }
}

CMatrix unit(int n, int i, int j) {
  CMatrix m = CMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

AlgebraElement::AlgebraElement(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw InvalidElement("algebra element must be square");
  if (m_.rows() < kMinRank) throw InvalidElement("algebra element needs n >= 2");
  if (!m_.allFinite()) throw InvalidElement("algebra element has non-finite entries");
  if (std::abs(m_.trace()) > 1e-12 * m_.norm()) {
    throw InvalidElement("algebra element is not traceless");
  }
}

AlgebraElement AlgebraElement::project(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < kMinRank) {
    throw InvalidElement("algebra element must be square with n >= 2");
  }
  if (!m.allFinite()) throw InvalidElement("algebra element has non-finite entries");
  const auto n = m.rows();
  CMatrix out = m;
  out.diagonal().array() -= m.trace() / static_cast<double>(n);
  return AlgebraElement(std::move(out), Unchecked{});
}

AlgebraElement AlgebraElement::zero(int n) {
  return AlgebraElement(CMatrix::Zero(n, n), Unchecked{});
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  require_same_dim(m_, o.m_);
  m_ += o.m_;
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  require_same_dim(m_, o.m_);
  m_ -= o.m_;
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(cplx c) {
  m_ *= c;
  return *this;
}

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
AlgebraElement operator-(const AlgebraElement& a) { return cplx(-1.0) * a; }
AlgebraElement operator*(cplx c, AlgebraElement a) { return a *= c; }

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_dim(x.matrix(), y.matrix());
  return AlgebraElement::project(commutator(x.matrix(), y.matrix()));
}

GroupElement::GroupElement(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < kMinRank) {
    throw InvalidElement("group element must be square with n >= 2");
  }
  if (!m_.allFinite()) throw InvalidElement("group element has non-finite entries");
  // Geometric mean of the singular values against the largest one.
  const double mean_sv = std::pow(std::abs(determinant(m_)), 1.0 / static_cast<double>(m_.rows()));
  if (!(mean_sv > 1e-12 * m_.norm())) {
    throw InvalidElement("group element is singular");
  }
}

GroupElement GroupElement::identity(int n) { return GroupElement(CMatrix::Identity(n, n)); }

GroupElement GroupElement::inverse() const { return GroupElement(m_.partialPivLu().inverse()); }

CMatrix GroupElement::adjoint(const CMatrix& x) const {
  // g x g^{-1} = (g^{-T} (g x)^T)^T; solve instead of forming the inverse.
  const CMatrix gx = m_ * x;
  return m_.transpose().partialPivLu().solve(gx.transpose()).transpose();
}

AlgebraElement GroupElement::adjoint(const AlgebraElement& x) const {
  require_same_dim(m_, x.matrix());
  return AlgebraElement::project(adjoint(x.matrix()));
}

bool GroupElement::equivalent(const GroupElement& other, double tol) const {
  require_same_dim(m_, other.m_);
  const CMatrix q = m_ * other.m_.partialPivLu().inverse();
  const auto n = q.rows();
  const cplx c = q.trace() / static_cast<double>(n);
  const CMatrix off = q - c * CMatrix::Identity(n, n);
  return off.norm() <= tol * q.norm();
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  require_same_dim(a.matrix(), b.matrix());
  return GroupElement(a.matrix() * b.matrix());
}

GroupElement group_exp(const AlgebraElement& x) { return GroupElement(mat_exp(x.matrix())); }

ChevalleyData build_chevalley(int n) {
  if (n < kMinRank || n > kMaxRank) {
    throw UnsupportedRank("n = " + std::to_string(n) + " outside [2, 8]");
  }
  ChevalleyData d;
  d.n = n;
  d.r = n - 1;
  CMatrix xi = CMatrix::Zero(n, n);
  CMatrix eta = CMatrix::Zero(n, n);
  CMatrix h = CMatrix::Zero(n, n);
  for (int i = 0; i < d.r; ++i) {
    d.e_plus.emplace_back(unit(n, i, i + 1));
    d.e_minus.emplace_back(unit(n, i + 1, i));
    // [xi, eta] = h forces c_k - c_{k-1} = -(2k - n - 1); with c_0 = c_n = 0
    // this telescopes to c_k = k (n - k).
    const int k = i + 1;
    d.c.push_back(k * (n - k));
    xi(i + 1, i) = 1.0;
    eta(i, i + 1) = static_cast<double>(d.c.back());
  }
  for (int k = 1; k <= n; ++k) h(k - 1, k - 1) = static_cast<double>(2 * k - n - 1);
  d.xi = AlgebraElement(xi);
  d.eta = AlgebraElement(eta);
  d.h = AlgebraElement(h);
  CMatrix power = CMatrix::Identity(n, n);
  for (int k = 1; k <= d.r; ++k) {
    power = power * eta;
    d.centralizer_eta.emplace_back(power);
  }
  return d;
}

cplx pairing(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_dim(x.matrix(), y.matrix());
  return (x.matrix().transpose().array() * y.matrix().array()).sum();
}

int sl_dimension(int n) { return n * n - 1; }

CVector sl_coordinates(const CMatrix& m) {
  const auto n = m.rows();
  CVector c(n * n - 1);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j) c(k++) = m(i, j);
    }
  }
  // diag(d) = sum_k a_k (e_k - e_{k+1}) gives a_k = d_1 + ... + d_k.
  cplx acc = 0.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    acc += m(i, i);
    c(k++) = acc;
  }
  return c;
}

AlgebraElement from_sl_coordinates(int n, const CVector& coords) {
  if (coords.size() != sl_dimension(n)) throw DimensionMismatch("sl_n coordinate length");
  CMatrix m = CMatrix::Zero(n, n);
  Eigen::Index k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) m(i, j) = coords(k++);
    }
  }
  for (int i = 0; i + 1 < n; ++i) {
    m(i, i) += coords(k);
    m(i + 1, i + 1) -= coords(k);
    ++k;
  }
  return AlgebraElement::project(m);
}

CMatrix ad_action(const AlgebraElement& x) {
  const int n = x.dim();
  const int dim = sl_dimension(n);
  CMatrix ad(dim, dim);
  CVector e = CVector::Zero(dim);
  for (int k = 0; k < dim; ++k) {
    e.setZero();
    e(k) = 1.0;
    const CMatrix b = from_sl_coordinates(n, e).matrix();
    ad.col(k) = sl_coordinates(commutator(x.matrix(), b));
  }
  return ad;
}

std::vector<AlgebraElement> centralizer_basis(const AlgebraElement& x, double tol) {
  const CMatrix ker = kernel_basis(ad_action(x), tol);
  std::vector<AlgebraElement> out;
  out.reserve(static_cast<std::size_t>(ker.cols()));
  for (Eigen::Index k = 0; k < ker.cols(); ++k) {
    out.push_back(from_sl_coordinates(x.dim(), ker.col(k)));
  }
  return out;
}

TriangularParts project_triangular(const AlgebraElement& x) {
  const CMatrix& m = x.matrix();
  const auto n = m.rows();
  CMatrix diag = CMatrix::Zero(n, n);
  diag.diagonal() = m.diagonal();
  CMatrix upper = m.triangularView<Eigen::StrictlyUpper>();
  CMatrix lower = m.triangularView<Eigen::StrictlyLower>();
  return {AlgebraElement::project(diag), AlgebraElement::project(upper),
          AlgebraElement::project(lower)};
}

cplx root_char(const GroupElement& t, int i) {
  const CMatrix& m = t.matrix();
  const int n = t.dim();
  if (i < 1 || i >= n) throw std::out_of_range("simple root index out of range");
  CMatrix off = m;
  off.diagonal().setZero();
  if (off.norm() > 1e-10 * m.norm()) throw NotInTorus("group element is not diagonal");
  return m(i - 1, i - 1) / m(i, i);
}

CVector section_coordinates(const ChevalleyData& chev, const CMatrix& x, double* residual) {
  const CMatrix d = x - chev.xi.matrix();
  CVector coords(chev.r);
  CMatrix fitted = CMatrix::Zero(chev.n, chev.n);
  for (int k = 0; k < chev.r; ++k) {
    const CMatrix& b = chev.centralizer_eta[k].matrix();
    coords(k) = (b.array().conjugate() * d.array()).sum() / b.squaredNorm();
    fitted += coords(k) * b;
  }
  if (residual != nullptr) *residual = (d - fitted).norm() / (1.0 + x.norm());
  return coords;
}

bool on_section(const ChevalleyData& chev, const AlgebraElement& x, double tol) {
  double res = 0.0;
  section_coordinates(chev, x.matrix(), &res);
  return res <= tol;
}

AlgebraElement section_point(const ChevalleyData& chev, const CVector& coords) {
  if (coords.size() != chev.r) throw DimensionMismatch("section coordinate length");
  CMatrix m = chev.xi.matrix();
  for (int k = 0; k < chev.r; ++k) m += coords(k) * chev.centralizer_eta[k].matrix();
  return AlgebraElement(m);
}

}  // namespace zlab
