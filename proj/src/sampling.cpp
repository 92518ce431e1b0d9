#include "zlab/sampling.hpp"

#include <stdexcept>

namespace zlab {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed) ^ (stream * kGolden + 0x632BE59BD9B4E019ULL))) {}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double CounterRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

cplx CounterRng::unit_box() {
  const double re = uniform(-1.0, 1.0);
  const double im = uniform(-1.0, 1.0);
  return {re, im};
}

CMatrix random_matrix(CounterRng& rng, int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = rng.unit_box();
  }
  return m;
}

AlgebraElement random_algebra(CounterRng& rng, int n) {
  return AlgebraElement::project(random_matrix(rng, n));
}

AlgebraElement random_algebra_in_ball(CounterRng& rng, int n, double radius) {
  const AlgebraElement x = random_algebra(rng, n);
  const double scale = radius * (1.0 - rng.uniform()) / std::max(x.norm(), 1e-300);
  return cplx(scale) * x;
}

GroupElement random_group_near_identity(CounterRng& rng, int n) {
  return group_exp(random_algebra_in_ball(rng, n, 1.0));
}

CMatrix random_upper_unitriangular(CounterRng& rng, int n) {
  CMatrix u = CMatrix::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) u(i, j) = rng.unit_box();
  }
  return u;
}

AlgebraElement random_xi_plus_b(CounterRng& rng, const ChevalleyData& chev) {
  const int n = chev.n;
  CMatrix m = chev.xi.matrix();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m(i, j) = rng.unit_box();
  }
  return AlgebraElement::project(m);
}

CVector random_unit_box_vector(CounterRng& rng, int size) {
  CVector v(size);
  for (int k = 0; k < size; ++k) v(k) = rng.unit_box();
  return v;
}

AlgebraElement random_section_point(CounterRng& rng, const ChevalleyData& chev) {
  CVector coords = random_unit_box_vector(rng, chev.r);
  for (int k = 0; k < chev.r; ++k) coords(k) /= chev.centralizer_eta[k].norm();
  return section_point(chev, coords);
}

TodaPoint random_toda_point(CounterRng& rng, const ChevalleyData& chev) {
  CVector diag = random_unit_box_vector(rng, chev.n);
  diag.array() -= diag.sum() / static_cast<double>(chev.n);
  CVector roots = random_unit_box_vector(rng, chev.r);
  for (Eigen::Index k = 0; k < roots.size(); ++k) {
    while (std::abs(roots(k)) <= 1e-13) roots(k) = rng.unit_box();
  }
  return TodaPoint(std::move(diag), std::move(roots));
}

TodaPoint random_domain_point(CounterRng& rng, const ChevalleyData& chev, int max_tries,
                              const Tolerances& tol) {
  for (int k = 0; k < max_tries; ++k) {
    TodaPoint p = random_toda_point(rng, chev);
    if (in_embedding_domain(chev, p, tol)) return p;
  }
  throw std::runtime_error("no sample in V after " + std::to_string(max_tries) + " tries");
}

GroupElement random_stabilizer_element(CounterRng& rng, const AlgebraElement& x) {
  const int r = x.dim() - 1;
  CMatrix y = CMatrix::Zero(x.dim(), x.dim());
  for (int i = 1; i <= r; ++i) {
    const AlgebraElement grad = invariant_gradient(x, i);
    y += (rng.unit_box() / grad.norm()) * grad.matrix();
  }
  return GroupElement(mat_exp(y));
}

ZPoint random_z_point(CounterRng& rng, const ChevalleyData& chev) {
  AlgebraElement x = random_section_point(rng, chev);
  GroupElement g = random_stabilizer_element(rng, x);
  return ZPoint::make(chev, std::move(g), std::move(x));
}

}  // namespace zlab
