#pragma once

// Reproducible random inputs. The generator is SplitMix64 run in counter
// mode: output k of stream (seed, stream_id) is mix64(key + k * golden), with
// key derived from seed and stream_id by the same mixer. Every sample index
// gets its own stream, so results do not depend on evaluation order or on the
// number of worker threads.

#include <cstdint>

#include "zlab/centralizer.hpp"
#include "zlab/toda.hpp"

namespace zlab {

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Re and Im independently uniform in [-1, 1).
  cplx unit_box();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z);

/// Random complex matrix with entries in the unit box.
CMatrix random_matrix(CounterRng& rng, int n);
/// Traceless projection of random_matrix.
AlgebraElement random_algebra(CounterRng& rng, int n);
/// Random algebra element rescaled to Frobenius norm `radius` * u, u uniform in (0, 1].
AlgebraElement random_algebra_in_ball(CounterRng& rng, int n, double radius);
/// exp of a random algebra element of norm <= 1.
GroupElement random_group_near_identity(CounterRng& rng, int n);
CMatrix random_upper_unitriangular(CounterRng& rng, int n);
/// xi + random upper triangular (diagonal traceless).
AlgebraElement random_xi_plus_b(CounterRng& rng, const ChevalleyData& chev);
CVector random_unit_box_vector(CounterRng& rng, int size);
/// xi + sum s_k eta^k / ||eta^k|| with s_k in the unit box.
AlgebraElement random_section_point(CounterRng& rng, const ChevalleyData& chev);
/// Traceless diagonal and nonzero root coordinates, entries in the unit box.
TodaPoint random_toda_point(CounterRng& rng, const ChevalleyData& chev);
/// Rejection-samples random_toda_point until it lies in V. Throws
/// std::runtime_error after max_tries misses.
TodaPoint random_domain_point(CounterRng& rng, const ChevalleyData& chev, int max_tries = 1000,
                              const Tolerances& tol = {});
/// (random_stabilizer_element(x), x) for a random section point x.
ZPoint random_z_point(CounterRng& rng, const ChevalleyData& chev);
/// exp(sum c_i grad f_i(x) / ||grad f_i(x)||) for c in the unit box: a
/// random element of G_x when x is regular.
GroupElement random_stabilizer_element(CounterRng& rng, const AlgebraElement& x);

}  // namespace zlab
