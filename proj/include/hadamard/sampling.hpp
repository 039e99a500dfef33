#ifndef HADAMARD_SAMPLING_HPP
#define HADAMARD_SAMPLING_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "hadamard/geometry.hpp"
#include "hadamard/spaces.hpp"

namespace hadamard {

/// Deterministic random stream. Wraps a fixed 64-bit generator and converts
/// to doubles in-house so that identical seeds give identical streams on
/// every platform and standard library.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next_u64();

  /// Uniform in [0, 1).
  double uniform();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller.
  double normal();

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

private:
  std::uint64_t state_;
};

/// Seeded sampler for a bounded region of a model space. For the vector
/// models the region is the metric ball B(center, radius); for trees it is
/// either the whole tree (radius <= 0) or the ball around `center`.
struct RegionSampler {
  SpacePtr space;
  Point center;
  double radius{1.0};

  Point sample(RandomStream& rng) const;
  std::vector<Point> sample_points(std::uint64_t seed, int n) const;
  std::vector<std::pair<Point, Point>> sample_pairs(std::uint64_t seed, int n) const;
};

/// Whole-space default region at desk scale: radius-5 ball at the origin for
/// Euclidean, radius-3 ball at the base point for hyperbolic, the full tree
/// otherwise.
RegionSampler default_region(const SpacePtr& space);

}  // namespace hadamard

#endif  // HADAMARD_SAMPLING_HPP
