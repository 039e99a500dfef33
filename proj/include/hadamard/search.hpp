#ifndef HADAMARD_SEARCH_HPP
#define HADAMARD_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "hadamard/geometry.hpp"

namespace hadamard {

struct SearchOptions {
  double objective_tol{1e-10};  // round improvement below this shrinks the step radius
  int max_rounds{60};
  int golden_iters{60};
  int random_targets{6};
  int max_anchor_targets{24};
  std::uint64_t seed{0x5851f42d4c957f2dull};
};

struct SearchResult {
  Point minimizer;
  double value{0.0};
  double refinement_residual{0.0};  // objective improvement of the final improving round
  bool converged{false};            // radius shrank to the floor before the round cap
};

/// Derivative-free minimizer of a geodesically convex objective.
///
/// Seeds candidates from the anchor points and their pairwise midpoints,
/// then alternates golden-section line searches along geodesics toward the
/// anchors, a local tangent/edge frame, and seeded random points of the
/// anchor hull. The radius of the local frame shrinks when a round stops
/// improving. Deterministic for a fixed seed.
SearchResult minimize_over_space(const Space& space, const std::vector<Point>& anchors,
                                 const std::function<double(const Point&)>& objective,
                                 const SearchOptions& options = {});

}  // namespace hadamard

#endif  // HADAMARD_SEARCH_HPP
