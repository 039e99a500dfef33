#ifndef HADAMARD_CONVEX_HPP
#define HADAMARD_CONVEX_HPP

#include <memory>
#include <utility>
#include <vector>

#include "hadamard/geometry.hpp"
#include "hadamard/spaces.hpp"

namespace hadamard {

/// Closed convex subsets of the model spaces.
///
/// Variants: metric balls and geodesic segments (any space), subtrees
/// (trees), halfspaces {x : <normal, x> <= offset} (Euclidean). A segment
/// with equal endpoints is a singleton and is allowed. Hyperbolic sets are
/// restricted to balls and segments, which keep closed-form projections.
class ConvexSet {
public:
  enum class Kind { Ball, GeodesicSegment, Subtree, HalfspaceEuclidean };

  static ConvexSet ball(SpacePtr space, Point center, double radius);
  static ConvexSet segment(SpacePtr space, Point a, Point b);
  static ConvexSet subtree(SpacePtr space, std::vector<int> vertices);
  static ConvexSet halfspace(SpacePtr space, std::vector<double> normal, double offset);

  Kind kind() const { return kind_; }
  const SpacePtr& space() const { return space_; }

  const Point& center() const { return center_; }
  double radius() const { return radius_; }
  const Point& segment_a() const { return a_; }
  const Point& segment_b() const { return b_; }
  const std::vector<int>& subtree_vertices() const { return vertices_; }
  const std::vector<double>& halfspace_normal() const { return normal_; }
  double halfspace_offset() const { return offset_; }

  /// A point of the set, used for seeding searches.
  Point any_point() const;

private:
  ConvexSet(Kind kind, SpacePtr space) : kind_(kind), space_(std::move(space)) {}

  Kind kind_;
  SpacePtr space_;
  Point center_;
  double radius_{0.0};
  Point a_, b_;
  std::vector<int> vertices_;
  std::vector<double> normal_;
  double offset_{0.0};
};

/// Signed (or one-sided) membership indicator: <= 0 exactly on the set,
/// positive outside, continuous in x. Balls and halfspaces are genuinely
/// signed; segments and subtrees report the distance to the set.
double membership_slack(const ConvexSet& set, const Point& x);

/// Proper lower semicontinuous convex functions on a model space.
///
/// Variants and conventions:
///  - HalfSqDistTo(a, w):    f(x) = (w/2) d(x, a)^2
///  - WeightedFrechet(a, w): f(x) = sum_i w_i d(x, a_i)^2   (no 1/2 factor)
///  - IndicatorOf(C):        0 on C, +infinity outside
///  - DistTo(a, w):          f(x) = w d(x, a)
///  - AffineEuclidean(g, c): f(x) = <g, x> + c              (Euclidean only)
class ConvexFunction {
public:
  enum class Kind { HalfSqDistTo, WeightedFrechet, IndicatorOf, DistTo, AffineEuclidean };

  static ConvexFunction half_sq_dist(SpacePtr space, Point anchor, double weight);
  static ConvexFunction weighted_frechet(SpacePtr space,
                                         std::vector<std::pair<Point, double>> anchors);
  static ConvexFunction indicator(ConvexSet set);
  static ConvexFunction dist_to(SpacePtr space, Point anchor, double weight);
  static ConvexFunction affine_euclidean(SpacePtr space, std::vector<double> gradient,
                                         double constant);

  Kind kind() const { return kind_; }
  const SpacePtr& space() const { return space_; }

  const Point& anchor() const { return anchor_; }
  double weight() const { return weight_; }
  const std::vector<std::pair<Point, double>>& anchors() const { return anchors_; }
  const ConvexSet& set() const { return *set_; }
  const std::vector<double>& gradient() const { return gradient_; }
  double constant() const { return constant_; }

private:
  ConvexFunction(Kind kind, SpacePtr space) : kind_(kind), space_(std::move(space)) {}

  Kind kind_;
  SpacePtr space_;
  Point anchor_;
  double weight_{1.0};
  std::vector<std::pair<Point, double>> anchors_;
  std::shared_ptr<const ConvexSet> set_;
  std::vector<double> gradient_;
  double constant_{0.0};
};

/// Value of f at x; +infinity for indicator functions outside their set
/// (membership slack above 1e-9).
double eval_function(const ConvexFunction& f, const Point& x);

namespace detail_convex {
/// Closed-form nearest point of a convex set. Shared by membership_slack
/// and the metric projection mapping.
Point nearest_point(const ConvexSet& set, const Point& x);
}  // namespace detail_convex

}  // namespace hadamard

#endif  // HADAMARD_CONVEX_HPP
