#ifndef HADAMARD_GEOMETRY_HPP
#define HADAMARD_GEOMETRY_HPP

#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hadamard {

enum class SpaceTag { Euclidean, Hyperbolic, Tree };

std::string to_string(SpaceTag tag);

/// A point of one of the three model spaces.
///
/// The payload depends on the tag:
///  - Euclidean: `coords` holds an n-vector.
///  - Hyperbolic: `coords` holds an (n+1)-vector on the upper sheet of the
///    hyperboloid, i.e. <x,x>_Minkowski = -1 and coords.back() > 0.
///  - Tree: `edge` and `offset` locate the point along an edge; offsets at
///    an endpoint are canonicalized to the vertex representation (smallest
///    incident edge id).
struct Point {
  SpaceTag tag{SpaceTag::Euclidean};
  std::vector<double> coords;
  int edge{-1};
  double offset{0.0};

  static Point euclidean(std::vector<double> x);
  static Point hyperboloid(std::vector<double> x);
  static Point tree_locus(int edge, double offset);
};

/// Ordered pair of points, written ->xy with tail x and head y.
struct Pair {
  Point tail;
  Point head;
};

/// Geodesic-space handle: a metric together with geodesic interpolation.
///
/// All operations are pure; instances are immutable after construction and
/// safe to share across threads.
class Space {
public:
  virtual ~Space() = default;

  SpaceTag tag() const { return tag_; }

  /// Metric distance. Symmetric by construction (arguments are ordered
  /// canonically before evaluation), zero iff the canonical representations
  /// coincide.
  double dist(const Point& x, const Point& y) const;

  /// Point at parameter alpha along the geodesic from x to y, so that
  /// d(x, m) = alpha * d(x, y). alpha = 0 and alpha = 1 return the
  /// canonicalized endpoints exactly.
  Point combine(const Point& x, const Point& y, double alpha) const;

  /// Normal form of a point (hyperboloid renormalization, tree vertex
  /// canonicalization). Throws std::domain_error on malformed payloads.
  virtual Point canonicalize(Point p) const = 0;

  /// Validates that p belongs to this space; throws std::domain_error.
  virtual void validate(const Point& p) const = 0;

  /// Points at distance `radius` from p along a local frame of directions
  /// (coordinate/tangent basis for the vector models, incident edge
  /// directions for trees). Used by derivative-free minimizers.
  virtual std::vector<Point> frame_neighbors(const Point& p, double radius) const = 0;

protected:
  explicit Space(SpaceTag tag) : tag_(tag) {}

  virtual double dist_impl(const Point& x, const Point& y) const = 0;
  virtual Point combine_impl(const Point& x, const Point& y, double alpha) const = 0;

  /// Strict ordering of canonical payloads, used to evaluate the metric in
  /// a fixed argument order so that symmetry is exact.
  virtual bool payload_less(const Point& x, const Point& y) const = 0;

private:
  SpaceTag tag_;
};

using SpacePtr = std::shared_ptr<const Space>;

/// Quasilinearization bracket <->xy, ->zw> = 1/2 (d(x,w)^2 + d(y,z)^2
/// - d(x,z)^2 - d(y,w)^2). Agrees with <x-y, z-w> in the Euclidean model.
double quasi_inner(const Space& space, const Pair& xy, const Pair& zw);

/// Residuals of the four algebraic bracket identities evaluated at the
/// quintuple (x, y, z, w, p):
///   [0] symmetry        <->xy,->zw> - <->zw,->xy>
///   [1] antisymmetry    <->xy,->zw> + <->yx,->zw>
///   [2] splitting       <->xp,->zw> + <->py,->zw> - <->xy,->zw>
///   [3] law of cosines  d(x,y)^2 - d(x,z)^2 - d(z,y)^2 - 2<->xz,->zy>
/// All four vanish identically; anything beyond roundoff indicates a broken
/// metric.
std::array<double, 4> quasi_identity_residuals(const Space& space, const Point& x,
                                               const Point& y, const Point& z,
                                               const Point& w, const Point& p);

/// Cauchy-Schwarz slack d(x,y) d(z,w) - |<->xy,->zw>|. Nonnegative (up to
/// roundoff) exactly when the space satisfies the CAT(0) inequality.
double cauchy_schwarz_slack(const Space& space, const Pair& xy, const Pair& zw);

/// Slacks of the two geodesic convexity inequalities at (x, y, z, alpha):
///   [0] (1-a) d(z,x)   + a d(z,y)   - d(z, m)
///   [1] (1-a) d(z,x)^2 + a d(z,y)^2 - a(1-a) d(x,y)^2 - d(z, m)^2
/// with m = combine(x, y, a). Both are nonnegative in a CAT(0) space; the
/// second is identically zero in the Euclidean model.
std::array<double, 2> convexity_slacks(const Space& space, const Point& x,
                                       const Point& y, const Point& z, double alpha);

namespace detail {
void require_tag(const Space& space, const Point& p, const char* where);
void require_alpha(double alpha, const char* where);
}  // namespace detail

}  // namespace hadamard

#endif  // HADAMARD_GEOMETRY_HPP
