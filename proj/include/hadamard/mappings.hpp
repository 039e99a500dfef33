#ifndef HADAMARD_MAPPINGS_HPP
#define HADAMARD_MAPPINGS_HPP

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hadamard/convex.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/sampling.hpp"

namespace hadamard {

class Mapping;
using MappingPtr = std::shared_ptr<const Mapping>;

/// Self-mapping of a model space. Evaluation is pure and thread-safe.
class Mapping {
public:
  virtual ~Mapping() = default;

  virtual Point apply(const Point& x) const = 0;
  virtual std::string describe() const = 0;

  /// A fixed point when one is structurally known (projection targets, prox
  /// anchors); used to seed Fejer and quasinonexpansiveness checks.
  virtual std::optional<Point> fixed_point_hint() const { return std::nullopt; }

  const SpacePtr& space() const { return space_; }

protected:
  explicit Mapping(SpacePtr space) : space_(std::move(space)) {}
  SpacePtr space_;
};

/// Nearest-point projection onto a nonempty closed convex set. Closed forms
/// for every shipped set variant; fixes each point of the set.
Point project(const ConvexSet& set, const Point& x);

/// Proximity mapping x -> argmin_y { f(y) + 1/2 d(y, x)^2 }.
///
/// Closed forms: HalfSqDistTo and DistTo move along the geodesic toward the
/// anchor, IndicatorOf reduces to project, AffineEuclidean shifts by the
/// negated gradient, WeightedFrechet solves the weighted mean (Euclidean),
/// an exact per-edge quadratic (trees), or an inner search to 1e-12 on the
/// objective (hyperbolic). Throws std::runtime_error when the inner solver
/// cannot certify its tolerance.
Point prox(const ConvexFunction& f, const Point& x);

/// Minimum over the sample list of f(y) - f(z) - <->zx, ->zy>. Nonnegative
/// (to solver tolerance) exactly when [->zx] lies in the subdifferential of
/// f at z, which certifies z = prox(f, x) through the resolvent identity.
double resolvent_inclusion_slack(const ConvexFunction& f, const Point& x, const Point& z,
                                 const std::vector<Point>& samples);

MappingPtr make_identity(SpacePtr space);
MappingPtr make_projection(ConvexSet set);
MappingPtr make_prox(ConvexFunction f);

/// Two-branch glue: x -> inner(x) on the closed ball of radius `delta`
/// around `anchor` (boundary included), outer(x) elsewhere. Construction
/// requires delta >= (1 + 2 sqrt(2)) r, where r bounds both images around
/// the anchor; the images themselves are only checkable on samples, see
/// glued_image_bound_slack.
MappingPtr make_glued(MappingPtr inner, MappingPtr outer, Point anchor, double r, double delta);

MappingPtr make_composition(std::vector<MappingPtr> maps);

class GluedMapping final : public Mapping {
public:
  GluedMapping(MappingPtr inner, MappingPtr outer, Point anchor, double r, double delta);

  Point apply(const Point& x) const override;
  std::string describe() const override;

  const Point& anchor() const { return anchor_; }
  double image_radius() const { return r_; }
  double delta() const { return delta_; }
  const MappingPtr& inner() const { return inner_; }
  const MappingPtr& outer() const { return outer_; }

private:
  MappingPtr inner_;
  MappingPtr outer_;
  Point anchor_;
  double r_;
  double delta_;
};

/// r - max_i d(anchor, U(sample_i)) over both branches; negative means a
/// sampled image escaped the certified ball.
double glued_image_bound_slack(const GluedMapping& glued, const std::vector<Point>& samples);

/// Worst-case slack of one inequality over the sampled pairs, with the
/// attaining pair.
struct PropertyStat {
  double worst_slack{std::numeric_limits<double>::infinity()};
  std::pair<Point, Point> witness;
  bool pass{true};
};

/// Sampled verdicts for the nonexpansive / metrically nonspreading /
/// firmly metrically nonspreading / quasinonexpansive inequalities.
///
/// Slacks are minima over sample pairs of RHS - LHS of each defining
/// inequality; a property passes when its worst slack stays above
/// -tolerance. The two bracket residuals are algebraic identities and stay
/// at roundoff for any mapping whatsoever:
///  - bracket_residual: (<->(Tx)(Ty), ->xy> - d(Tx,Ty)^2) - fmns_slack / 2
///  - reform_residual: the quasilinearized rewrite of the nonspreading gap
struct ClassificationReport {
  int n_samples{0};
  double tolerance{1e-7};
  PropertyStat mns;
  PropertyStat fmns;
  PropertyStat nonexpansive;
  std::optional<PropertyStat> quasi;
  double max_bracket_residual{0.0};
  double max_reform_residual{0.0};
  double image_radius{0.0};          // max distance of an image from the first image
  double image_diameter_bound{0.0};  // 2 * image_radius
};

struct ClassifyOptions {
  double tolerance{1e-7};
  int jobs{1};
  bool adversarial{true};  // straddle the glue boundary when T is glued
};

/// Evaluates the defining inequalities of the mapping classes on n seeded
/// random pairs (plus boundary-adversarial pairs for glued mappings) and
/// reports worst slacks, witnesses, and verdicts. The reduction is a
/// deterministic min regardless of the worker count.
ClassificationReport classify(const Mapping& mapping, const RegionSampler& sampler,
                              std::uint64_t seed, int n,
                              const std::optional<Point>& fixed_point,
                              const ClassifyOptions& options = {});

}  // namespace hadamard

#endif  // HADAMARD_MAPPINGS_HPP
