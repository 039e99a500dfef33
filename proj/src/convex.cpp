#include "hadamard/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace hadamard {

ConvexSet ConvexSet::ball(SpacePtr space, Point center, double radius) {
  if (!(radius > 0.0)) throw std::domain_error("ConvexSet::ball: radius must be positive");
  ConvexSet s(Kind::Ball, space);
  s.center_ = space->canonicalize(std::move(center));
  s.radius_ = radius;
  return s;
}

ConvexSet ConvexSet::segment(SpacePtr space, Point a, Point b) {
  ConvexSet s(Kind::GeodesicSegment, space);
  s.a_ = space->canonicalize(std::move(a));
  s.b_ = space->canonicalize(std::move(b));
  return s;
}

ConvexSet ConvexSet::subtree(SpacePtr space, std::vector<int> vertices) {
  if (space->tag() != SpaceTag::Tree) {
    throw std::domain_error("ConvexSet::subtree: requires a tree space");
  }
  if (vertices.empty()) throw std::domain_error("ConvexSet::subtree: empty vertex set");
  const auto& tree = static_cast<const TreeSpace&>(*space);
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::set<int> members(vertices.begin(), vertices.end());
  for (int v : vertices) {
    if (v < 0 || v >= tree.vertex_count()) {
      throw std::domain_error("ConvexSet::subtree: vertex out of range");
    }
  }
  // Path closure <=> the induced subgraph is connected.
  std::vector<int> stack{vertices.front()};
  std::set<int> seen{vertices.front()};
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    for (int e = 0; e < tree.edge_count(); ++e) {
      const auto& ed = tree.edge(e);
      int nb = -1;
      if (ed.u == cur) nb = ed.v;
      if (ed.v == cur) nb = ed.u;
      if (nb >= 0 && members.count(nb) && !seen.count(nb)) {
        seen.insert(nb);
        stack.push_back(nb);
      }
    }
  }
  if (seen.size() != members.size()) {
    throw std::domain_error("ConvexSet::subtree: vertex set is not closed under paths");
  }
  ConvexSet s(Kind::Subtree, space);
  s.vertices_ = std::move(vertices);
  return s;
}

ConvexSet ConvexSet::halfspace(SpacePtr space, std::vector<double> normal, double offset) {
  if (space->tag() != SpaceTag::Euclidean) {
    throw std::domain_error("ConvexSet::halfspace: requires a Euclidean space");
  }
  const auto& eu = static_cast<const EuclideanSpace&>(*space);
  if (static_cast<int>(normal.size()) != eu.dimension()) {
    throw std::domain_error("ConvexSet::halfspace: normal has wrong dimension");
  }
  double n2 = 0.0;
  for (double c : normal) n2 += c * c;
  if (!(n2 > 0.0)) throw std::domain_error("ConvexSet::halfspace: zero normal");
  ConvexSet s(Kind::HalfspaceEuclidean, space);
  s.normal_ = std::move(normal);
  s.offset_ = offset;
  return s;
}

Point ConvexSet::any_point() const {
  switch (kind_) {
    case Kind::Ball: return center_;
    case Kind::GeodesicSegment: return a_;
    case Kind::Subtree:
      return static_cast<const TreeSpace&>(*space_).vertex_point(vertices_.front());
    case Kind::HalfspaceEuclidean: {
      double n2 = 0.0;
      for (double c : normal_) n2 += c * c;
      std::vector<double> x(normal_.size());
      for (size_t i = 0; i < normal_.size(); ++i) x[i] = normal_[i] * offset_ / n2;
      return Point::euclidean(std::move(x));
    }
  }
  throw std::logic_error("ConvexSet::any_point: unknown kind");
}

namespace {

bool locus_in_subtree(const TreeSpace& tree, const std::vector<int>& members, const Point& x) {
  const int v = tree.vertex_of(x);
  if (v >= 0) return std::binary_search(members.begin(), members.end(), v);
  const auto& e = tree.edge(x.edge);
  return std::binary_search(members.begin(), members.end(), e.u) &&
         std::binary_search(members.begin(), members.end(), e.v);
}

double subtree_vertex_gap(const TreeSpace& tree, const std::vector<int>& members,
                          const Point& x) {
  double best = std::numeric_limits<double>::infinity();
  for (int v : members) best = std::min(best, tree.dist_to_vertex(x, v));
  return best;
}

// Nearest point of the segment [a, b], per space. Exact closed forms.
Point segment_nearest(const ConvexSet& seg, const Point& x) {
  const Space& sp = *seg.space();
  const Point& a = seg.segment_a();
  const Point& b = seg.segment_b();
  const double len = sp.dist(a, b);
  if (len == 0.0) return a;
  switch (sp.tag()) {
    case SpaceTag::Euclidean: {
      double num = 0.0;
      for (size_t i = 0; i < a.coords.size(); ++i) {
        num += (x.coords[i] - a.coords[i]) * (b.coords[i] - a.coords[i]);
      }
      const double t = std::clamp(num / (len * len), 0.0, 1.0);
      return sp.combine(a, b, t);
    }
    case SpaceTag::Hyperbolic: {
      // Minimize -<x, gamma(t)>_M along gamma(t) = cosh(t) a + sinh(t) v;
      // the stationary point solves tanh t = -B/A.
      const auto& hs = static_cast<const HyperbolicSpace&>(sp);
      const Point ca = sp.canonicalize(a);
      const Point cb = sp.canonicalize(b);
      const Point cx = sp.canonicalize(x);
      const double ch = std::cosh(len);
      const double sh = std::sinh(len);
      std::vector<double> v(ca.coords.size());
      for (size_t i = 0; i < v.size(); ++i) v[i] = (cb.coords[i] - ch * ca.coords[i]) / sh;
      const double A = -HyperbolicSpace::minkowski(cx.coords, ca.coords);
      const double B = -HyperbolicSpace::minkowski(cx.coords, v);
      const double ratio = std::clamp(-B / A, -1.0 + 1e-15, 1.0 - 1e-15);
      const double t = std::clamp(std::atanh(ratio), 0.0, len);
      return hs.geodesic_at(ca, cb, t);
    }
    case SpaceTag::Tree: {
      // Gromov gate point: the geodesic from x meets the path [a, b] at
      // parameter (d(x,a) - d(x,b) + L) / 2.
      const double da = sp.dist(x, a);
      const double db = sp.dist(x, b);
      const double t = std::clamp((da - db + len) / 2.0, 0.0, len);
      return sp.combine(a, b, t / len);
    }
  }
  throw std::logic_error("segment_nearest: unknown space tag");
}

// Distance from x to a hyperbolic segment. Reconstructing the nearest point
// and calling dist would put an O(1e-8) acosh noise floor on points that lie
// on the segment; the Minkowski-orthogonal component of x is stable instead.
double hyperbolic_segment_distance(const ConvexSet& seg, const Point& x) {
  const Space& sp = *seg.space();
  const Point a = sp.canonicalize(seg.segment_a());
  const Point b = sp.canonicalize(seg.segment_b());
  const Point cx = sp.canonicalize(x);
  const double len = sp.dist(a, b);
  if (len == 0.0) return sp.dist(cx, a);

  const double ch = std::cosh(len);
  const double sh = std::sinh(len);
  std::vector<double> v(a.coords.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = (b.coords[i] - ch * a.coords[i]) / sh;

  const double A = -HyperbolicSpace::minkowski(cx.coords, a.coords);
  const double B = HyperbolicSpace::minkowski(cx.coords, v);
  const double ratio = std::clamp(B / A, -1.0 + 1e-15, 1.0 - 1e-15);
  const double t = std::atanh(ratio);
  if (t <= 0.0) return sp.dist(cx, a);
  if (t >= len) return sp.dist(cx, b);

  // component of x orthogonal to span(a, v): <w,w> = sinh^2 of the distance
  std::vector<double> w(cx.coords);
  for (size_t i = 0; i < w.size(); ++i) w[i] -= A * a.coords[i] + B * v[i];
  const double ww = std::max(0.0, HyperbolicSpace::minkowski(w, w));
  return std::asinh(std::sqrt(ww));
}

}  // namespace

double membership_slack(const ConvexSet& set, const Point& x) {
  const Space& sp = *set.space();
  detail::require_tag(sp, x, "membership_slack");
  switch (set.kind()) {
    case ConvexSet::Kind::Ball:
      return sp.dist(set.center(), x) - set.radius();
    case ConvexSet::Kind::GeodesicSegment:
      if (sp.tag() == SpaceTag::Hyperbolic) return hyperbolic_segment_distance(set, x);
      return sp.dist(x, segment_nearest(set, x));
    case ConvexSet::Kind::Subtree: {
      const auto& tree = static_cast<const TreeSpace&>(sp);
      const Point c = tree.canonicalize(x);
      if (locus_in_subtree(tree, set.subtree_vertices(), c)) return 0.0;
      return subtree_vertex_gap(tree, set.subtree_vertices(), c);
    }
    case ConvexSet::Kind::HalfspaceEuclidean: {
      double s = 0.0;
      for (size_t i = 0; i < set.halfspace_normal().size(); ++i) {
        s += set.halfspace_normal()[i] * x.coords[i];
      }
      return s - set.halfspace_offset();
    }
  }
  throw std::logic_error("membership_slack: unknown kind");
}

namespace detail_convex {

Point nearest_point(const ConvexSet& set, const Point& x) {
  const Space& sp = *set.space();
  const Point cx = sp.canonicalize(x);
  switch (set.kind()) {
    case ConvexSet::Kind::Ball: {
      const double d = sp.dist(set.center(), cx);
      if (d <= set.radius()) return cx;
      return sp.combine(set.center(), cx, set.radius() / d);
    }
    case ConvexSet::Kind::GeodesicSegment:
      return segment_nearest(set, cx);
    case ConvexSet::Kind::Subtree: {
      const auto& tree = static_cast<const TreeSpace&>(sp);
      if (locus_in_subtree(tree, set.subtree_vertices(), cx)) return cx;
      int gate = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int v : set.subtree_vertices()) {
        const double d = tree.dist_to_vertex(cx, v);
        if (d < best) {
          best = d;
          gate = v;
        }
      }
      return tree.vertex_point(gate);
    }
    case ConvexSet::Kind::HalfspaceEuclidean: {
      const auto& n = set.halfspace_normal();
      double nx = 0.0, n2 = 0.0;
      for (size_t i = 0; i < n.size(); ++i) {
        nx += n[i] * cx.coords[i];
        n2 += n[i] * n[i];
      }
      const double viol = nx - set.halfspace_offset();
      if (viol <= 0.0) return cx;
      std::vector<double> out(cx.coords);
      for (size_t i = 0; i < n.size(); ++i) out[i] -= viol * n[i] / n2;
      return Point::euclidean(std::move(out));
    }
  }
  throw std::logic_error("nearest_point: unknown kind");
}

}  // namespace detail_convex

// ---------------------------------------------------------------------------
// ConvexFunction
// ---------------------------------------------------------------------------

ConvexFunction ConvexFunction::half_sq_dist(SpacePtr space, Point anchor, double weight) {
  if (!(weight > 0.0)) throw std::domain_error("ConvexFunction: weight must be positive");
  ConvexFunction f(Kind::HalfSqDistTo, space);
  f.anchor_ = space->canonicalize(std::move(anchor));
  f.weight_ = weight;
  return f;
}

ConvexFunction ConvexFunction::weighted_frechet(SpacePtr space,
                                                std::vector<std::pair<Point, double>> anchors) {
  if (anchors.empty()) throw std::domain_error("ConvexFunction: empty anchor list");
  for (auto& [p, w] : anchors) {
    if (!(w > 0.0)) throw std::domain_error("ConvexFunction: weights must be positive");
    p = space->canonicalize(std::move(p));
  }
  ConvexFunction f(Kind::WeightedFrechet, space);
  f.anchors_ = std::move(anchors);
  return f;
}

ConvexFunction ConvexFunction::indicator(ConvexSet set) {
  ConvexFunction f(Kind::IndicatorOf, set.space());
  f.set_ = std::make_shared<const ConvexSet>(std::move(set));
  return f;
}

ConvexFunction ConvexFunction::dist_to(SpacePtr space, Point anchor, double weight) {
  if (!(weight > 0.0)) throw std::domain_error("ConvexFunction: weight must be positive");
  ConvexFunction f(Kind::DistTo, space);
  f.anchor_ = space->canonicalize(std::move(anchor));
  f.weight_ = weight;
  return f;
}

ConvexFunction ConvexFunction::affine_euclidean(SpacePtr space, std::vector<double> gradient,
                                                double constant) {
  if (space->tag() != SpaceTag::Euclidean) {
    throw std::domain_error("ConvexFunction::affine_euclidean: requires a Euclidean space");
  }
  const auto& eu = static_cast<const EuclideanSpace&>(*space);
  if (static_cast<int>(gradient.size()) != eu.dimension()) {
    throw std::domain_error("ConvexFunction::affine_euclidean: gradient has wrong dimension");
  }
  ConvexFunction f(Kind::AffineEuclidean, space);
  f.gradient_ = std::move(gradient);
  f.constant_ = constant;
  return f;
}

double eval_function(const ConvexFunction& f, const Point& x) {
  const Space& sp = *f.space();
  detail::require_tag(sp, x, "eval_function");
  switch (f.kind()) {
    case ConvexFunction::Kind::HalfSqDistTo: {
      const double d = sp.dist(x, f.anchor());
      return 0.5 * f.weight() * d * d;
    }
    case ConvexFunction::Kind::WeightedFrechet: {
      double s = 0.0;
      for (const auto& [a, w] : f.anchors()) {
        const double d = sp.dist(x, a);
        s += w * d * d;
      }
      return s;
    }
    case ConvexFunction::Kind::IndicatorOf:
      return membership_slack(f.set(), x) <= 1e-9 ? 0.0
                                                  : std::numeric_limits<double>::infinity();
    case ConvexFunction::Kind::DistTo:
      return f.weight() * sp.dist(x, f.anchor());
    case ConvexFunction::Kind::AffineEuclidean: {
      double s = f.constant();
      for (size_t i = 0; i < f.gradient().size(); ++i) s += f.gradient()[i] * x.coords[i];
      return s;
    }
  }
  throw std::logic_error("eval_function: unknown kind");
}

}  // namespace hadamard
