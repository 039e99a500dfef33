#include "hadamard/geometry.hpp"

#include <cmath>
#include <utility>

namespace hadamard {

std::string to_string(SpaceTag tag) {
  switch (tag) {
    case SpaceTag::Euclidean: return "euclidean";
    case SpaceTag::Hyperbolic: return "hyperbolic";
    case SpaceTag::Tree: return "tree";
  }
  return "unknown";
}

Point Point::euclidean(std::vector<double> x) {
  Point p;
  p.tag = SpaceTag::Euclidean;
  p.coords = std::move(x);
  return p;
}

Point Point::hyperboloid(std::vector<double> x) {
  Point p;
  p.tag = SpaceTag::Hyperbolic;
  p.coords = std::move(x);
  return p;
}

Point Point::tree_locus(int edge, double offset) {
  Point p;
  p.tag = SpaceTag::Tree;
  p.edge = edge;
  p.offset = offset;
  return p;
}

namespace detail {

void require_tag(const Space& space, const Point& p, const char* where) {
  if (p.tag != space.tag()) {
    throw std::domain_error(std::string(where) + ": point tagged " + to_string(p.tag) +
                            " passed to a " + to_string(space.tag()) + " space");
  }
}

void require_alpha(double alpha, const char* where) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error(std::string(where) + ": alpha = " + std::to_string(alpha) +
                            " outside [0, 1]");
  }
}

}  // namespace detail

double Space::dist(const Point& x, const Point& y) const {
  detail::require_tag(*this, x, "dist");
  detail::require_tag(*this, y, "dist");
  Point a = canonicalize(x);
  Point b = canonicalize(y);
  // Fixed evaluation order keeps the metric symmetric to the last bit.
  if (payload_less(b, a)) std::swap(a, b);
  return dist_impl(a, b);
}

Point Space::combine(const Point& x, const Point& y, double alpha) const {
  detail::require_tag(*this, x, "combine");
  detail::require_tag(*this, y, "combine");
  detail::require_alpha(alpha, "combine");
  Point a = canonicalize(x);
  if (alpha == 0.0) return a;
  Point b = canonicalize(y);
  if (alpha == 1.0) return b;
  return canonicalize(combine_impl(a, b, alpha));
}

double quasi_inner(const Space& space, const Pair& xy, const Pair& zw) {
  const double dxw = space.dist(xy.tail, zw.head);
  const double dyz = space.dist(xy.head, zw.tail);
  const double dxz = space.dist(xy.tail, zw.tail);
  const double dyw = space.dist(xy.head, zw.head);
  return 0.5 * ((dxw * dxw + dyz * dyz) - (dxz * dxz + dyw * dyw));
}

std::array<double, 4> quasi_identity_residuals(const Space& space, const Point& x,
                                               const Point& y, const Point& z,
                                               const Point& w, const Point& p) {
  const double xy_zw = quasi_inner(space, {x, y}, {z, w});
  const double zw_xy = quasi_inner(space, {z, w}, {x, y});
  const double yx_zw = quasi_inner(space, {y, x}, {z, w});
  const double xp_zw = quasi_inner(space, {x, p}, {z, w});
  const double py_zw = quasi_inner(space, {p, y}, {z, w});

  const double dxy = space.dist(x, y);
  const double dxz = space.dist(x, z);
  const double dzy = space.dist(z, y);
  const double xz_zy = quasi_inner(space, {x, z}, {z, y});

  return {xy_zw - zw_xy,
          xy_zw + yx_zw,
          xp_zw + py_zw - xy_zw,
          dxy * dxy - dxz * dxz - dzy * dzy - 2.0 * xz_zy};
}

double cauchy_schwarz_slack(const Space& space, const Pair& xy, const Pair& zw) {
  const double dxy = space.dist(xy.tail, xy.head);
  const double dzw = space.dist(zw.tail, zw.head);
  return dxy * dzw - std::abs(quasi_inner(space, xy, zw));
}

std::array<double, 2> convexity_slacks(const Space& space, const Point& x,
                                       const Point& y, const Point& z, double alpha) {
  detail::require_alpha(alpha, "convexity_slacks");
  const Point m = space.combine(x, y, alpha);
  const double dzx = space.dist(z, x);
  const double dzy = space.dist(z, y);
  const double dzm = space.dist(z, m);
  const double dxy = space.dist(x, y);
  const double slack1 = (1.0 - alpha) * dzx + alpha * dzy - dzm;
  const double slack2 = (1.0 - alpha) * dzx * dzx + alpha * dzy * dzy -
                        alpha * (1.0 - alpha) * dxy * dxy - dzm * dzm;
  return {slack1, slack2};
}

}  // namespace hadamard
