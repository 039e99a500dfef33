#ifndef HADAMARD_SPACES_HPP
#define HADAMARD_SPACES_HPP

#include <string>
#include <utility>
#include <vector>

#include "hadamard/geometry.hpp"

namespace hadamard {

/// Flat R^n with the usual metric; geodesics are straight segments.
class EuclideanSpace final : public Space {
public:
  explicit EuclideanSpace(int dim);

  int dimension() const { return dim_; }

  Point point(std::vector<double> x) const;

  Point canonicalize(Point p) const override;
  void validate(const Point& p) const override;
  std::vector<Point> frame_neighbors(const Point& p, double radius) const override;

protected:
  double dist_impl(const Point& x, const Point& y) const override;
  Point combine_impl(const Point& x, const Point& y, double alpha) const override;
  bool payload_less(const Point& x, const Point& y) const override;

private:
  int dim_;
};

/// Hyperbolic n-space in the hyperboloid model: the upper sheet of
/// <x,x>_M = -1 in R^{n+1} with the Minkowski form
/// <x,y>_M = x_1 y_1 + ... + x_n y_n - x_{n+1} y_{n+1}.
///
/// Poincare-disk coordinates are accepted and emitted at the boundary only;
/// interpolation runs on the hyperboloid where the cosh/sinh formulas stay
/// stable near the disk rim.
class HyperbolicSpace final : public Space {
public:
  explicit HyperbolicSpace(int dim);

  int dimension() const { return dim_; }

  /// Base point (0, ..., 0, 1).
  Point origin() const;

  /// Point from Poincare-disk coordinates (|p| < 1).
  Point from_disk(const std::vector<double>& disk) const;

  /// Poincare-disk coordinates of a hyperboloid point.
  std::vector<double> to_disk(const Point& p) const;

  /// Minkowski form of two payload vectors.
  static double minkowski(const std::vector<double>& a, const std::vector<double>& b);

  /// Geodesic starting at p with unit tangent toward q, evaluated at arc
  /// length t (t may exceed d(p,q); the geodesic is extended).
  Point geodesic_at(const Point& p, const Point& q, double t) const;

  Point canonicalize(Point p) const override;
  void validate(const Point& p) const override;
  std::vector<Point> frame_neighbors(const Point& p, double radius) const override;

protected:
  double dist_impl(const Point& x, const Point& y) const override;
  Point combine_impl(const Point& x, const Point& y, double alpha) const override;
  bool payload_less(const Point& x, const Point& y) const override;

private:
  std::vector<double> tangent_toward(const Point& p, const Point& q, double d) const;
  int dim_;
};

/// Metric tree: a connected acyclic graph with positive edge lengths.
/// Points live on edges; the metric is the path length. All-pairs vertex
/// distances and next-hop tables are precomputed at construction (the
/// intended scale is <= 10^3 vertices).
class TreeSpace final : public Space {
public:
  struct Edge {
    int u;
    int v;
    double length;
  };

  TreeSpace(int n_vertices, std::vector<Edge> edges);

  /// Parses {"vertices": N, "edges": [[u, v, length], ...]}. Rejects
  /// cycles, non-positive lengths, and disconnected graphs.
  static TreeSpace from_json_text(const std::string& text);

  int vertex_count() const { return n_vertices_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int id) const { return edges_.at(id); }

  /// Canonical point at a vertex.
  Point vertex_point(int v) const;

  /// Point on edge `e` at arc length `offset` from endpoint u.
  Point locus(int e, double offset) const;

  /// Vertex id if p sits at a vertex, -1 otherwise.
  int vertex_of(const Point& p) const;

  /// Distance from a point to a vertex.
  double dist_to_vertex(const Point& p, int v) const;

  /// Precomputed distance between vertices.
  double vertex_dist(int a, int b) const { return vdist_[a][b]; }

  Point canonicalize(Point p) const override;
  void validate(const Point& p) const override;
  std::vector<Point> frame_neighbors(const Point& p, double radius) const override;

protected:
  double dist_impl(const Point& x, const Point& y) const override;
  Point combine_impl(const Point& x, const Point& y, double alpha) const override;
  bool payload_less(const Point& x, const Point& y) const override;

private:
  // Endpoint of x's edge through which the geodesic toward y leaves, with
  // the residual offsets; breaks ties deterministically.
  struct PathPlan {
    double total;
    int exit_vertex;
    double exit_cost;
    int entry_vertex;
    double entry_cost;
  };
  PathPlan plan_path(const Point& x, const Point& y) const;

  int n_vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adj_;  // vertex -> (edge id, neighbor)
  std::vector<std::vector<double>> vdist_;
  std::vector<std::vector<int>> next_hop_;  // next_hop_[a][b]: neighbor of a toward b
  std::vector<int> smallest_incident_edge_;
};

SpacePtr make_euclidean(int dim);
SpacePtr make_hyperbolic(int dim);
SpacePtr make_tree(int n_vertices, std::vector<TreeSpace::Edge> edges);

/// Three-leaf star with unit edges: vertex 0 is the hub, 1..3 are leaves.
/// Shows up throughout the test suites as the smallest tree with branching.
SpacePtr make_unit_star(int leaves = 3);

}  // namespace hadamard

#endif  // HADAMARD_SPACES_HPP
