#include "hadamard/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

#include "json.hpp"

namespace hadamard {

namespace {

double acosh_stable(double c) {
  // acosh(1 + u) written to keep full precision for small u.
  double u = c - 1.0;
  if (u < 0.0) u = 0.0;
  return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

// ---------------------------------------------------------------------------
// EuclideanSpace
// ---------------------------------------------------------------------------

EuclideanSpace::EuclideanSpace(int dim) : Space(SpaceTag::Euclidean), dim_(dim) {
  if (dim < 1) throw std::domain_error("EuclideanSpace: dimension must be >= 1");
}

Point EuclideanSpace::point(std::vector<double> x) const {
  Point p = Point::euclidean(std::move(x));
  validate(p);
  return p;
}

void EuclideanSpace::validate(const Point& p) const {
  detail::require_tag(*this, p, "EuclideanSpace::validate");
  if (static_cast<int>(p.coords.size()) != dim_) {
    throw std::domain_error("EuclideanSpace: expected " + std::to_string(dim_) +
                            " coordinates, got " + std::to_string(p.coords.size()));
  }
  for (double c : p.coords) {
    if (!std::isfinite(c)) throw std::domain_error("EuclideanSpace: non-finite coordinate");
  }
}

Point EuclideanSpace::canonicalize(Point p) const {
  validate(p);
  return p;
}

double EuclideanSpace::dist_impl(const Point& x, const Point& y) const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) {
    const double d = x.coords[i] - y.coords[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Point EuclideanSpace::combine_impl(const Point& x, const Point& y, double alpha) const {
  std::vector<double> out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = x.coords[i] + alpha * (y.coords[i] - x.coords[i]);
  return Point::euclidean(std::move(out));
}

bool EuclideanSpace::payload_less(const Point& x, const Point& y) const {
  return lex_less(x.coords, y.coords);
}

std::vector<Point> EuclideanSpace::frame_neighbors(const Point& p, double radius) const {
  std::vector<Point> out;
  out.reserve(2 * dim_);
  for (int i = 0; i < dim_; ++i) {
    for (double s : {radius, -radius}) {
      Point q = p;
      q.coords[i] += s;
      out.push_back(std::move(q));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// HyperbolicSpace
// ---------------------------------------------------------------------------

HyperbolicSpace::HyperbolicSpace(int dim) : Space(SpaceTag::Hyperbolic), dim_(dim) {
  if (dim < 1) throw std::domain_error("HyperbolicSpace: dimension must be >= 1");
}

double HyperbolicSpace::minkowski(const std::vector<double>& a, const std::vector<double>& b) {
  const size_t n = a.size() - 1;
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s - a[n] * b[n];
}

Point HyperbolicSpace::origin() const {
  std::vector<double> x(dim_ + 1, 0.0);
  x[dim_] = 1.0;
  return Point::hyperboloid(std::move(x));
}

Point HyperbolicSpace::from_disk(const std::vector<double>& disk) const {
  if (static_cast<int>(disk.size()) != dim_) {
    throw std::domain_error("HyperbolicSpace: disk point needs " + std::to_string(dim_) +
                            " coordinates");
  }
  double s = 0.0;
  for (double c : disk) s += c * c;
  if (!(s < 1.0)) throw std::domain_error("HyperbolicSpace: disk point must satisfy |p| < 1");
  const double f = 1.0 / (1.0 - s);
  std::vector<double> x(dim_ + 1);
  for (int i = 0; i < dim_; ++i) x[i] = 2.0 * disk[i] * f;
  x[dim_] = (1.0 + s) * f;
  return canonicalize(Point::hyperboloid(std::move(x)));
}

std::vector<double> HyperbolicSpace::to_disk(const Point& p) const {
  validate(p);
  std::vector<double> disk(dim_);
  const double denom = 1.0 + p.coords[dim_];
  for (int i = 0; i < dim_; ++i) disk[i] = p.coords[i] / denom;
  return disk;
}

void HyperbolicSpace::validate(const Point& p) const {
  detail::require_tag(*this, p, "HyperbolicSpace::validate");
  if (static_cast<int>(p.coords.size()) != dim_ + 1) {
    throw std::domain_error("HyperbolicSpace: expected " + std::to_string(dim_ + 1) +
                            " hyperboloid coordinates");
  }
  for (double c : p.coords) {
    if (!std::isfinite(c)) throw std::domain_error("HyperbolicSpace: non-finite coordinate");
  }
  if (p.coords[dim_] <= 0.0) {
    throw std::domain_error("HyperbolicSpace: point not on the upper sheet");
  }
}

Point HyperbolicSpace::canonicalize(Point p) const {
  validate(p);
  const double q = minkowski(p.coords, p.coords);
  if (!(q < 0.0) || std::abs(q + 1.0) > 1e-6) {
    throw std::domain_error("HyperbolicSpace: payload too far from the hyperboloid sheet");
  }
  const double scale = 1.0 / std::sqrt(-q);
  for (double& c : p.coords) c *= scale;
  return p;
}

double HyperbolicSpace::dist_impl(const Point& x, const Point& y) const {
  // acosh amplifies the O(1e-16) roundoff of the Minkowski form into an
  // O(1e-8) phantom distance on the diagonal, so catch exact coincidence.
  if (x.coords == y.coords) return 0.0;
  return acosh_stable(-minkowski(x.coords, y.coords));
}

std::vector<double> HyperbolicSpace::tangent_toward(const Point& p, const Point& q,
                                                    double d) const {
  const double ch = std::cosh(d);
  const double sh = std::sinh(d);
  std::vector<double> u(dim_ + 1);
  for (int i = 0; i <= dim_; ++i) u[i] = (q.coords[i] - ch * p.coords[i]) / sh;
  return u;
}

Point HyperbolicSpace::geodesic_at(const Point& p, const Point& q, double t) const {
  const Point a = canonicalize(p);
  const Point b = canonicalize(q);
  const double d = dist_impl(a, b);
  if (d < 1e-15) return a;
  const std::vector<double> u = tangent_toward(a, b, d);
  const double ch = std::cosh(t);
  const double sh = std::sinh(t);
  std::vector<double> out(dim_ + 1);
  for (int i = 0; i <= dim_; ++i) out[i] = ch * a.coords[i] + sh * u[i];
  return canonicalize(Point::hyperboloid(std::move(out)));
}

Point HyperbolicSpace::combine_impl(const Point& x, const Point& y, double alpha) const {
  const double d = dist_impl(x, y);
  if (d < 1e-15) return x;
  const std::vector<double> u = tangent_toward(x, y, d);
  const double t = alpha * d;
  const double ch = std::cosh(t);
  const double sh = std::sinh(t);
  std::vector<double> out(dim_ + 1);
  for (int i = 0; i <= dim_; ++i) out[i] = ch * x.coords[i] + sh * u[i];
  return Point::hyperboloid(std::move(out));
}

bool HyperbolicSpace::payload_less(const Point& x, const Point& y) const {
  return lex_less(x.coords, y.coords);
}

std::vector<Point> HyperbolicSpace::frame_neighbors(const Point& p, double radius) const {
  const Point c = canonicalize(p);
  // Minkowski-orthonormal basis of the tangent space at c, built from the
  // projected coordinate directions.
  std::vector<std::vector<double>> basis;
  for (int i = 0; i <= dim_ && static_cast<int>(basis.size()) < dim_; ++i) {
    std::vector<double> v(dim_ + 1, 0.0);
    v[i] = 1.0;
    const double vc = minkowski(v, c.coords);
    for (int k = 0; k <= dim_; ++k) v[k] += vc * c.coords[k];
    for (const auto& b : basis) {
      const double vb = minkowski(v, b);
      for (int k = 0; k <= dim_; ++k) v[k] -= vb * b[k];
    }
    const double n2 = minkowski(v, v);
    if (n2 > 1e-12) {
      const double inv = 1.0 / std::sqrt(n2);
      for (double& e : v) e *= inv;
      basis.push_back(std::move(v));
    }
  }
  std::vector<Point> out;
  out.reserve(2 * basis.size());
  const double ch = std::cosh(radius);
  const double sh = std::sinh(radius);
  for (const auto& b : basis) {
    for (double s : {sh, -sh}) {
      std::vector<double> q(dim_ + 1);
      for (int k = 0; k <= dim_; ++k) q[k] = ch * c.coords[k] + s * b[k];
      out.push_back(canonicalize(Point::hyperboloid(std::move(q))));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// TreeSpace
// ---------------------------------------------------------------------------

TreeSpace::TreeSpace(int n_vertices, std::vector<Edge> edges)
    : Space(SpaceTag::Tree), n_vertices_(n_vertices), edges_(std::move(edges)) {
  if (n_vertices_ < 2) throw std::domain_error("TreeSpace: need at least two vertices");
  if (static_cast<int>(edges_.size()) != n_vertices_ - 1) {
    throw std::domain_error("TreeSpace: a tree on " + std::to_string(n_vertices_) +
                            " vertices needs exactly " + std::to_string(n_vertices_ - 1) +
                            " edges (cycles or missing edges otherwise)");
  }
  adj_.assign(n_vertices_, {});
  std::set<std::pair<int, int>> seen;
  for (size_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    if (e.u < 0 || e.u >= n_vertices_ || e.v < 0 || e.v >= n_vertices_) {
      throw std::domain_error("TreeSpace: edge endpoint out of range");
    }
    if (e.u == e.v) throw std::domain_error("TreeSpace: self-loop forms a cycle");
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw std::domain_error("TreeSpace: edge lengths must be positive");
    }
    const auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second) throw std::domain_error("TreeSpace: duplicate edge forms a cycle");
    adj_[e.u].emplace_back(static_cast<int>(id), e.v);
    adj_[e.v].emplace_back(static_cast<int>(id), e.u);
  }

  vdist_.assign(n_vertices_, std::vector<double>(n_vertices_, 0.0));
  next_hop_.assign(n_vertices_, std::vector<int>(n_vertices_, -1));
  std::vector<int> order;
  order.reserve(n_vertices_);
  for (int root = 0; root < n_vertices_; ++root) {
    order.clear();
    order.push_back(root);
    std::vector<char> visited(n_vertices_, 0);
    visited[root] = 1;
    for (size_t h = 0; h < order.size(); ++h) {
      const int cur = order[h];
      for (const auto& [eid, nb] : adj_[cur]) {
        if (visited[nb]) continue;
        visited[nb] = 1;
        vdist_[root][nb] = vdist_[root][cur] + edges_[eid].length;
        next_hop_[nb][root] = cur;  // step from nb toward root
        order.push_back(nb);
      }
    }
    if (static_cast<int>(order.size()) != n_vertices_) {
      throw std::domain_error("TreeSpace: graph is disconnected");
    }
  }

  smallest_incident_edge_.assign(n_vertices_, std::numeric_limits<int>::max());
  for (size_t id = 0; id < edges_.size(); ++id) {
    smallest_incident_edge_[edges_[id].u] =
        std::min(smallest_incident_edge_[edges_[id].u], static_cast<int>(id));
    smallest_incident_edge_[edges_[id].v] =
        std::min(smallest_incident_edge_[edges_[id].v], static_cast<int>(id));
  }
}

TreeSpace TreeSpace::from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::domain_error(std::string("TreeSpace: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges")) {
    throw std::domain_error("TreeSpace: document needs \"vertices\" and \"edges\"");
  }
  const int n = doc.at("vertices").get<int>();
  std::vector<Edge> edges;
  for (const auto& row : doc.at("edges")) {
    if (!row.is_array() || row.size() != 3) {
      throw std::domain_error("TreeSpace: each edge must be [u, v, length]");
    }
    edges.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<double>()});
  }
  return TreeSpace(n, std::move(edges));
}

Point TreeSpace::vertex_point(int v) const {
  if (v < 0 || v >= n_vertices_) throw std::domain_error("TreeSpace: vertex out of range");
  const int e = smallest_incident_edge_[v];
  return Point::tree_locus(e, edges_[e].u == v ? 0.0 : edges_[e].length);
}

Point TreeSpace::locus(int e, double offset) const {
  return canonicalize(Point::tree_locus(e, offset));
}

int TreeSpace::vertex_of(const Point& p) const {
  const Edge& e = edges_[p.edge];
  if (p.offset == 0.0) return e.u;
  if (p.offset == e.length) return e.v;
  return -1;
}

void TreeSpace::validate(const Point& p) const {
  detail::require_tag(*this, p, "TreeSpace::validate");
  if (p.edge < 0 || p.edge >= static_cast<int>(edges_.size())) {
    throw std::domain_error("TreeSpace: edge id out of range");
  }
  const double len = edges_[p.edge].length;
  const double slack = 1e-12 * std::max(1.0, len);
  if (!(p.offset >= -slack && p.offset <= len + slack)) {
    throw std::domain_error("TreeSpace: offset outside [0, edge length]");
  }
}

Point TreeSpace::canonicalize(Point p) const {
  validate(p);
  const Edge& e = edges_[p.edge];
  const double snap = 1e-12 * std::max(1.0, e.length);
  if (p.offset <= snap) return vertex_point(e.u);
  if (p.offset >= e.length - snap) return vertex_point(e.v);
  return p;
}

double TreeSpace::dist_to_vertex(const Point& p, int v) const {
  const Edge& e = edges_[p.edge];
  return std::min(p.offset + vdist_[e.u][v], (e.length - p.offset) + vdist_[e.v][v]);
}

TreeSpace::PathPlan TreeSpace::plan_path(const Point& x, const Point& y) const {
  const Edge& ex = edges_[x.edge];
  const Edge& ey = edges_[y.edge];
  const int exits[2] = {ex.u, ex.v};
  const double exit_costs[2] = {x.offset, ex.length - x.offset};
  const int entries[2] = {ey.u, ey.v};
  const double entry_costs[2] = {y.offset, ey.length - y.offset};
  PathPlan best{std::numeric_limits<double>::infinity(), -1, 0.0, -1, 0.0};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double total = (exit_costs[i] + vdist_[exits[i]][entries[j]]) + entry_costs[j];
      if (total < best.total) {
        best = {total, exits[i], exit_costs[i], entries[j], entry_costs[j]};
      }
    }
  }
  return best;
}

double TreeSpace::dist_impl(const Point& x, const Point& y) const {
  if (x.edge == y.edge) return std::abs(x.offset - y.offset);
  return plan_path(x, y).total;
}

Point TreeSpace::combine_impl(const Point& x, const Point& y, double alpha) const {
  if (x.edge == y.edge) {
    return Point::tree_locus(x.edge, x.offset + alpha * (y.offset - x.offset));
  }
  const PathPlan plan = plan_path(x, y);
  double t = alpha * plan.total;

  const Edge& ex = edges_[x.edge];
  if (t <= plan.exit_cost) {
    const double off = (plan.exit_vertex == ex.u) ? x.offset - t : x.offset + t;
    return Point::tree_locus(x.edge, std::clamp(off, 0.0, ex.length));
  }
  t -= plan.exit_cost;

  int cur = plan.exit_vertex;
  while (cur != plan.entry_vertex) {
    const int nxt = next_hop_[cur][plan.entry_vertex];
    int eid = -1;
    for (const auto& [id, nb] : adj_[cur]) {
      if (nb == nxt) {
        eid = id;
        break;
      }
    }
    const Edge& e = edges_[eid];
    if (t <= e.length) {
      const double off = (cur == e.u) ? t : e.length - t;
      return Point::tree_locus(eid, std::clamp(off, 0.0, e.length));
    }
    t -= e.length;
    cur = nxt;
  }

  const Edge& ey = edges_[y.edge];
  const double off = (plan.entry_vertex == ey.u) ? t : ey.length - t;
  return Point::tree_locus(y.edge, std::clamp(off, 0.0, ey.length));
}

bool TreeSpace::payload_less(const Point& x, const Point& y) const {
  if (x.edge != y.edge) return x.edge < y.edge;
  return x.offset < y.offset;
}

std::vector<Point> TreeSpace::frame_neighbors(const Point& p, double radius) const {
  const Point c = canonicalize(p);
  std::vector<Point> out;
  const int v = vertex_of(c);
  if (v < 0) {
    const Edge& e = edges_[c.edge];
    out.push_back(locus(c.edge, std::max(0.0, c.offset - radius)));
    out.push_back(locus(c.edge, std::min(e.length, c.offset + radius)));
  } else {
    for (const auto& [eid, nb] : adj_[v]) {
      const Edge& e = edges_[eid];
      const double step = std::min(radius, e.length);
      out.push_back(locus(eid, e.u == v ? step : e.length - step));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

SpacePtr make_euclidean(int dim) { return std::make_shared<EuclideanSpace>(dim); }

SpacePtr make_hyperbolic(int dim) { return std::make_shared<HyperbolicSpace>(dim); }

SpacePtr make_tree(int n_vertices, std::vector<TreeSpace::Edge> edges) {
  return std::make_shared<TreeSpace>(n_vertices, std::move(edges));
}

SpacePtr make_unit_star(int leaves) {
  std::vector<TreeSpace::Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i, 1.0});
  return std::make_shared<TreeSpace>(leaves + 1, std::move(edges));
}

}  // namespace hadamard
