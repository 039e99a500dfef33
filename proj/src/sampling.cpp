#include "hadamard/sampling.hpp"

#include <cmath>

namespace hadamard {

std::uint64_t RandomStream::next_u64() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double RandomStream::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::uint64_t RandomStream::below(std::uint64_t n) { return next_u64() % n; }

namespace {

Point sample_euclidean(const EuclideanSpace& space, const Point& center, double radius,
                       RandomStream& rng) {
  const int dim = space.dimension();
  std::vector<double> dir(dim);
  double norm2 = 0.0;
  for (double& c : dir) {
    c = rng.normal();
    norm2 += c * c;
  }
  const double norm = std::sqrt(norm2);
  const double r = radius * std::pow(rng.uniform(), 1.0 / dim);
  std::vector<double> x(dim);
  for (int i = 0; i < dim; ++i) {
    x[i] = center.coords[i] + (norm > 0.0 ? r * dir[i] / norm : 0.0);
  }
  return Point::euclidean(std::move(x));
}

Point sample_hyperbolic(const HyperbolicSpace& space, const Point& center, double radius,
                        RandomStream& rng) {
  const int dim = space.dimension();
  // Random unit tangent direction at the base point, then transport by
  // picking a frame neighbor target: simplest is to build the direction at
  // `center` directly from a frame of neighbors.
  std::vector<double> w(dim);
  double norm2 = 0.0;
  for (double& c : w) {
    c = rng.normal();
    norm2 += c * c;
  }
  const double r = radius * std::pow(rng.uniform(), 1.0 / dim);
  if (norm2 == 0.0 || r == 0.0) return center;
  const double norm = std::sqrt(norm2);
  // Walk to a point at distance r from center along the combination of the
  // tangent frame given by frame_neighbors at unit radius.
  const std::vector<Point> frame = space.frame_neighbors(center, 1.0);
  // frame contains +/- pairs; use the + directions (even indices).
  std::vector<double> tangent(dim + 1, 0.0);
  const double ch = std::cosh(1.0);
  const double sh = std::sinh(1.0);
  for (int i = 0; i < dim; ++i) {
    const Point& q = frame[2 * i];
    for (int k = 0; k <= dim; ++k) {
      tangent[k] += (w[i] / norm) * (q.coords[k] - ch * center.coords[k]) / sh;
    }
  }
  std::vector<double> out(dim + 1);
  const double chr = std::cosh(r);
  const double shr = std::sinh(r);
  for (int k = 0; k <= dim; ++k) out[k] = chr * center.coords[k] + shr * tangent[k];
  return space.canonicalize(Point::hyperboloid(std::move(out)));
}

Point sample_tree(const TreeSpace& space, const Point& center, double radius,
                  RandomStream& rng) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    const int e = static_cast<int>(rng.below(space.edge_count()));
    const double off = rng.uniform() * space.edge(e).length;
    Point p = space.locus(e, off);
    if (radius <= 0.0 || space.dist(p, center) <= radius) return p;
  }
  return center;
}

}  // namespace

Point RegionSampler::sample(RandomStream& rng) const {
  switch (space->tag()) {
    case SpaceTag::Euclidean:
      return sample_euclidean(static_cast<const EuclideanSpace&>(*space), center, radius, rng);
    case SpaceTag::Hyperbolic:
      return sample_hyperbolic(static_cast<const HyperbolicSpace&>(*space), center, radius, rng);
    case SpaceTag::Tree:
      return sample_tree(static_cast<const TreeSpace&>(*space), center, radius, rng);
  }
  throw std::logic_error("RegionSampler: unknown space tag");
}

std::vector<Point> RegionSampler::sample_points(std::uint64_t seed, int n) const {
  RandomStream rng(seed);
  std::vector<Point> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(sample(rng));
  return out;
}

std::vector<std::pair<Point, Point>> RegionSampler::sample_pairs(std::uint64_t seed, int n) const {
  RandomStream rng(seed);
  std::vector<std::pair<Point, Point>> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    Point a = sample(rng);
    Point b = sample(rng);
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

RegionSampler default_region(const SpacePtr& space) {
  switch (space->tag()) {
    case SpaceTag::Euclidean: {
      const auto& e = static_cast<const EuclideanSpace&>(*space);
      return {space, Point::euclidean(std::vector<double>(e.dimension(), 0.0)), 5.0};
    }
    case SpaceTag::Hyperbolic: {
      const auto& h = static_cast<const HyperbolicSpace&>(*space);
      return {space, h.origin(), 3.0};
    }
    case SpaceTag::Tree: {
      const auto& t = static_cast<const TreeSpace&>(*space);
      return {space, t.vertex_point(0), 0.0};
    }
  }
  throw std::logic_error("default_region: unknown space tag");
}

}  // namespace hadamard
