#include "doctest.h"

#include <cmath>

#include "hadamard/geometry.hpp"
#include "hadamard/sampling.hpp"
#include "hadamard/spaces.hpp"

using namespace hadamard;

namespace {

// Independent path-sum oracle for the unit star: every leaf-to-leaf route
// goes through the hub.
double star_leaf_dist_oracle(int leaf_a, int leaf_b) { return leaf_a == leaf_b ? 0.0 : 2.0; }

double dot_diff(const Point& x, const Point& y, const Point& z, const Point& w) {
  double s = 0.0;
  for (size_t i = 0; i < x.coords.size(); ++i) {
    s += (x.coords[i] - y.coords[i]) * (z.coords[i] - w.coords[i]);
  }
  return s;
}

}  // namespace

TEST_CASE("dist: closed-form values") {
  auto E = make_euclidean(2);
  CHECK(E->dist(Point::euclidean({0, 0}), Point::euclidean({3, 4})) == doctest::Approx(5.0));

  auto H = make_hyperbolic(2);
  const auto& hs = static_cast<const HyperbolicSpace&>(*H);
  const Point o = hs.from_disk({0.0, 0.0});
  CHECK(H->dist(o, o) == 0.0);

  auto T = make_unit_star(3);
  const auto& ts = static_cast<const TreeSpace&>(*T);
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      CHECK(T->dist(ts.vertex_point(a), ts.vertex_point(b)) ==
            doctest::Approx(star_leaf_dist_oracle(a, b)));
    }
  }
}

TEST_CASE("dist: metric axioms on samples") {
  for (auto space : {make_euclidean(3), make_hyperbolic(2), make_unit_star(4)}) {
    const RegionSampler region = default_region(space);
    RandomStream rng(7);
    for (int i = 0; i < 200; ++i) {
      const Point x = region.sample(rng);
      const Point y = region.sample(rng);
      const Point z = region.sample(rng);
      const double dxy = space->dist(x, y);
      CHECK(dxy >= 0.0);
      CHECK(space->dist(y, x) == dxy);  // exact symmetry
      CHECK(space->dist(x, z) <= dxy + space->dist(y, z) + 1e-9);
      CHECK(space->dist(x, x) == 0.0);
    }
  }
}

TEST_CASE("dist: tag mismatch is a domain error") {
  auto E = make_euclidean(2);
  CHECK_THROWS_AS(E->dist(Point::euclidean({0, 0}), Point::tree_locus(0, 0.5)),
                  std::domain_error);
}

TEST_CASE("combine: endpoints and midpoints") {
  auto E = make_euclidean(2);
  const Point x = Point::euclidean({0, 0});
  const Point y = Point::euclidean({2, 0});
  const Point m = E->combine(x, y, 0.5);
  CHECK(m.coords[0] == doctest::Approx(1.0));
  CHECK(m.coords[1] == doctest::Approx(0.0));

  // alpha = 0 returns x canonically, in every space
  for (auto space : {make_euclidean(2), make_hyperbolic(2), make_unit_star(3)}) {
    const RegionSampler region = default_region(space);
    RandomStream rng(3);
    const Point a = region.sample(rng);
    const Point b = region.sample(rng);
    CHECK(space->dist(space->combine(a, b, 0.0), a) == 0.0);
    CHECK(space->dist(space->combine(a, b, 1.0), b) == 0.0);
  }
}

TEST_CASE("combine: tree star walks through the hub") {
  auto T = make_unit_star(3);
  const auto& ts = static_cast<const TreeSpace&>(*T);
  // Arc-length oracle: 0.75 * d(leaf1, leaf2) = 1.5, i.e. 0.5 past the hub
  // into the hub->leaf2 edge.
  const Point p = T->combine(ts.vertex_point(1), ts.vertex_point(2), 0.75);
  CHECK(p.edge == 1);
  CHECK(p.offset == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("combine: alpha outside [0,1] is a domain error") {
  auto E = make_euclidean(2);
  const Point x = Point::euclidean({0, 0});
  const Point y = Point::euclidean({1, 0});
  CHECK_THROWS_AS(E->combine(x, y, -0.1), std::domain_error);
  CHECK_THROWS_AS(E->combine(x, y, 1.1), std::domain_error);
}

TEST_CASE("combine: interpolation ratio in every space") {
  for (auto space : {make_euclidean(2), make_euclidean(5), make_hyperbolic(2),
                     make_unit_star(3)}) {
    const RegionSampler region = default_region(space);
    RandomStream rng(11);
    for (int i = 0; i < 100; ++i) {
      const Point x = region.sample(rng);
      const Point y = region.sample(rng);
      const double d = space->dist(x, y);
      const double alpha = rng.uniform();
      const Point m = space->combine(x, y, alpha);
      CHECK(space->dist(x, m) == doctest::Approx(alpha * d).epsilon(1e-9));
      CHECK(space->dist(y, m) == doctest::Approx((1.0 - alpha) * d).epsilon(1e-9));
    }
  }
}

TEST_CASE("combine: parameter isometry") {
  for (auto space : {make_euclidean(2), make_hyperbolic(2), make_unit_star(3)}) {
    const RegionSampler region = default_region(space);
    RandomStream rng(13);
    for (int i = 0; i < 50; ++i) {
      const Point x = region.sample(rng);
      const Point y = region.sample(rng);
      const double len = space->dist(x, y);
      if (len < 1e-6) continue;
      const double s = rng.uniform() * len;
      const double t = rng.uniform() * len;
      const Point ps = space->combine(x, y, s / len);
      const Point pt = space->combine(x, y, t / len);
      CHECK(space->dist(ps, pt) == doctest::Approx(std::abs(s - t)).epsilon(1e-9));
    }
  }
}

TEST_CASE("quasi_inner: Euclidean bracket equals the dot product") {
  auto E = make_euclidean(2);
  const Point x = Point::euclidean({0, 0});
  const Point y = Point::euclidean({2, 0});
  const Point z = Point::euclidean({1, 1});
  const Point w = Point::euclidean({3, 0});
  CHECK(quasi_inner(*E, {x, y}, {z, w}) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(quasi_inner(*E, {x, y}, {z, w}) ==
        doctest::Approx(dot_diff(x, y, z, w)).epsilon(1e-12));

  // <->xy, ->xy> = d(x, y)^2, orthogonal pairs vanish
  CHECK(quasi_inner(*E, {x, y}, {x, y}) == doctest::Approx(4.0));
  const Point o = Point::euclidean({0, 0});
  const Point e1 = Point::euclidean({1, 0});
  const Point e2 = Point::euclidean({0, 1});
  CHECK(quasi_inner(*E, {o, e1}, {o, e2}) == doctest::Approx(0.0));
}

TEST_CASE("quasi_inner: self-bracket is the squared distance in every space") {
  for (auto space : {make_euclidean(3), make_hyperbolic(2), make_unit_star(3)}) {
    const RegionSampler region = default_region(space);
    RandomStream rng(17);
    for (int i = 0; i < 100; ++i) {
      const Point x = region.sample(rng);
      const Point y = region.sample(rng);
      const double d = space->dist(x, y);
      CHECK(quasi_inner(*space, {x, y}, {x, y}) == doctest::Approx(d * d).epsilon(1e-12));
    }
  }
}

TEST_CASE("quasi_inner: symmetry and antisymmetry are exact") {
  for (auto space : {make_euclidean(2), make_hyperbolic(2), make_unit_star(3)}) {
    const RegionSampler region = default_region(space);
    RandomStream rng(19);
    for (int i = 0; i < 100; ++i) {
      const Point x = region.sample(rng), y = region.sample(rng);
      const Point z = region.sample(rng), w = region.sample(rng);
      const double b = quasi_inner(*space, {x, y}, {z, w});
      CHECK(quasi_inner(*space, {z, w}, {x, y}) == b);
      CHECK(quasi_inner(*space, {y, x}, {z, w}) == -b);
    }
  }
}

TEST_CASE("quasi_identity_residuals: degenerate quintuple") {
  auto E = make_euclidean(2);
  const Point p = Point::euclidean({1.5, -2.0});
  for (double r : quasi_identity_residuals(*E, p, p, p, p, p)) CHECK(r == 0.0);
}

TEST_CASE("quasi_identity_residuals: randomized sweep stays at roundoff") {
  for (auto space : {make_euclidean(2), make_hyperbolic(2), make_unit_star(3)}) {
    const RegionSampler region = default_region(space);
    RandomStream rng(23);
    double worst = 0.0;
    const int n = space->tag() == SpaceTag::Euclidean ? 1000 : 300;
    for (int i = 0; i < n; ++i) {
      const Point x = region.sample(rng), y = region.sample(rng);
      const Point z = region.sample(rng), w = region.sample(rng);
      const Point p = region.sample(rng);
      for (double r : quasi_identity_residuals(*space, x, y, z, w, p)) {
        worst = std::max(worst, std::abs(r));
      }
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("cauchy_schwarz_slack: equality and degenerate cases") {
  auto E = make_euclidean(2);
  // collinear points: |<->xy, ->zw>| = d(x,y) d(z,w)
  const Point a = Point::euclidean({0, 0});
  const Point b = Point::euclidean({1, 0});
  const Point c = Point::euclidean({4, 0});
  const Point d = Point::euclidean({-2, 0});
  CHECK(cauchy_schwarz_slack(*E, {a, b}, {c, d}) == doctest::Approx(0.0).epsilon(1e-12));
  // zero-length pair
  CHECK(cauchy_schwarz_slack(*E, {a, a}, {c, d}) == 0.0);
}

TEST_CASE("cauchy_schwarz_slack: nonnegative across spaces") {
  for (auto space : {make_euclidean(2), make_euclidean(5), make_hyperbolic(2),
                     make_unit_star(3)}) {
    const RegionSampler region = default_region(space);
    RandomStream rng(29);
    double min_slack = 1e300;
    for (int i = 0; i < 2000; ++i) {
      const Point x = region.sample(rng), y = region.sample(rng);
      const Point z = region.sample(rng), w = region.sample(rng);
      min_slack = std::min(min_slack, cauchy_schwarz_slack(*space, {x, y}, {z, w}));
    }
    CHECK(min_slack >= -1e-9);
  }
}

TEST_CASE("convexity_slacks: Euclidean parallelogram equality") {
  auto E = make_euclidean(2);
  RandomStream rng(31);
  const RegionSampler region = default_region(E);
  for (int i = 0; i < 100; ++i) {
    const Point x = region.sample(rng), y = region.sample(rng), z = region.sample(rng);
    const auto s = convexity_slacks(*E, x, y, z, rng.uniform());
    CHECK(s[0] >= -1e-9);
    CHECK(s[1] == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("convexity_slacks: trees are thinner than Euclidean") {
  auto T = make_unit_star(3);
  const auto& ts = static_cast<const TreeSpace&>(*T);
  // Direct evaluation: m = hub, slack2 = 0.5*4 + 0.5*4 - 0.25*4 - 1 = 2.
  const auto s =
      convexity_slacks(*T, ts.vertex_point(1), ts.vertex_point(2), ts.vertex_point(3), 0.5);
  CHECK(s[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s[1] > 0.0);
}

TEST_CASE("convexity_slacks: alpha = 0 vanishes; out-of-range alpha throws") {
  auto H = make_hyperbolic(2);
  const auto& hs = static_cast<const HyperbolicSpace&>(*H);
  const Point x = hs.from_disk({0.1, 0.2});
  const Point y = hs.from_disk({-0.4, 0.1});
  const Point z = hs.from_disk({0.0, -0.3});
  const auto s = convexity_slacks(*H, x, y, z, 0.0);
  CHECK(std::abs(s[0]) <= 1e-12);
  CHECK(std::abs(s[1]) <= 1e-12);
  CHECK_THROWS_AS(convexity_slacks(*H, x, y, z, 1.5), std::domain_error);
}

TEST_CASE("convexity_slacks: nonnegative across spaces and alphas") {
  for (auto space : {make_euclidean(2), make_hyperbolic(2), make_unit_star(3)}) {
    const RegionSampler region = default_region(space);
    RandomStream rng(37);
    double min1 = 1e300, min2 = 1e300;
    for (int i = 0; i < 300; ++i) {
      const Point x = region.sample(rng), y = region.sample(rng), z = region.sample(rng);
      for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0, rng.uniform()}) {
        const auto s = convexity_slacks(*space, x, y, z, alpha);
        min1 = std::min(min1, s[0]);
        min2 = std::min(min2, s[1]);
      }
    }
    CHECK(min1 >= -1e-9);
    CHECK(min2 >= -1e-9);
  }
}
