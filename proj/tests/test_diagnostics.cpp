#include "doctest.h"

#include <cmath>

#include "hadamard/diagnostics.hpp"
#include "hadamard/sampling.hpp"

using namespace hadamard;

namespace {

// Independent per-edge oracle: minimize max_k d(y, p_k) over a dense grid of
// every tree edge.
Point tree_minimax_oracle(const TreeSpace& tree, const std::vector<Point>& pts) {
  Point best;
  double best_val = 1e300;
  for (int e = 0; e < tree.edge_count(); ++e) {
    const double len = tree.edge(e).length;
    for (int i = 0; i <= 2000; ++i) {
      const Point y = tree.locus(e, len * i / 2000.0);
      double v = 0.0;
      for (const Point& p : pts) v = std::max(v, tree.dist(y, p));
      if (v < best_val) {
        best_val = v;
        best = y;
      }
    }
  }
  return best;
}

// Independent per-edge oracle for the weighted mean-square minimizer.
Point tree_mean_square_oracle(const TreeSpace& tree, const std::vector<Point>& pts,
                              const std::vector<double>& ws) {
  Point best;
  double best_val = 1e300;
  for (int e = 0; e < tree.edge_count(); ++e) {
    const double len = tree.edge(e).length;
    for (int i = 0; i <= 2000; ++i) {
      const Point y = tree.locus(e, len * i / 2000.0);
      double v = 0.0;
      for (size_t k = 0; k < pts.size(); ++k) {
        const double d = tree.dist(y, pts[k]);
        v += ws[k] * d * d;
      }
      if (v < best_val) {
        best_val = v;
        best = y;
      }
    }
  }
  return best;
}

MappingPtr halving_prox(const SpacePtr& E) {
  return make_prox(ConvexFunction::half_sq_dist(E, Point::euclidean({0, 0}), 1.0));
}

}  // namespace

TEST_CASE("asymptotic_center: constant window returns the point exactly") {
  auto E = make_euclidean(2);
  const Point p = Point::euclidean({2.5, -1.5});
  const std::vector<Point> pts(10, p);
  const auto est = asymptotic_center(*E, pts, 4, 10);
  CHECK(E->dist(est.center, p) == 0.0);
  CHECK(est.radius == 0.0);
}

TEST_CASE("asymptotic_center: Euclidean alternating pair") {
  auto E = make_euclidean(2);
  std::vector<Point> pts;
  for (int i = 0; i < 20; ++i) {
    pts.push_back(Point::euclidean({i % 2 == 0 ? 0.0 : 2.0, 0.0}));
  }
  const auto est = asymptotic_center(*E, pts, 0, 20);
  // Chebyshev center of {(0,0), (2,0)}
  CHECK(E->dist(est.center, Point::euclidean({1, 0})) < 1e-6);
  CHECK(est.radius == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("asymptotic_center: tree star alternating leaves") {
  auto T = make_unit_star(3);
  const auto& ts = static_cast<const TreeSpace&>(*T);
  std::vector<Point> pts;
  for (int i = 0; i < 16; ++i) pts.push_back(ts.vertex_point(i % 2 == 0 ? 1 : 2));
  const auto est = asymptotic_center(*T, pts, 0, 16);
  const Point oracle = tree_minimax_oracle(ts, pts);
  CHECK(T->dist(est.center, oracle) < 1e-6);
  CHECK(T->dist(est.center, ts.vertex_point(0)) < 1e-6);  // the hub
  CHECK(est.radius == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("asymptotic_center: empty window is a domain error") {
  auto E = make_euclidean(2);
  const std::vector<Point> pts{Point::euclidean({0, 0})};
  CHECK_THROWS_AS(asymptotic_center(*E, pts, 0, 0), std::domain_error);
  CHECK_THROWS_AS(asymptotic_center(*E, pts, 1, 1), std::domain_error);
  CHECK_THROWS_AS(asymptotic_center(*E, pts, 0, 5), std::domain_error);
}

TEST_CASE("delta_limit_estimate: halving orbit centers collapse to the limit") {
  auto E = make_euclidean(2);
  const auto trace = picard(*halving_prox(E), Point::euclidean({8, 0}), 200, 1e-13);
  const auto windows = default_windows(static_cast<int>(trace.iterates.size()));
  const auto delta = delta_limit_estimate(*E, trace, windows);
  CHECK(E->dist(delta.estimate, Point::euclidean({0, 0})) < 1e-6);
  CHECK(delta.stability < 1e-6);
}

TEST_CASE("delta_limit_estimate: identity trace is already stationary") {
  auto E = make_euclidean(2);
  const Point x1 = Point::euclidean({4, 4});
  const auto trace = picard(*make_identity(E), x1, 10, 1e-9);
  // two iterates; compare the two singleton windows
  const auto delta = delta_limit_estimate(*E, trace, {{0, 1}, {1, 2}});
  CHECK(E->dist(delta.estimate, x1) == 0.0);
  CHECK(delta.stability == 0.0);
}

TEST_CASE("delta_limit_estimate: mann on a ball projection finds the projection") {
  auto E = make_euclidean(2);
  const auto ball = ConvexSet::ball(E, Point::euclidean({0, 0}), 1.0);
  const Point x1 = Point::euclidean({3, 4});
  const auto trace =
      mann(*make_projection(ball), x1, StepSchedule::constant(0.5), 3000, 1e-13);
  const auto delta =
      delta_limit_estimate(*E, trace, default_windows(static_cast<int>(trace.iterates.size())));
  CHECK(E->dist(delta.estimate, project(ball, x1)) < 1e-4);
  CHECK(delta.stability < 1e-6);
}

TEST_CASE("delta_limit_estimate: needs two windows") {
  auto E = make_euclidean(2);
  const auto trace = picard(*make_identity(E), Point::euclidean({0, 0}), 10, 1e-9);
  CHECK_THROWS_AS(delta_limit_estimate(*E, trace, {{0, 1}}), std::domain_error);
}

TEST_CASE("double_sequence_residual: constant orbit") {
  auto E = make_euclidean(2);
  const std::vector<Point> orbit(5, Point::euclidean({1, 1}));
  const auto rep = double_sequence_residual(*E, orbit);
  for (double a : rep.consecutive) CHECK(a == 0.0);
  CHECK(rep.hypothesis_ok);
  CHECK(rep.trend_ok);
}

TEST_CASE("double_sequence_residual: halving orbit decays geometrically") {
  auto E = make_euclidean(2);
  const auto trace = picard(*halving_prox(E), Point::euclidean({8, 0}), 40, 1e-14);
  const auto rep = double_sequence_residual(*E, trace.iterates);
  // A(n, n+1) = (4 * 2^{1-n})^2 for the orbit 8, 4, 2, ...
  for (size_t i = 0; i < std::min<size_t>(rep.consecutive.size(), 8); ++i) {
    const double step = 4.0 * std::pow(2.0, -static_cast<double>(i));
    CHECK(rep.consecutive[i] == doctest::Approx(step * step).epsilon(1e-12));
  }
  CHECK(rep.hypothesis_ok);
  CHECK(rep.trend_ok);
}

TEST_CASE("double_sequence_residual: glued orbit settles after the branch switch") {
  auto E = make_euclidean(2);
  const Point a = Point::euclidean({0, 0});
  const double r = 1.0;
  const double delta = (1.0 + 2.0 * std::sqrt(2.0)) * r;
  const auto U = make_glued(make_projection(ConvexSet::segment(E, a, a)),
                            make_projection(ConvexSet::ball(E, a, r)), a, r, delta);
  const auto trace = picard(*U, Point::euclidean({delta + 2.0, 0}), 50, 1e-12);
  const auto rep = double_sequence_residual(*E, trace.iterates);
  CHECK(rep.consecutive.back() <= rep.consecutive.front());
  CHECK(rep.trend_ok);
}

TEST_CASE("double_sequence_residual: orbit shorter than 3 is a domain error") {
  auto E = make_euclidean(2);
  const std::vector<Point> orbit{Point::euclidean({0, 0}), Point::euclidean({1, 0})};
  CHECK_THROWS_AS(double_sequence_residual(*E, orbit), std::domain_error);
}

TEST_CASE("g_minimizer: Euclidean weighted mean") {
  auto E = make_euclidean(2);
  const Point m = g_minimizer(*E, {Point::euclidean({0, 0}), Point::euclidean({2, 0})},
                              {1.0, 1.0});
  CHECK(E->dist(m, Point::euclidean({1, 0})) < 1e-6);

  // random configurations against the closed-form weighted mean
  RandomStream rng(113);
  for (int dim : {2, 5}) {
    auto Ed = make_euclidean(dim);
    const RegionSampler region = default_region(Ed);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Point> pts;
      std::vector<double> ws;
      double wsum = 0.0;
      std::vector<double> mean(dim, 0.0);
      for (int k = 0; k < 5; ++k) {
        pts.push_back(region.sample(rng));
        ws.push_back(rng.uniform(0.1, 2.0));
        wsum += ws.back();
        for (int c = 0; c < dim; ++c) mean[c] += ws.back() * pts.back().coords[c];
      }
      for (int c = 0; c < dim; ++c) mean[c] /= wsum;
      const Point got = g_minimizer(*Ed, pts, ws);
      CHECK(Ed->dist(got, Point::euclidean(mean)) < 1e-6);
    }
  }
}

TEST_CASE("g_minimizer: single image and error paths") {
  auto E = make_euclidean(2);
  const Point p = Point::euclidean({3, 3});
  CHECK(E->dist(g_minimizer(*E, {p}, {2.0}), p) == 0.0);
  CHECK_THROWS_AS(g_minimizer(*E, {}, {}), std::domain_error);
  CHECK_THROWS_AS(g_minimizer(*E, {p}, {-1.0}), std::domain_error);
  CHECK_THROWS_AS(g_minimizer(*E, {p}, {1.0, 1.0}), std::domain_error);
}

TEST_CASE("g_minimizer: Frechet mean of the star leaves is the hub") {
  auto T = make_unit_star(3);
  const auto& ts = static_cast<const TreeSpace&>(*T);
  const std::vector<Point> leaves{ts.vertex_point(1), ts.vertex_point(2),
                                  ts.vertex_point(3)};
  const std::vector<double> ws{1.0, 1.0, 1.0};
  const Point got = g_minimizer(*T, leaves, ws);
  const Point oracle = tree_mean_square_oracle(ts, leaves, ws);
  CHECK(T->dist(got, oracle) < 1e-3);
  CHECK(T->dist(got, ts.vertex_point(0)) < 1e-6);
}

TEST_CASE("demiclosedness_probe: converged mann run passes") {
  auto E = make_euclidean(2);
  const auto T = halving_prox(E);
  const auto trace =
      mann(*T, Point::euclidean({5, 1}), StepSchedule::constant(0.5), 2000, 1e-12);
  const auto windows = default_windows(static_cast<int>(trace.iterates.size()));
  const auto rep = demiclosedness_probe(*T, trace, windows.back());
  CHECK(rep.status == "ok");
  CHECK(rep.pass);
  CHECK(rep.residual_at_center < 1e-3);
}

TEST_CASE("demiclosedness_probe: constant trace at a fixed point") {
  auto E = make_euclidean(2);
  const auto T = halving_prox(E);
  const auto trace = picard(*T, Point::euclidean({0, 0}), 10, 1e-9);
  const auto rep = demiclosedness_probe(*T, trace, {0, static_cast<int>(trace.iterates.size())});
  CHECK(rep.status == "ok");
  CHECK(rep.residual_at_center == 0.0);
}

TEST_CASE("demiclosedness_probe: divergent run fails the precondition") {
  auto E = make_euclidean(2);
  const auto T = make_prox(ConvexFunction::affine_euclidean(E, {0.5, 0.5}, 0.0));
  const auto trace = picard(*T, Point::euclidean({0, 0}), 100, 1e-9,
                            SolveOptions{std::nullopt, 1e30});  // disable the cap
  const auto rep =
      demiclosedness_probe(*T, trace, {0, static_cast<int>(trace.iterates.size())});
  CHECK(rep.status == "window residuals too large");
  CHECK_FALSE(rep.pass);
}

TEST_CASE("default_windows splits the tail quarters") {
  const auto w = default_windows(100);
  REQUIRE(w.size() == 2);
  CHECK(w[0].first == 50);
  CHECK(w[0].second == 75);
  CHECK(w[1].first == 75);
  CHECK(w[1].second == 100);
  // short traces degrade to single-point tail windows
  const auto tiny = default_windows(3);
  CHECK(tiny[0] == std::make_pair(1, 2));
  CHECK(tiny[1] == std::make_pair(2, 3));
  CHECK_THROWS_AS(default_windows(1), std::domain_error);
}
