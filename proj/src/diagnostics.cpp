#include "hadamard/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hadamard/search.hpp"

namespace hadamard {

AsymptoticCenterEstimate asymptotic_center(const Space& space,
                                           const std::vector<Point>& points, int start,
                                           int end) {
  if (start < 0 || end > static_cast<int>(points.size()) || start >= end) {
    throw std::domain_error("asymptotic_center: empty or invalid window");
  }
  std::vector<Point> window(points.begin() + start, points.begin() + end);
  auto objective = [&](const Point& y) {
    double worst = 0.0;
    for (const Point& p : window) worst = std::max(worst, space.dist(y, p));
    return worst;
  };
  const SearchResult res = minimize_over_space(space, window, objective);

  AsymptoticCenterEstimate est;
  est.center = res.minimizer;
  est.radius = res.value;
  est.window_start = start;
  est.window_end = end;
  est.refinement_residual = res.refinement_residual;
  return est;
}

DeltaLimitEstimate delta_limit_estimate(const Space& space, const IterationTrace& trace,
                                        const std::vector<std::pair<int, int>>& windows) {
  if (windows.size() < 2) {
    throw std::domain_error("delta_limit_estimate: need at least two windows");
  }
  DeltaLimitEstimate out;
  for (const auto& [s, e] : windows) {
    out.centers.push_back(asymptotic_center(space, trace.iterates, s, e));
  }
  for (size_t i = 0; i < out.centers.size(); ++i) {
    for (size_t j = i + 1; j < out.centers.size(); ++j) {
      out.stability =
          std::max(out.stability, space.dist(out.centers[i].center, out.centers[j].center));
    }
  }
  out.estimate = out.centers.back().center;
  return out;
}

std::vector<std::pair<int, int>> default_windows(int n) {
  if (n < 2) throw std::domain_error("default_windows: trace too short");
  const int q = std::max(1, n / 4);
  return {{n - 2 * q, n - q}, {n - q, n}};
}

DoubleSequenceReport double_sequence_residual(const Space& space,
                                              const std::vector<Point>& orbit) {
  const int k = static_cast<int>(orbit.size());
  if (k < 3) throw std::domain_error("double_sequence_residual: orbit shorter than 3");

  auto A = [&](int n, int m) {
    const double d = space.dist(orbit[n], orbit[m]);
    return d * d;
  };

  DoubleSequenceReport rep;
  rep.consecutive.reserve(k - 1);
  for (int n = 0; n + 1 < k; ++n) rep.consecutive.push_back(A(n, n + 1));

  // All index pairs for short orbits, a deterministic stride otherwise.
  const int stride = std::max(1, (k - 1) / 64);
  double slack = std::numeric_limits<double>::infinity();
  for (int n = 0; n + 1 < k; n += stride) {
    for (int m = 0; m + 1 < k; m += stride) {
      slack = std::min(slack, A(n + 1, m) + A(n, m + 1) - 2.0 * A(n + 1, m + 1));
    }
  }
  rep.hypothesis_slack = slack;
  rep.hypothesis_ok = slack >= -1e-7;
  rep.trend_ok =
      rep.consecutive.back() < rep.consecutive.front() || rep.consecutive.back() < 1e-6;
  return rep;
}

Point g_minimizer(const Space& space, const std::vector<Point>& images,
                  const std::vector<double>& weights) {
  if (images.empty()) throw std::domain_error("g_minimizer: empty input");
  if (images.size() != weights.size()) {
    throw std::domain_error("g_minimizer: images and weights differ in length");
  }
  double wsum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::domain_error("g_minimizer: weights must be positive");
    wsum += w;
  }
  auto objective = [&](const Point& y) {
    double s = 0.0;
    for (size_t i = 0; i < images.size(); ++i) {
      const double d = space.dist(y, images[i]);
      s += weights[i] * d * d;
    }
    return s / wsum;
  };
  SearchOptions opt;
  opt.objective_tol = 1e-13;
  opt.max_rounds = 100;
  return minimize_over_space(space, images, objective, opt).minimizer;
}

DemiclosednessReport demiclosedness_probe(const Mapping& mapping, const IterationTrace& trace,
                                          std::pair<int, int> window) {
  const auto [start, end] = window;
  if (start < 0 || end > static_cast<int>(trace.iterates.size()) || start >= end) {
    throw std::domain_error("demiclosedness_probe: empty or invalid window");
  }
  DemiclosednessReport rep;
  for (int i = start; i < end && i < static_cast<int>(trace.residuals.size()); ++i) {
    rep.max_window_residual = std::max(rep.max_window_residual, trace.residuals[i]);
  }
  if (rep.max_window_residual >= 1e-4) {
    rep.status = "window residuals too large";
    rep.pass = false;
    return rep;
  }
  const Space& sp = *mapping.space();
  const AsymptoticCenterEstimate est = asymptotic_center(sp, trace.iterates, start, end);
  rep.status = "ok";
  rep.center = est.center;
  rep.residual_at_center = sp.dist(est.center, mapping.apply(est.center));
  rep.pass = rep.residual_at_center < 1e-3;
  return rep;
}

}  // namespace hadamard
