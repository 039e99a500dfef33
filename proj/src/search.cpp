#include "hadamard/search.hpp"

#include <cmath>
#include <limits>

#include "hadamard/sampling.hpp"

namespace hadamard {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

// Golden-section minimization of g on [0, 1]; g convex along the geodesic,
// hence unimodal. Returns the best (alpha, value) probed.
std::pair<double, double> golden_min(const std::function<double(double)>& g, int iters) {
  double lo = 0.0, hi = 1.0;
  double m1 = hi - kInvPhi * (hi - lo);
  double m2 = lo + kInvPhi * (hi - lo);
  double g1 = g(m1), g2 = g(m2);
  for (int i = 0; i < iters; ++i) {
    if (g1 <= g2) {
      hi = m2;
      m2 = m1;
      g2 = g1;
      m1 = hi - kInvPhi * (hi - lo);
      g1 = g(m1);
    } else {
      lo = m1;
      m1 = m2;
      g1 = g2;
      m2 = lo + kInvPhi * (hi - lo);
      g2 = g(m2);
    }
  }
  return g1 <= g2 ? std::make_pair(m1, g1) : std::make_pair(m2, g2);
}

}  // namespace

SearchResult minimize_over_space(const Space& space, const std::vector<Point>& anchors,
                                 const std::function<double(const Point&)>& objective,
                                 const SearchOptions& opt) {
  if (anchors.empty()) throw std::domain_error("minimize_over_space: no anchors");

  const int n = static_cast<int>(anchors.size());
  const int stride = std::max(1, n / opt.max_anchor_targets);

  // Seed candidates: the anchors plus pairwise midpoints of a strided subset.
  Point best = space.canonicalize(anchors.front());
  double best_val = objective(best);
  auto consider = [&](const Point& p) {
    const double v = objective(p);
    if (v < best_val) {
      best_val = v;
      best = p;
    }
  };
  for (const Point& a : anchors) consider(a);
  for (int i = 0; i < n; i += stride) {
    for (int j = i + stride; j < n; j += stride) {
      consider(space.combine(anchors[i], anchors[j], 0.5));
    }
  }

  double scale = 0.0;
  for (const Point& a : anchors) scale = std::max(scale, space.dist(best, a));
  if (scale < 1e-12) return {best, best_val, 0.0, true};

  RandomStream rng(opt.seed);
  double radius = 0.5 * scale;
  double last_improvement = 0.0;
  int stagnant = 0;
  bool full_round = true;
  bool converged = false;

  auto line_search_to = [&](const Point& target) {
    const Point from = best;
    if (space.dist(from, target) == 0.0) return;
    auto [alpha, value] = golden_min(
        [&](double a) { return objective(space.combine(from, target, a)); },
        opt.golden_iters);
    if (value < best_val) {
      best_val = value;
      best = space.combine(from, target, alpha);
    }
  };

  for (int round = 0; round < opt.max_rounds; ++round) {
    const double round_start = best_val;

    if (full_round) {
      for (int i = 0; i < n; i += stride) line_search_to(anchors[i]);
      for (const Point& q : space.frame_neighbors(best, radius)) line_search_to(q);
      for (int k = 0; k < opt.random_targets; ++k) {
        const int i = static_cast<int>(rng.below(n));
        const int j = static_cast<int>(rng.below(n));
        line_search_to(space.combine(anchors[i], anchors[j], rng.uniform()));
      }
    } else {
      // Cheap probe: only the local frame, promoted to a full round when it
      // still finds descent at this radius.
      bool promoted = false;
      for (const Point& q : space.frame_neighbors(best, radius)) {
        const double v = objective(q);
        if (v < best_val - opt.objective_tol) {
          promoted = true;
          break;
        }
      }
      if (promoted) {
        full_round = true;
        continue;
      }
    }

    const double improvement = round_start - best_val;
    if (improvement > 0.0) last_improvement = improvement;
    if (improvement < opt.objective_tol) {
      radius *= 0.5;
      ++stagnant;
      full_round = false;
      if (stagnant >= 3 && radius < 1e-9 * scale) {
        converged = true;
        break;
      }
    } else {
      stagnant = 0;
    }
  }

  return {best, best_val, last_improvement, converged};
}

}  // namespace hadamard
