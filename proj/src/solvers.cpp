#include "hadamard/solvers.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

namespace hadamard {

// ---------------------------------------------------------------------------
// StepSchedule
// ---------------------------------------------------------------------------

StepSchedule StepSchedule::constant(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::domain_error("StepSchedule: constant alpha must lie in (0, 1]");
  }
  StepSchedule s(Kind::Constant, "constant(" + std::to_string(alpha) + ")");
  s.alpha_ = alpha;
  s.sum_diverges_ = true;
  s.inf_a1ma_ = alpha * (1.0 - alpha);
  return s;
}

StepSchedule StepSchedule::harmonic() {
  StepSchedule s(Kind::Harmonic, "harmonic");
  s.sum_diverges_ = true;
  s.inf_a1ma_ = 0.0;
  return s;
}

StepSchedule StepSchedule::custom(std::vector<double> alphas) {
  if (alphas.empty()) throw std::domain_error("StepSchedule: empty custom schedule");
  double inf = std::numeric_limits<double>::infinity();
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 1.0)) {
      throw std::domain_error("StepSchedule: custom alphas must lie in (0, 1]");
    }
    inf = std::min(inf, a * (1.0 - a));
  }
  StepSchedule s(Kind::Custom, "custom[" + std::to_string(alphas.size()) + "]");
  s.alphas_ = std::move(alphas);
  s.sum_diverges_ = true;  // the last entry repeats past the prefix
  s.inf_a1ma_ = inf;
  s.prefix_only_ = true;
  return s;
}

double StepSchedule::alpha(int n) const {
  switch (kind_) {
    case Kind::Constant: return alpha_;
    case Kind::Harmonic: return 1.0 / (n + 1.0);
    case Kind::Custom: {
      const size_t i = std::min<size_t>(n - 1, alphas_.size() - 1);
      return alphas_[i];
    }
  }
  return 1.0;
}

// ---------------------------------------------------------------------------
// Iteration core
// ---------------------------------------------------------------------------

namespace {

// Latter-half displacement growth with non-shrinking steps: the desk-scale
// signature of a fixed-point-free run that will never trip the hard cap.
bool looks_unbounded(const std::vector<double>& displacement,
                     const std::vector<double>& steps) {
  const size_t k = displacement.size();
  if (k < 32 || steps.size() < 16) return false;
  const size_t mid = k / 2;
  const double slack = 1e-12 * (1.0 + displacement.back());
  for (size_t i = mid; i + 1 < k; ++i) {
    if (displacement[i + 1] < displacement[i] - slack) return false;
  }
  if (!(displacement.back() >= 1.4 * displacement[mid])) return false;
  double smin = std::numeric_limits<double>::infinity(), smax = 0.0;
  for (size_t i = steps.size() / 2; i < steps.size(); ++i) {
    smin = std::min(smin, steps[i]);
    smax = std::max(smax, steps[i]);
  }
  return smin >= 0.5 * smax && smax > 0.0;
}

IterationTrace run_iteration(const Space& space, const Point& start, int max_iter, double tol,
                             const SolveOptions& options, const std::string& schedule_name,
                             const std::function<Point(int, const Point&, const Point&)>& update,
                             const std::function<Point(const Point&)>& apply) {
  if (max_iter < 1) throw std::domain_error("iteration: max_iter must be >= 1");
  if (!(tol > 0.0)) throw std::domain_error("iteration: tol must be positive");

  IterationTrace trace;
  trace.schedule = schedule_name;
  Point x = space.canonicalize(start);
  trace.iterates.push_back(x);
  if (options.ref_point) trace.ref_dists.push_back(space.dist(*options.ref_point, x));

  std::vector<double> displacement{0.0};
  double cap = -1.0;
  trace.termination = "max_iter";

  for (int n = 1; n <= max_iter; ++n) {
    const Point tx = apply(x);
    const double residual = space.dist(x, tx);
    if (cap < 0.0) cap = options.divergence_factor * (1.0 + residual);
    const Point next = update(n, x, tx);
    const double step = space.dist(next, x);

    trace.residuals.push_back(residual);
    trace.steps.push_back(step);
    trace.iterates.push_back(next);
    if (options.ref_point) trace.ref_dists.push_back(space.dist(*options.ref_point, next));
    displacement.push_back(space.dist(trace.iterates.front(), next));

    if (displacement.back() > cap) {
      trace.termination = "unbounded";
      return trace;
    }
    if (step < tol) {
      trace.termination = "converged";
      return trace;
    }
    x = next;
  }

  if (looks_unbounded(displacement, trace.steps)) trace.termination = "unbounded";
  return trace;
}

}  // namespace

IterationTrace picard(const Mapping& mapping, const Point& x1, int max_iter, double tol,
                      const SolveOptions& options) {
  const Space& sp = *mapping.space();
  return run_iteration(
      sp, x1, max_iter, tol, options, "picard",
      [](int, const Point&, const Point& tx) { return tx; },
      [&](const Point& x) { return sp.canonicalize(mapping.apply(x)); });
}

IterationTrace mann(const Mapping& mapping, const Point& x1, const StepSchedule& schedule,
                    int max_iter, double tol, const SolveOptions& options) {
  const Space& sp = *mapping.space();
  return run_iteration(
      sp, x1, max_iter, tol, options, schedule.name(),
      [&](int n, const Point& x, const Point& tx) {
        return sp.combine(x, tx, schedule.alpha(n));
      },
      [&](const Point& x) { return sp.canonicalize(mapping.apply(x)); });
}

IterationTrace cyclic_picard(const std::vector<MappingPtr>& family, const Point& x1,
                             int max_iter, double tol, const SolveOptions& options) {
  if (family.empty()) throw std::domain_error("cyclic_picard: empty family");
  const Space& sp = *family.front()->space();
  for (const auto& m : family) {
    if (m->space()->tag() != sp.tag()) {
      throw std::domain_error("cyclic_picard: mappings live in different spaces");
    }
  }
  if (max_iter < 1) throw std::domain_error("cyclic_picard: max_iter must be >= 1");
  if (!(tol > 0.0)) throw std::domain_error("cyclic_picard: tol must be positive");

  IterationTrace trace;
  trace.schedule = "cyclic[" + std::to_string(family.size()) + "]";
  Point x = sp.canonicalize(x1);
  trace.iterates.push_back(x);
  if (options.ref_point) trace.ref_dists.push_back(sp.dist(*options.ref_point, x));

  double cap = -1.0;
  trace.termination = "max_iter";
  for (int cycle = 1; cycle <= max_iter; ++cycle) {
    const Point cycle_start = x;
    for (const auto& T : family) {
      const Point tx = sp.canonicalize(T->apply(x));
      const double residual = sp.dist(x, tx);
      if (cap < 0.0) cap = options.divergence_factor * (1.0 + residual);
      trace.residuals.push_back(residual);
      trace.steps.push_back(residual);
      trace.iterates.push_back(tx);
      if (options.ref_point) trace.ref_dists.push_back(sp.dist(*options.ref_point, tx));
      x = tx;
    }
    if (sp.dist(trace.iterates.front(), x) > cap) {
      trace.termination = "unbounded";
      break;
    }
    if (sp.dist(cycle_start, x) < tol) {
      trace.termination = "converged";
      break;
    }
  }

  trace.family_residuals.reserve(family.size());
  for (const auto& T : family) {
    trace.family_residuals.push_back(sp.dist(x, T->apply(x)));
  }
  return trace;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string trace_to_csv(const Space& space, const IterationTrace& trace) {
  std::string out = "n,residual,step,ref_dist";
  const bool tree = space.tag() == SpaceTag::Tree;
  int coord_cols = 0;
  if (tree) {
    out += ",edge,offset";
  } else if (space.tag() == SpaceTag::Hyperbolic) {
    coord_cols = static_cast<const HyperbolicSpace&>(space).dimension();
  } else {
    coord_cols = static_cast<const EuclideanSpace&>(space).dimension();
  }
  for (int c = 0; c < coord_cols; ++c) out += ",c" + std::to_string(c);
  out += "\n";

  for (size_t i = 0; i < trace.iterates.size(); ++i) {
    out += std::to_string(i + 1);
    out += ",";
    if (i < trace.residuals.size()) out += fmt(trace.residuals[i]);
    out += ",";
    if (i < trace.steps.size()) out += fmt(trace.steps[i]);
    out += ",";
    if (i < trace.ref_dists.size()) out += fmt(trace.ref_dists[i]);
    const Point& p = trace.iterates[i];
    if (tree) {
      out += "," + std::to_string(p.edge) + "," + fmt(p.offset);
    } else if (space.tag() == SpaceTag::Hyperbolic) {
      for (double c : static_cast<const HyperbolicSpace&>(space).to_disk(p)) {
        out += "," + fmt(c);
      }
    } else {
      for (double c : p.coords) out += "," + fmt(c);
    }
    out += "\n";
  }
  return out;
}

}  // namespace hadamard
