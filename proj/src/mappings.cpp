#include "hadamard/mappings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "hadamard/search.hpp"

namespace hadamard {

// ---------------------------------------------------------------------------
// project / prox
// ---------------------------------------------------------------------------

Point project(const ConvexSet& set, const Point& x) {
  detail::require_tag(*set.space(), x, "project");
  return detail_convex::nearest_point(set, x);
}

namespace {

// Exact minimizer of sum_j w_j d(y, p_j)^2 over a tree, by minimizing the
// piecewise quadratic restriction to every edge.
Point tree_weighted_sq_argmin(const TreeSpace& tree,
                              const std::vector<std::pair<Point, double>>& terms) {
  Point best;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<double> cuts;
  for (int e = 0; e < tree.edge_count(); ++e) {
    const auto& ed = tree.edge(e);
    const double len = ed.length;
    cuts.assign({0.0, len});
    for (const auto& [p, w] : terms) {
      (void)w;
      if (p.edge == e) {
        cuts.push_back(p.offset);
      } else {
        // Breakpoint where the route through u ties with the route through v.
        const double du = tree.dist_to_vertex(p, ed.u);
        const double dv = tree.dist_to_vertex(p, ed.v);
        const double t = (len + dv - du) / 2.0;
        if (t > 0.0 && t < len) cuts.push_back(t);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    // d_j(t) is linear on each piece, so the objective is one quadratic.
    auto objective_at = [&](double t) {
      double s = 0.0;
      for (const auto& [p, w] : terms) {
        const double d = (p.edge == e) ? std::abs(p.offset - t)
                                       : std::min(t + tree.dist_to_vertex(p, ed.u),
                                                  (len - t) + tree.dist_to_vertex(p, ed.v));
        s += w * d * d;
      }
      return s;
    };
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double lo = cuts[k], hi = cuts[k + 1];
      if (!(hi > lo)) continue;
      // Quadratic coefficients of sum w_j (s_j t + b_j)^2 on (lo, hi).
      double A = 0.0, B = 0.0;
      for (const auto& [p, w] : terms) {
        double slope, intercept;
        if (p.edge == e) {
          slope = (p.offset <= lo) ? 1.0 : -1.0;
          intercept = (p.offset <= lo) ? -p.offset : p.offset;
        } else {
          const double du = tree.dist_to_vertex(p, ed.u);
          const double dv = tree.dist_to_vertex(p, ed.v);
          const double mid = 0.5 * (lo + hi);
          if (mid + du <= (len - mid) + dv) {
            slope = 1.0;
            intercept = du;
          } else {
            slope = -1.0;
            intercept = len + dv;
          }
        }
        A += w;
        B += 2.0 * w * slope * intercept;
        // slope^2 == 1, so A accumulates plain weights.
      }
      double t = (A > 0.0) ? std::clamp(-B / (2.0 * A), lo, hi) : lo;
      for (double cand : {t, lo, hi}) {
        const double v = objective_at(cand);
        if (v < best_val) {
          best_val = v;
          best = tree.locus(e, cand);
        }
      }
    }
  }
  return best;
}

Point prox_weighted_frechet(const ConvexFunction& f, const Point& x) {
  const Space& sp = *f.space();
  switch (sp.tag()) {
    case SpaceTag::Euclidean: {
      // Stationarity of sum 2 w_i (y - a_i) + (y - x) = 0.
      double wsum = 0.0;
      std::vector<double> y(x.coords.size(), 0.0);
      for (const auto& [a, w] : f.anchors()) {
        wsum += w;
        for (size_t i = 0; i < y.size(); ++i) y[i] += 2.0 * w * a.coords[i];
      }
      const double denom = 2.0 * wsum + 1.0;
      for (size_t i = 0; i < y.size(); ++i) y[i] = (y[i] + x.coords[i]) / denom;
      return Point::euclidean(std::move(y));
    }
    case SpaceTag::Tree: {
      const auto& tree = static_cast<const TreeSpace&>(sp);
      std::vector<std::pair<Point, double>> terms = f.anchors();
      terms.emplace_back(tree.canonicalize(x), 0.5);
      return tree_weighted_sq_argmin(tree, terms);
    }
    case SpaceTag::Hyperbolic: {
      std::vector<Point> anchors;
      anchors.push_back(sp.canonicalize(x));
      for (const auto& [a, w] : f.anchors()) {
        (void)w;
        anchors.push_back(a);
      }
      SearchOptions opt;
      opt.objective_tol = 1e-12;
      opt.max_rounds = 120;
      auto obj = [&](const Point& y) {
        const double d = sp.dist(y, x);
        return eval_function(f, y) + 0.5 * d * d;
      };
      const SearchResult res = minimize_over_space(sp, anchors, obj, opt);
      if (!res.converged) {
        throw std::runtime_error(
            "prox: inner search failed to converge (last improvement " +
            std::to_string(res.refinement_residual) + ")");
      }
      return res.minimizer;
    }
  }
  throw std::logic_error("prox_weighted_frechet: unknown space tag");
}

}  // namespace

Point prox(const ConvexFunction& f, const Point& x) {
  const Space& sp = *f.space();
  detail::require_tag(sp, x, "prox");
  switch (f.kind()) {
    case ConvexFunction::Kind::HalfSqDistTo: {
      // argmin (w/2) d(y,a)^2 + 1/2 d(y,x)^2 sits on [x, a] at fraction
      // w / (1 + w); in the Euclidean model this is (w a + x) / (1 + w).
      return sp.combine(x, f.anchor(), f.weight() / (1.0 + f.weight()));
    }
    case ConvexFunction::Kind::DistTo: {
      const double d = sp.dist(x, f.anchor());
      if (d == 0.0) return sp.canonicalize(x);
      return sp.combine(x, f.anchor(), std::min(f.weight(), d) / d);
    }
    case ConvexFunction::Kind::IndicatorOf:
      return project(f.set(), x);
    case ConvexFunction::Kind::AffineEuclidean: {
      std::vector<double> y(x.coords);
      for (size_t i = 0; i < y.size(); ++i) y[i] -= f.gradient()[i];
      return Point::euclidean(std::move(y));
    }
    case ConvexFunction::Kind::WeightedFrechet:
      return prox_weighted_frechet(f, x);
  }
  throw std::logic_error("prox: unknown kind");
}

double resolvent_inclusion_slack(const ConvexFunction& f, const Point& x, const Point& z,
                                 const std::vector<Point>& samples) {
  const Space& sp = *f.space();
  const double fz = eval_function(f, z);
  double slack = std::numeric_limits<double>::infinity();
  for (const Point& y : samples) {
    const double fy = eval_function(f, y);
    if (std::isinf(fy)) continue;
    const double bracket = quasi_inner(sp, {z, x}, {z, y});
    slack = std::min(slack, fy - fz - bracket);
  }
  return slack;
}

// ---------------------------------------------------------------------------
// Mapping variants
// ---------------------------------------------------------------------------

namespace {

class IdentityMapping final : public Mapping {
public:
  explicit IdentityMapping(SpacePtr space) : Mapping(std::move(space)) {}
  Point apply(const Point& x) const override { return space_->canonicalize(x); }
  std::string describe() const override { return "identity"; }
};

class ProjectionMapping final : public Mapping {
public:
  explicit ProjectionMapping(ConvexSet set) : Mapping(set.space()), set_(std::move(set)) {}
  Point apply(const Point& x) const override { return project(set_, x); }
  std::string describe() const override { return "projection"; }
  std::optional<Point> fixed_point_hint() const override { return set_.any_point(); }

private:
  ConvexSet set_;
};

class ProxMapping final : public Mapping {
public:
  explicit ProxMapping(ConvexFunction f) : Mapping(f.space()), f_(std::move(f)) {}
  Point apply(const Point& x) const override { return prox(f_, x); }
  std::string describe() const override { return "prox"; }
  std::optional<Point> fixed_point_hint() const override {
    switch (f_.kind()) {
      case ConvexFunction::Kind::HalfSqDistTo:
      case ConvexFunction::Kind::DistTo:
        return f_.anchor();
      case ConvexFunction::Kind::IndicatorOf:
        return f_.set().any_point();
      default:
        return std::nullopt;  // minimizer not structurally known
    }
  }
  const ConvexFunction& function() const { return f_; }

private:
  ConvexFunction f_;
};

class CompositionMapping final : public Mapping {
public:
  explicit CompositionMapping(std::vector<MappingPtr> maps)
      : Mapping(maps.at(0)->space()), maps_(std::move(maps)) {
    for (const auto& m : maps_) {
      if (m->space()->tag() != space_->tag()) {
        throw std::domain_error("composition: mappings live in different spaces");
      }
    }
  }
  Point apply(const Point& x) const override {
    Point y = x;
    for (const auto& m : maps_) y = m->apply(y);
    return y;
  }
  std::string describe() const override { return "composition"; }

private:
  std::vector<MappingPtr> maps_;
};

}  // namespace

GluedMapping::GluedMapping(MappingPtr inner, MappingPtr outer, Point anchor, double r,
                           double delta)
    : Mapping(inner->space()),
      inner_(std::move(inner)),
      outer_(std::move(outer)),
      anchor_(space_->canonicalize(std::move(anchor))),
      r_(r),
      delta_(delta) {
  if (!(r > 0.0)) throw std::domain_error("glued: image radius must be positive");
  const double floor = (1.0 + 2.0 * std::sqrt(2.0)) * r;
  if (delta < floor - 1e-12) {
    throw std::domain_error("glued: delta = " + std::to_string(delta) +
                            " below (1 + 2 sqrt 2) r = " + std::to_string(floor));
  }
  if (outer_->space()->tag() != space_->tag()) {
    throw std::domain_error("glued: branch mappings live in different spaces");
  }
}

Point GluedMapping::apply(const Point& x) const {
  // Boundary belongs to the inner branch: the closed ball gets inner(x).
  return space_->dist(x, anchor_) <= delta_ ? inner_->apply(x) : outer_->apply(x);
}

std::string GluedMapping::describe() const { return "glued"; }

double glued_image_bound_slack(const GluedMapping& glued, const std::vector<Point>& samples) {
  const Space& sp = *glued.space();
  double worst = std::numeric_limits<double>::infinity();
  for (const Point& x : samples) {
    const double d_in = sp.dist(glued.anchor(), glued.inner()->apply(x));
    const double d_out = sp.dist(glued.anchor(), glued.outer()->apply(x));
    worst = std::min(worst, glued.image_radius() - std::max(d_in, d_out));
  }
  return worst;
}

MappingPtr make_identity(SpacePtr space) {
  return std::make_shared<IdentityMapping>(std::move(space));
}

MappingPtr make_projection(ConvexSet set) {
  return std::make_shared<ProjectionMapping>(std::move(set));
}

MappingPtr make_prox(ConvexFunction f) { return std::make_shared<ProxMapping>(std::move(f)); }

MappingPtr make_glued(MappingPtr inner, MappingPtr outer, Point anchor, double r, double delta) {
  return std::make_shared<GluedMapping>(std::move(inner), std::move(outer), std::move(anchor),
                                        r, delta);
}

MappingPtr make_composition(std::vector<MappingPtr> maps) {
  if (maps.empty()) throw std::domain_error("composition: empty mapping list");
  return std::make_shared<CompositionMapping>(std::move(maps));
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

namespace {

struct PairEval {
  double mns;
  double fmns;
  double nonexp;
  double quasi;  // min over the two endpoints; +inf when no fixed point
  double bracket_residual;
  double reform_residual;
  double image_spread;  // max distance of Tx, Ty from the reference image
};

PairEval evaluate_pair(const Space& sp, const Mapping& T, const Point& x, const Point& y,
                       const std::optional<Point>& u, const Point& image_ref) {
  const Point tx = T.apply(x);
  const Point ty = T.apply(y);
  const double d_txty = sp.dist(tx, ty);
  const double d_txy = sp.dist(tx, y);
  const double d_tyx = sp.dist(ty, x);
  const double d_txx = sp.dist(tx, x);
  const double d_tyy = sp.dist(ty, y);
  const double d_xy = sp.dist(x, y);

  PairEval out{};
  out.mns = d_txy * d_txy + d_tyx * d_tyx - 2.0 * d_txty * d_txty;
  out.fmns = out.mns - d_txx * d_txx - d_tyy * d_tyy;
  out.nonexp = d_xy - d_txty;

  const double bracket = quasi_inner(sp, {tx, ty}, {x, y}) - d_txty * d_txty;
  out.bracket_residual = std::abs(bracket - 0.5 * out.fmns);

  const double reform = d_tyy * d_tyy + 2.0 * quasi_inner(sp, {tx, ty}, {ty, y}) +
                        d_tyx * d_tyx - d_txty * d_txty;
  out.reform_residual = std::abs(out.mns - reform);

  if (u) {
    const double qx = sp.dist(*u, x) - sp.dist(*u, tx);
    const double qy = sp.dist(*u, y) - sp.dist(*u, ty);
    out.quasi = std::min(qx, qy);
  } else {
    out.quasi = std::numeric_limits<double>::infinity();
  }

  out.image_spread = std::max(sp.dist(tx, image_ref), sp.dist(ty, image_ref));
  return out;
}

std::vector<std::pair<Point, Point>> adversarial_pairs(const GluedMapping& glued,
                                                       const RegionSampler& sampler,
                                                       std::uint64_t seed, int count) {
  const Space& sp = *glued.space();
  std::vector<std::pair<Point, Point>> pairs;
  RandomStream rng(seed ^ 0xad7e25a11ull);
  for (int i = 0; i < count && static_cast<int>(pairs.size()) < count; ++i) {
    const Point probe = sampler.sample(rng);
    const double d = sp.dist(glued.anchor(), probe);
    if (d <= glued.delta()) continue;  // need room beyond the sphere
    for (double eps : {1e-9, 1e-6, 1e-3, 1e-2}) {
      const double out_frac = std::min(glued.delta() * (1.0 + eps), d) / d;
      const Point on_sphere = sp.combine(glued.anchor(), probe, glued.delta() / d);
      const Point just_outside = sp.combine(glued.anchor(), probe, out_frac);
      pairs.emplace_back(on_sphere, just_outside);
      pairs.emplace_back(just_outside, on_sphere);
    }
  }
  return pairs;
}

}  // namespace

ClassificationReport classify(const Mapping& mapping, const RegionSampler& sampler,
                              std::uint64_t seed, int n,
                              const std::optional<Point>& fixed_point,
                              const ClassifyOptions& options) {
  if (n < 1) throw std::domain_error("classify: need at least one sample");
  const Space& sp = *mapping.space();

  std::optional<Point> u;
  if (fixed_point) {
    u = sp.canonicalize(*fixed_point);
    const double drift = sp.dist(*u, mapping.apply(*u));
    if (drift > 1e-7) {
      throw std::domain_error("classify: supplied fixed point moves by " +
                              std::to_string(drift));
    }
  }

  std::vector<std::pair<Point, Point>> pairs = sampler.sample_pairs(seed, n);
  if (options.adversarial) {
    if (const auto* glued = dynamic_cast<const GluedMapping*>(&mapping)) {
      auto extra = adversarial_pairs(*glued, sampler, seed, std::max(16, n / 100));
      pairs.insert(pairs.end(), extra.begin(), extra.end());
    }
  }

  const Point image_ref = mapping.apply(pairs.front().first);
  std::vector<PairEval> evals(pairs.size());

  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    for (size_t i = 0; i < pairs.size(); ++i) {
      evals[i] = evaluate_pair(sp, mapping, pairs[i].first, pairs[i].second, u, image_ref);
    }
  } else {
    std::vector<std::thread> workers;
    const size_t chunk = (pairs.size() + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
      const size_t lo = w * chunk;
      const size_t hi = std::min(pairs.size(), lo + chunk);
      if (lo >= hi) break;
      workers.emplace_back([&, lo, hi] {
        for (size_t i = lo; i < hi; ++i) {
          evals[i] = evaluate_pair(sp, mapping, pairs[i].first, pairs[i].second, u, image_ref);
        }
      });
    }
    for (auto& t : workers) t.join();
  }

  // Sequential min-reduction in sample order: first strict improvement wins,
  // so the result does not depend on the worker count.
  ClassificationReport report;
  report.n_samples = static_cast<int>(pairs.size());
  report.tolerance = options.tolerance;
  if (u) report.quasi.emplace();
  for (size_t i = 0; i < evals.size(); ++i) {
    const PairEval& e = evals[i];
    if (e.mns < report.mns.worst_slack) {
      report.mns.worst_slack = e.mns;
      report.mns.witness = pairs[i];
    }
    if (e.fmns < report.fmns.worst_slack) {
      report.fmns.worst_slack = e.fmns;
      report.fmns.witness = pairs[i];
    }
    if (e.nonexp < report.nonexpansive.worst_slack) {
      report.nonexpansive.worst_slack = e.nonexp;
      report.nonexpansive.witness = pairs[i];
    }
    if (report.quasi && e.quasi < report.quasi->worst_slack) {
      report.quasi->worst_slack = e.quasi;
      report.quasi->witness = pairs[i];
    }
    report.max_bracket_residual = std::max(report.max_bracket_residual, e.bracket_residual);
    report.max_reform_residual = std::max(report.max_reform_residual, e.reform_residual);
    report.image_radius = std::max(report.image_radius, e.image_spread);
  }
  report.image_diameter_bound = 2.0 * report.image_radius;

  const double tol = options.tolerance;
  report.mns.pass = report.mns.worst_slack >= -tol;
  report.fmns.pass = report.fmns.worst_slack >= -tol;
  report.nonexpansive.pass = report.nonexpansive.worst_slack >= -tol;
  if (report.quasi) report.quasi->pass = report.quasi->worst_slack >= -tol;
  return report;
}

}  // namespace hadamard
