#include "hadamard/serialization.hpp"

#include <fstream>
#include <sstream>

namespace hadamard {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

const Json& need(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    fail(std::string(where) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

std::string need_type(const Json& j, const char* where) {
  return need(j, "type", where).get<std::string>();
}

std::vector<double> double_array(const Json& j, const char* where) {
  if (!j.is_array()) fail(std::string(where) + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) fail(std::string(where) + ": expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

Json point_to_json(const Space& space, const Point& p) {
  switch (space.tag()) {
    case SpaceTag::Euclidean:
      return Json(p.coords);
    case SpaceTag::Hyperbolic:
      return Json(static_cast<const HyperbolicSpace&>(space).to_disk(p));
    case SpaceTag::Tree: {
      const auto& tree = static_cast<const TreeSpace&>(space);
      const Point c = tree.canonicalize(p);
      const int v = tree.vertex_of(c);
      if (v >= 0) return Json{{"vertex", v}};
      return Json{{"edge", c.edge}, {"offset", c.offset}};
    }
  }
  fail("point_to_json: unknown space tag");
}

Point point_from_json(const SpacePtr& space, const Json& j) {
  try {
    switch (space->tag()) {
      case SpaceTag::Euclidean:
        return space->canonicalize(Point::euclidean(double_array(j, "point")));
      case SpaceTag::Hyperbolic:
        return static_cast<const HyperbolicSpace&>(*space).from_disk(double_array(j, "point"));
      case SpaceTag::Tree: {
        const auto& tree = static_cast<const TreeSpace&>(*space);
        if (j.is_object() && j.contains("vertex")) {
          return tree.vertex_point(j.at("vertex").get<int>());
        }
        if (j.is_object() && j.contains("edge")) {
          return tree.locus(j.at("edge").get<int>(), j.at("offset").get<double>());
        }
        fail("point: tree points need {\"vertex\": v} or {\"edge\": e, \"offset\": t}");
      }
    }
  } catch (const std::domain_error& e) {
    fail(std::string("point: ") + e.what());
  } catch (const Json::exception& e) {
    fail(std::string("point: ") + e.what());
  }
  fail("point: unknown space tag");
}

SpacePtr space_from_json(const Json& j) {
  const std::string type = need_type(j, "space");
  try {
    if (type == "euclidean") return make_euclidean(need(j, "dim", "space").get<int>());
    if (type == "hyperbolic") return make_hyperbolic(need(j, "dim", "space").get<int>());
    if (type == "tree") {
      if (j.contains("file")) {
        std::ifstream in(j.at("file").get<std::string>());
        if (!in) fail("space: cannot open tree file " + j.at("file").get<std::string>());
        std::stringstream buf;
        buf << in.rdbuf();
        return std::make_shared<TreeSpace>(TreeSpace::from_json_text(buf.str()));
      }
      return std::make_shared<TreeSpace>(TreeSpace::from_json_text(j.dump()));
    }
  } catch (const std::domain_error& e) {
    fail(std::string("space: ") + e.what());
  } catch (const Json::exception& e) {
    fail(std::string("space: ") + e.what());
  }
  fail("space: unknown type \"" + type + "\"");
}

Json space_to_json(const Space& space) {
  switch (space.tag()) {
    case SpaceTag::Euclidean:
      return Json{{"type", "euclidean"},
                  {"dim", static_cast<const EuclideanSpace&>(space).dimension()}};
    case SpaceTag::Hyperbolic:
      return Json{{"type", "hyperbolic"},
                  {"dim", static_cast<const HyperbolicSpace&>(space).dimension()}};
    case SpaceTag::Tree: {
      const auto& tree = static_cast<const TreeSpace&>(space);
      Json edges = Json::array();
      for (int e = 0; e < tree.edge_count(); ++e) {
        edges.push_back({tree.edge(e).u, tree.edge(e).v, tree.edge(e).length});
      }
      return Json{{"type", "tree"}, {"vertices", tree.vertex_count()}, {"edges", edges}};
    }
  }
  fail("space_to_json: unknown space tag");
}

ConvexSet set_from_json(const SpacePtr& space, const Json& j) {
  const std::string type = need_type(j, "set");
  try {
    if (type == "ball") {
      return ConvexSet::ball(space, point_from_json(space, need(j, "center", "set")),
                             need(j, "radius", "set").get<double>());
    }
    if (type == "segment") {
      return ConvexSet::segment(space, point_from_json(space, need(j, "a", "set")),
                                point_from_json(space, need(j, "b", "set")));
    }
    if (type == "subtree") {
      return ConvexSet::subtree(space,
                                need(j, "vertices", "set").get<std::vector<int>>());
    }
    if (type == "halfspace") {
      return ConvexSet::halfspace(space, double_array(need(j, "normal", "set"), "set"),
                                  need(j, "offset", "set").get<double>());
    }
  } catch (const std::domain_error& e) {
    fail(std::string("set: ") + e.what());
  } catch (const Json::exception& e) {
    fail(std::string("set: ") + e.what());
  }
  fail("set: unknown type \"" + type + "\"");
}

ConvexFunction function_from_json(const SpacePtr& space, const Json& j) {
  const std::string type = need_type(j, "function");
  try {
    if (type == "half_sq_dist") {
      return ConvexFunction::half_sq_dist(space,
                                          point_from_json(space, need(j, "anchor", "function")),
                                          j.value("weight", 1.0));
    }
    if (type == "weighted_frechet") {
      std::vector<std::pair<Point, double>> anchors;
      for (const auto& row : need(j, "anchors", "function")) {
        anchors.emplace_back(point_from_json(space, need(row, "point", "function")),
                             row.value("weight", 1.0));
      }
      return ConvexFunction::weighted_frechet(space, std::move(anchors));
    }
    if (type == "indicator") {
      return ConvexFunction::indicator(set_from_json(space, need(j, "set", "function")));
    }
    if (type == "dist_to") {
      return ConvexFunction::dist_to(space,
                                     point_from_json(space, need(j, "anchor", "function")),
                                     j.value("weight", 1.0));
    }
    if (type == "affine") {
      return ConvexFunction::affine_euclidean(
          space, double_array(need(j, "gradient", "function"), "function"),
          j.value("constant", 0.0));
    }
  } catch (const std::domain_error& e) {
    fail(std::string("function: ") + e.what());
  } catch (const Json::exception& e) {
    fail(std::string("function: ") + e.what());
  }
  fail("function: unknown type \"" + type + "\"");
}

MappingPtr mapping_from_json(const SpacePtr& space, const Json& j) {
  const std::string type = need_type(j, "mapping");
  try {
    if (type == "identity") return make_identity(space);
    if (type == "projection") {
      return make_projection(set_from_json(space, need(j, "set", "mapping")));
    }
    if (type == "prox") {
      return make_prox(function_from_json(space, need(j, "function", "mapping")));
    }
    if (type == "glued") {
      return make_glued(mapping_from_json(space, need(j, "inner", "mapping")),
                        mapping_from_json(space, need(j, "outer", "mapping")),
                        point_from_json(space, need(j, "anchor", "mapping")),
                        need(j, "r", "mapping").get<double>(),
                        need(j, "delta", "mapping").get<double>());
    }
    if (type == "composition") {
      std::vector<MappingPtr> maps;
      for (const auto& m : need(j, "maps", "mapping")) {
        maps.push_back(mapping_from_json(space, m));
      }
      return make_composition(std::move(maps));
    }
  } catch (const std::domain_error& e) {
    fail(std::string("mapping: ") + e.what());
  } catch (const Json::exception& e) {
    fail(std::string("mapping: ") + e.what());
  }
  fail("mapping: unknown type \"" + type + "\"");
}

StepSchedule schedule_from_json(const Json& j) {
  const std::string type = need_type(j, "schedule");
  try {
    if (type == "constant") return StepSchedule::constant(need(j, "alpha", "schedule").get<double>());
    if (type == "harmonic") return StepSchedule::harmonic();
    if (type == "custom") {
      return StepSchedule::custom(double_array(need(j, "alphas", "schedule"), "schedule"));
    }
  } catch (const std::domain_error& e) {
    fail(std::string("schedule: ") + e.what());
  } catch (const Json::exception& e) {
    fail(std::string("schedule: ") + e.what());
  }
  fail("schedule: unknown type \"" + type + "\"");
}

RegionSampler sampler_from_json(const SpacePtr& space, const Json& j) {
  RegionSampler sampler = default_region(space);
  try {
    if (j.is_object()) {
      if (j.contains("center")) sampler.center = point_from_json(space, j.at("center"));
      if (j.contains("radius")) sampler.radius = j.at("radius").get<double>();
    }
  } catch (const Json::exception& e) {
    fail(std::string("sampler: ") + e.what());
  }
  return sampler;
}

Json classification_to_json(const Space& space, const ClassificationReport& report) {
  auto stat = [&](const PropertyStat& s) {
    return Json{{"worst_slack", s.worst_slack},
                {"pass", s.pass},
                {"witness",
                 Json{{"x", point_to_json(space, s.witness.first)},
                      {"y", point_to_json(space, s.witness.second)}}}};
  };
  Json out{{"n_samples", report.n_samples},
           {"tolerance", report.tolerance},
           {"metrically_nonspreading", stat(report.mns)},
           {"firmly_metrically_nonspreading", stat(report.fmns)},
           {"nonexpansive", stat(report.nonexpansive)},
           {"max_bracket_residual", report.max_bracket_residual},
           {"max_reform_residual", report.max_reform_residual},
           {"image_radius", report.image_radius},
           {"image_diameter_bound", report.image_diameter_bound}};
  if (report.quasi) out["quasinonexpansive"] = stat(*report.quasi);
  return out;
}

}  // namespace hadamard
