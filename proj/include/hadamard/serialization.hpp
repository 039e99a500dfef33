#ifndef HADAMARD_SERIALIZATION_HPP
#define HADAMARD_SERIALIZATION_HPP

#include <string>

#include "json.hpp"

#include "hadamard/convex.hpp"
#include "hadamard/mappings.hpp"
#include "hadamard/sampling.hpp"
#include "hadamard/solvers.hpp"

namespace hadamard {

using Json = nlohmann::json;

/// Schema violations surface as ConfigError so the harness can map them to
/// its config-error exit code; geometry-level domain errors inside a valid
/// schema are rethrown wrapped.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Space-native point encoding: a coordinate array for the Euclidean model,
/// a Poincare-disk coordinate array for the hyperbolic model, and
/// {"edge": id, "offset": t} or {"vertex": v} for trees.
Json point_to_json(const Space& space, const Point& p);
Point point_from_json(const SpacePtr& space, const Json& j);

/// {"type": "euclidean"|"hyperbolic", "dim": n} or
/// {"type": "tree", "vertices": N, "edges": [[u, v, length], ...]}.
SpacePtr space_from_json(const Json& j);
Json space_to_json(const Space& space);

ConvexSet set_from_json(const SpacePtr& space, const Json& j);
ConvexFunction function_from_json(const SpacePtr& space, const Json& j);
MappingPtr mapping_from_json(const SpacePtr& space, const Json& j);

StepSchedule schedule_from_json(const Json& j);

/// Sampler section {"center": point?, "radius": r?, "count": n, "seed": s};
/// center/radius default to the desk-scale region of the space.
RegionSampler sampler_from_json(const SpacePtr& space, const Json& j);

Json classification_to_json(const Space& space, const ClassificationReport& report);

}  // namespace hadamard

#endif  // HADAMARD_SERIALIZATION_HPP
