// Cross-cutting invariants of the shipped projection/prox instances.

#include "doctest.h"

#include "hadamard/diagnostics.hpp"
#include "shipped_instances.hpp"

using namespace hadamard;
using hadamard::testing::ShippedInstances;

namespace {

// A start that is not already fixed, so orbits have something to do.
Point moving_start(const testing::Instance& inst, std::uint64_t seed) {
  const RegionSampler region = default_region(inst.space);
  RandomStream rng(seed);
  for (int i = 0; i < 64; ++i) {
    const Point x = region.sample(rng);
    if (inst.space->dist(x, inst.mapping->apply(x)) > 1e-3) return x;
  }
  return region.sample(rng);
}

}  // namespace

TEST_CASE("shipped instances: orbits satisfy the double-sequence hypothesis") {
  const ShippedInstances fx;
  for (const auto& inst : fx.instances) {
    CAPTURE(inst.name);
    const Point x1 = moving_start(inst, 211);
    const auto trace = picard(*inst.mapping, x1, 200, 1e-12);
    REQUIRE(trace.iterates.size() >= 3);
    const auto rep = double_sequence_residual(*inst.space, trace.iterates);
    CHECK(rep.hypothesis_slack >= -1e-7);
    CHECK(rep.hypothesis_ok);
    CHECK(rep.trend_ok);
  }
}

TEST_CASE("shipped instances: delta stability for picard and mann tails") {
  const ShippedInstances fx;
  for (const auto& inst : fx.instances) {
    CAPTURE(inst.name);
    const Point x1 = moving_start(inst, 223);
    for (bool use_mann : {false, true}) {
      const auto trace =
          use_mann
              ? mann(*inst.mapping, x1, StepSchedule::constant(0.5), 1000, 1e-12)
              : picard(*inst.mapping, x1, 1000, 1e-12);
      const auto windows = default_windows(static_cast<int>(trace.iterates.size()));
      const auto delta = delta_limit_estimate(*inst.space, trace, windows);
      CHECK(delta.stability < 1e-3);
      // the estimate is nearly fixed
      CHECK(inst.space->dist(delta.estimate, inst.mapping->apply(delta.estimate)) < 1e-3);
    }
  }
}

TEST_CASE("shipped instances: classification hierarchy on the same sample set") {
  const ShippedInstances fx;
  for (const auto& inst : fx.instances) {
    CAPTURE(inst.name);
    const RegionSampler region = default_region(inst.space);
    const auto report = classify(*inst.mapping, region, 227, 1500, inst.fixed);
    // fmns pass => mns pass => quasi pass
    CHECK(report.fmns.pass);
    CHECK(report.mns.pass);
    REQUIRE(report.quasi.has_value());
    CHECK(report.quasi->pass);
    CHECK(report.mns.worst_slack >= report.fmns.worst_slack - 1e-15);
  }
}
