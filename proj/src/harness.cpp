#include "hadamard/harness.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "hadamard/diagnostics.hpp"

namespace hadamard {

namespace {

constexpr std::uint64_t kDefaultSeed = 0x5eed5eed5eedull;

std::uint64_t effective_seed(const Json& config, const HarnessOptions& options) {
  if (options.seed_override) return *options.seed_override;
  if (config.contains("sampler") && config.at("sampler").contains("seed")) {
    return config.at("sampler").at("seed").get<std::uint64_t>();
  }
  if (config.contains("seed")) return config.at("seed").get<std::uint64_t>();
  return kDefaultSeed;
}

int effective_jobs(const Json& config, const HarnessOptions& options) {
  if (options.jobs_override) return std::max(1, *options.jobs_override);
  return std::max(1, config.value("jobs", 1));
}

void write_text(const std::string& dir, const std::string& name, const std::string& text) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  std::ofstream out(dir + "/" + name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + dir + "/" + name);
  out << text;
}

void write_json(const std::string& dir, const std::string& name, const Json& doc) {
  write_text(dir, name, doc.dump(2) + "\n");
}

class ManifestScope {
public:
  ManifestScope(const char* command, const Json& config, std::uint64_t seed,
                const HarnessOptions& options)
      : command_(command), options_(options), start_(std::chrono::steady_clock::now()) {
    manifest_["command"] = command_;
    manifest_["config_hash"] = config_hash(config);
    manifest_["seed"] = seed;
    manifest_["versions"] = Json{{"artifact", kArtifactVersion}};
  }

  ~ManifestScope() {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    manifest_["wall_time_s"] = std::chrono::duration<double>(elapsed).count();
    try {
      write_json(options_.out_dir, "manifest.json", manifest_);
    } catch (...) {
      // manifest emission never masks the command result
    }
  }

private:
  std::string command_;
  Json manifest_;
  const HarnessOptions& options_;
  std::chrono::steady_clock::time_point start_;
};

CommandResult config_failure(const std::string& what) {
  return {kExitConfigError, Json{{"error", what}}};
}

struct ExpectedVerdicts {
  std::optional<bool> mns, fmns, nonexpansive, quasi;
};

ExpectedVerdicts expected_from_json(const Json& j) {
  ExpectedVerdicts e;
  if (j.contains("expected")) {
    const Json& x = j.at("expected");
    if (x.contains("mns")) e.mns = x.at("mns").get<bool>();
    if (x.contains("fmns")) e.fmns = x.at("fmns").get<bool>();
    if (x.contains("nonexpansive")) e.nonexpansive = x.at("nonexpansive").get<bool>();
    if (x.contains("quasi")) e.quasi = x.at("quasi").get<bool>();
  }
  if (j.contains("property")) {
    // shorthand: this single property is expected to pass
    const std::string p = j.at("property").get<std::string>();
    if (p == "mns") e.mns = true;
    else if (p == "fmns") e.fmns = true;
    else if (p == "nonexpansive") e.nonexpansive = true;
    else if (p == "quasi") e.quasi = true;
    else throw ConfigError("unknown property \"" + p + "\"");
  }
  return e;
}

// Compares verdicts with expectations; returns mismatch descriptions.
std::vector<std::string> verdict_mismatches(const ClassificationReport& report,
                                            const ExpectedVerdicts& expected) {
  std::vector<std::string> out;
  auto check = [&](const char* name, bool actual, const std::optional<bool>& want) {
    if (want && *want != actual) {
      out.push_back(std::string(name) + ": expected " + (*want ? "pass" : "fail") +
                    ", got " + (actual ? "pass" : "fail"));
    }
  };
  check("mns", report.mns.pass, expected.mns);
  check("fmns", report.fmns.pass, expected.fmns);
  check("nonexpansive", report.nonexpansive.pass, expected.nonexpansive);
  if (expected.quasi) {
    check("quasi", report.quasi ? report.quasi->pass : false, expected.quasi);
  }
  return out;
}

Json run_classification(const SpacePtr& space, const Json& config, const Json& section,
                        std::uint64_t seed, int jobs, bool& pass) {
  const MappingPtr mapping = mapping_from_json(space, config.at("mapping"));
  const Json sampler_cfg = config.value("sampler", Json::object());
  const RegionSampler sampler = sampler_from_json(space, sampler_cfg);
  const int samples = section.value("samples", sampler_cfg.value("count", 10000));
  std::optional<Point> fixed_point;
  if (section.contains("fixed_point")) {
    fixed_point = point_from_json(space, section.at("fixed_point"));
  } else if (auto hint = mapping->fixed_point_hint()) {
    fixed_point = hint;
  }

  ClassifyOptions opt;
  opt.jobs = jobs;
  const ClassificationReport report =
      classify(*mapping, sampler, seed, samples, fixed_point, opt);

  Json out = classification_to_json(*space, report);
  const ExpectedVerdicts expected = expected_from_json(section);
  const std::vector<std::string> mismatches = verdict_mismatches(report, expected);
  out["expectation_mismatches"] = mismatches;
  pass = mismatches.empty();
  return out;
}

}  // namespace

std::string config_hash(const Json& config) {
  const std::string dump = config.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

CommandResult cmd_verify(const Json& config, const HarnessOptions& options) {
  try {
    const std::uint64_t seed = effective_seed(config, options);
    const int jobs = effective_jobs(config, options);
    ManifestScope manifest("verify", config, seed, options);

    const SpacePtr space = space_from_json(config.at("space"));
    const RegionSampler sampler =
        sampler_from_json(space, config.value("sampler", Json::object()));
    const Json verify = config.value("verify", Json::object());
    const int n_quadruples = verify.value("quadruples", 10000);
    const int n_quintuples = verify.value("quintuples", 1000);
    const int n_triples = verify.value("triples", 1000);

    Json report;
    report["space"] = space_to_json(*space);
    report["seed"] = seed;
    bool pass = true;

    {  // Cauchy-Schwarz sweep over random quadruples
      RandomStream rng(seed ^ 0xc5);
      double min_slack = std::numeric_limits<double>::infinity();
      Json witness;
      for (int i = 0; i < n_quadruples; ++i) {
        const Point x = sampler.sample(rng), y = sampler.sample(rng);
        const Point z = sampler.sample(rng), w = sampler.sample(rng);
        const double s = cauchy_schwarz_slack(*space, {x, y}, {z, w});
        if (s < min_slack) {
          min_slack = s;
          witness = Json::array({point_to_json(*space, x), point_to_json(*space, y),
                                 point_to_json(*space, z), point_to_json(*space, w)});
        }
      }
      const bool ok = min_slack >= -1e-9;
      pass = pass && ok;
      report["cauchy_schwarz"] =
          Json{{"quadruples", n_quadruples}, {"min_slack", min_slack},
               {"pass", ok},                 {"witness", witness}};
    }

    {  // bracket identities over random quintuples
      RandomStream rng(seed ^ 0x1d);
      double max_residual = 0.0;
      for (int i = 0; i < n_quintuples; ++i) {
        const Point x = sampler.sample(rng), y = sampler.sample(rng);
        const Point z = sampler.sample(rng), w = sampler.sample(rng);
        const Point p = sampler.sample(rng);
        for (double r : quasi_identity_residuals(*space, x, y, z, w, p)) {
          max_residual = std::max(max_residual, std::abs(r));
        }
      }
      const bool ok = max_residual < 1e-9;
      pass = pass && ok;
      report["quasilinearization"] =
          Json{{"quintuples", n_quintuples}, {"max_residual", max_residual}, {"pass", ok}};
    }

    {  // geodesic convexity over random triples
      RandomStream rng(seed ^ 0xc0);
      double min1 = std::numeric_limits<double>::infinity();
      double min2 = min1;
      for (int i = 0; i < n_triples; ++i) {
        const Point x = sampler.sample(rng), y = sampler.sample(rng);
        const Point z = sampler.sample(rng);
        for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0, rng.uniform(), rng.uniform()}) {
          const auto s = convexity_slacks(*space, x, y, z, alpha);
          min1 = std::min(min1, s[0]);
          min2 = std::min(min2, s[1]);
        }
      }
      const bool ok = min1 >= -1e-9 && min2 >= -1e-9;
      pass = pass && ok;
      report["convexity"] = Json{
          {"triples", n_triples}, {"min_slack1", min1}, {"min_slack2", min2}, {"pass", ok}};
    }

    if (config.contains("mapping")) {
      bool class_pass = true;
      report["classification"] = run_classification(
          space, config, config.value("classify", config.value("verify", Json::object())),
          seed, jobs, class_pass);
      pass = pass && class_pass;
    }

    report["pass"] = pass;
    write_json(options.out_dir, "report.json", report);
    return {pass ? kExitPass : kExitPropertyFailure, report};
  } catch (const ConfigError& e) {
    return config_failure(e.what());
  } catch (const Json::exception& e) {
    return config_failure(std::string("config schema: ") + e.what());
  } catch (const std::domain_error& e) {
    // domain errors here always trace back to config-supplied values
    return config_failure(e.what());
  }
}

// ---------------------------------------------------------------------------
// iterate
// ---------------------------------------------------------------------------

CommandResult cmd_iterate(const Json& config, const HarnessOptions& options) {
  try {
    const std::uint64_t seed = effective_seed(config, options);
    ManifestScope manifest("iterate", config, seed, options);

    const SpacePtr space = space_from_json(config.at("space"));
    const Json& solver = config.at("solver");
    const std::string method = solver.value("method", "picard");
    const int max_iter = solver.value("max_iter", 1000);
    const double tol = solver.value("tol", 1e-9);
    const Point start = point_from_json(space, solver.at("start"));

    SolveOptions sopt;
    if (solver.contains("fixed_point")) {
      sopt.ref_point = point_from_json(space, solver.at("fixed_point"));
    }

    IterationTrace trace;
    MappingPtr mapping;
    if (method == "cyclic") {
      std::vector<MappingPtr> family;
      for (const auto& m : config.at("mappings")) {
        family.push_back(mapping_from_json(space, m));
      }
      trace = cyclic_picard(family, start, max_iter, tol, sopt);
      mapping = family.front();
    } else if (method == "mann") {
      mapping = mapping_from_json(space, config.at("mapping"));
      const StepSchedule schedule = schedule_from_json(solver.at("schedule"));
      trace = mann(*mapping, start, schedule, max_iter, tol, sopt);
    } else if (method == "picard") {
      mapping = mapping_from_json(space, config.at("mapping"));
      trace = picard(*mapping, start, max_iter, tol, sopt);
    } else {
      throw ConfigError("solver: unknown method \"" + method + "\"");
    }

    const Json output = config.value("output", Json::object());
    write_text(options.out_dir, output.value("trace", "trace.csv"),
               trace_to_csv(*space, trace));

    Json report;
    report["schedule"] = trace.schedule;
    report["termination"] = trace.termination;
    report["iterations"] = trace.iterates.size() - 1;
    report["final_point"] = point_to_json(*space, trace.last());
    if (!trace.residuals.empty()) report["final_residual"] = trace.residuals.back();
    if (!trace.steps.empty()) report["final_step"] = trace.steps.back();
    if (!trace.family_residuals.empty()) report["family_residuals"] = trace.family_residuals;
    if (!trace.ref_dists.empty()) {
      double max_increase = 0.0;
      for (size_t i = 0; i + 1 < trace.ref_dists.size(); ++i) {
        max_increase = std::max(max_increase, trace.ref_dists[i + 1] - trace.ref_dists[i]);
      }
      report["fejer_max_increase"] = max_increase;
    }

    const Json diag_cfg = config.value("diagnostics", Json::object());
    if (diag_cfg.value("enabled", true) && !trace.diverged() &&
        static_cast<int>(trace.iterates.size()) >= 8) {
      const auto windows = default_windows(static_cast<int>(trace.iterates.size()));
      const DeltaLimitEstimate delta = delta_limit_estimate(*space, trace, windows);
      report["delta_limit"] = Json{{"estimate", point_to_json(*space, delta.estimate)},
                                   {"stability", delta.stability}};
      if (mapping && diag_cfg.value("demiclosedness", true)) {
        const DemiclosednessReport demi =
            demiclosedness_probe(*mapping, trace, windows.back());
        Json dj{{"status", demi.status}, {"pass", demi.pass},
                {"max_window_residual", demi.max_window_residual}};
        if (demi.status == "ok") {
          dj["center"] = point_to_json(*space, demi.center);
          dj["residual_at_center"] = demi.residual_at_center;
        }
        report["demiclosedness"] = dj;
      }
      if (method == "picard" && trace.iterates.size() >= 3) {
        const DoubleSequenceReport ds = double_sequence_residual(*space, trace.iterates);
        report["double_sequence"] = Json{{"hypothesis_slack", ds.hypothesis_slack},
                                         {"hypothesis_ok", ds.hypothesis_ok},
                                         {"trend_ok", ds.trend_ok},
                                         {"first", ds.consecutive.front()},
                                         {"last", ds.consecutive.back()}};
      }
    }

    write_json(options.out_dir, output.value("report", "diagnostics.json"), report);
    return {trace.diverged() ? kExitDivergence : kExitPass, report};
  } catch (const ConfigError& e) {
    return config_failure(e.what());
  } catch (const Json::exception& e) {
    return config_failure(std::string("config schema: ") + e.what());
  } catch (const std::domain_error& e) {
    // domain errors here always trace back to config-supplied values
    return config_failure(e.what());
  }
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

CommandResult cmd_classify(const Json& config, const HarnessOptions& options) {
  try {
    const std::uint64_t seed = effective_seed(config, options);
    const int jobs = effective_jobs(config, options);
    ManifestScope manifest("classify", config, seed, options);

    const SpacePtr space = space_from_json(config.at("space"));
    bool pass = true;
    Json report = run_classification(space, config, config.value("classify", Json::object()),
                                     seed, jobs, pass);
    report["pass"] = pass;
    write_json(options.out_dir, "report.json", report);
    return {pass ? kExitPass : kExitPropertyFailure, report};
  } catch (const ConfigError& e) {
    return config_failure(e.what());
  } catch (const Json::exception& e) {
    return config_failure(std::string("config schema: ") + e.what());
  } catch (const std::domain_error& e) {
    // domain errors here always trace back to config-supplied values
    return config_failure(e.what());
  }
}

// ---------------------------------------------------------------------------
// ac
// ---------------------------------------------------------------------------

CommandResult cmd_ac(const Json& config, const HarnessOptions& options) {
  try {
    const std::uint64_t seed = effective_seed(config, options);
    ManifestScope manifest("ac", config, seed, options);

    const SpacePtr space = space_from_json(config.at("space"));
    std::vector<Point> points;
    for (const auto& pj : config.at("points")) {
      points.push_back(point_from_json(space, pj));
    }
    int start = 0, end = static_cast<int>(points.size());
    if (config.contains("window")) {
      start = config.at("window").at(0).get<int>();
      end = config.at("window").at(1).get<int>();
    }
    AsymptoticCenterEstimate est;
    try {
      est = asymptotic_center(*space, points, start, end);
    } catch (const std::domain_error& e) {
      throw ConfigError(e.what());
    }

    Json report{{"center", point_to_json(*space, est.center)},
                {"radius", est.radius},
                {"window", Json::array({est.window_start, est.window_end})},
                {"refinement_residual", est.refinement_residual}};
    write_json(options.out_dir, "report.json", report);
    return {kExitPass, report};
  } catch (const ConfigError& e) {
    return config_failure(e.what());
  } catch (const Json::exception& e) {
    return config_failure(std::string("config schema: ") + e.what());
  } catch (const std::domain_error& e) {
    // domain errors here always trace back to config-supplied values
    return config_failure(e.what());
  }
}

}  // namespace hadamard
