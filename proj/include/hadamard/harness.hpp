#ifndef HADAMARD_HARNESS_HPP
#define HADAMARD_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "hadamard/serialization.hpp"

namespace hadamard {

/// Exit-code contract shared by every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDivergence = 3;

struct HarnessOptions {
  std::string out_dir;  // artifacts land here when nonempty (created if needed)
  std::optional<std::uint64_t> seed_override;
  std::optional<int> jobs_override;
};

struct CommandResult {
  int exit_code{kExitPass};
  Json report;
};

/// Runs the Cauchy-Schwarz, bracket-identity, and convexity suites on the
/// configured space (plus the classification suite when a mapping is
/// declared) and writes report + manifest. Exit 0 iff every slack is within
/// tolerance and the declared expectations match.
CommandResult cmd_verify(const Json& config, const HarnessOptions& options = {});

/// Runs the configured Picard/Mann/cyclic iteration, writes the trace CSV
/// and the diagnostics JSON. Exit 0 on convergence or a clean max-iteration
/// stop, 3 when divergence is detected.
CommandResult cmd_iterate(const Json& config, const HarnessOptions& options = {});

/// Classifies the configured mapping and compares the verdicts against the
/// declared expectations. Exit 0 iff they match.
CommandResult cmd_classify(const Json& config, const HarnessOptions& options = {});

/// Asymptotic-center estimate of a points document
/// {"space": ..., "points": [...], "window": [start, end]?}.
CommandResult cmd_ac(const Json& config, const HarnessOptions& options = {});

/// Parses a config file; throws ConfigError on unreadable or invalid JSON.
Json load_config_file(const std::string& path);

/// FNV-1a hash of the canonical config dump, hex-encoded; pinned into every
/// manifest so artifacts can be traced back to their exact configuration.
std::string config_hash(const Json& config);

inline constexpr const char* kArtifactVersion = "0.1.0";

}  // namespace hadamard

#endif  // HADAMARD_HARNESS_HPP
