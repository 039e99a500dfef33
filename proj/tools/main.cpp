#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "hadamard/harness.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
};

void attach_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config JSON")->required();
  cmd->add_option("--out", args.out_dir, "output directory for artifacts");
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&args](std::uint64_t v) { args.seed = v; },
      "override the config seed");
  cmd->add_option_function<int>(
      "--jobs", [&args](int v) { args.jobs = v; }, "worker count for sample suites");
}

int dispatch(const std::string& name, const CommonArgs& args) {
  hadamard::Json config;
  try {
    config = hadamard::load_config_file(args.config_path);
  } catch (const hadamard::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return hadamard::kExitConfigError;
  }

  hadamard::HarnessOptions options;
  options.out_dir = args.out_dir.empty()
                        ? config.value("output", hadamard::Json::object()).value("dir", ".")
                        : args.out_dir;
  options.seed_override = args.seed;
  options.jobs_override = args.jobs;

  hadamard::CommandResult result;
  try {
    if (name == "verify") result = hadamard::cmd_verify(config, options);
    else if (name == "iterate") result = hadamard::cmd_iterate(config, options);
    else if (name == "classify") result = hadamard::cmd_classify(config, options);
    else result = hadamard::cmd_ac(config, options);
  } catch (const std::exception& e) {
    // numeric failures (e.g. an inner solver missing its tolerance)
    std::fprintf(stderr, "error: %s\n", e.what());
    return hadamard::kExitPropertyFailure;
  }

  std::printf("%s\n", result.report.dump(2).c_str());
  if (result.exit_code == hadamard::kExitConfigError) {
    std::fprintf(stderr, "config error: %s\n",
                 result.report.value("error", std::string("invalid config")).c_str());
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixed-point toolkit for Hadamard (complete CAT(0)) model spaces"};
  app.require_subcommand(1);

  CommonArgs verify_args, iterate_args, classify_args, ac_args;
  attach_common(app.add_subcommand("verify", "run the geometry and mapping property suites"),
                verify_args);
  attach_common(app.add_subcommand("iterate", "run a fixed-point iteration with diagnostics"),
                iterate_args);
  attach_common(app.add_subcommand("classify", "classify one mapping against expectations"),
                classify_args);
  attach_common(app.add_subcommand("ac", "asymptotic center of a points file"), ac_args);

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  const CommonArgs& args = name == "verify"     ? verify_args
                           : name == "iterate"  ? iterate_args
                           : name == "classify" ? classify_args
                                                : ac_args;
  return dispatch(name, args);
}
