#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "csv.hpp"
#include "galikit/errors.hpp"
#include "scenario.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;
constexpr int kExitIoError = 4;

struct SubcommandArgs {
  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool plot = false;
};

int run(galikit::tools::ScenarioKind kind, const SubcommandArgs& args) {
  using namespace galikit::tools;

  std::string text;
  {
    std::ifstream in(args.config, std::ios::binary);
    if (!in) {
      std::fprintf(stderr, "galikit: cannot read config file %s\n",
                   args.config.c_str());
      return kExitIoError;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }

  try {
    const Scenario scenario = parse_scenario(text, kind);
    RunOptions options;
    options.out_dir = args.out_dir;
    options.plot = args.plot;
    options.seed_override = args.seed;
    run_scenario(scenario, options);
    return 0;
  } catch (const ScenarioError& e) {
    std::fprintf(stderr, "galikit: %s\n", e.what());
    return kExitConfigError;
  } catch (const IoError& e) {
    std::fprintf(stderr, "galikit: %s\n", e.what());
    return kExitIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "galikit: %s\n", e.what());
    return kExitIoError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "galikit: numerical failure: %s\n", e.what());
    return kExitNumericalError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"galikit: desk-scale Galilean kinematics and fusion scenarios"};
  app.require_subcommand(1);

  const std::vector<std::pair<galikit::tools::ScenarioKind, const char*>> kinds{
      {galikit::tools::ScenarioKind::EarthSim,
       "Integrate strapdown kinematics against a rotating Earth-fixed frame"},
      {galikit::tools::ScenarioKind::GdhFk,
       "Evaluate serial-chain forward kinematics along a joint trajectory"},
      {galikit::tools::ScenarioKind::FuseDemo,
       "Fuse one position measurement under timestamp uncertainty"},
      {galikit::tools::ScenarioKind::Preintegrate,
       "Integrate a relative frame from an IMU sample stream"}};

  int exit_code = 0;
  std::vector<std::shared_ptr<SubcommandArgs>> all_args;
  for (const auto& [kind, description] : kinds) {
    auto args = std::make_shared<SubcommandArgs>();
    all_args.push_back(args);
    CLI::App* sub = app.add_subcommand(galikit::tools::kind_name(kind), description);
    sub->add_option("--config", args->config, "Scenario config file (JSON)")
        ->required();
    sub->add_option("--out", args->out_dir, "Output directory")->required();
    sub->add_option("--seed", args->seed, "RNG seed (overrides the config)");
    sub->add_flag("--plot", args->plot, "Also write SVG plots");
    const auto k = kind;
    sub->callback([&exit_code, k, args]() { exit_code = run(k, *args); });
  }

  CLI11_PARSE(app, argc, argv);
  return exit_code;
}
