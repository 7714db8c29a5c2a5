#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "galikit/fusion.hpp"
#include "galikit/kinematics.hpp"
#include "galikit/manipulator.hpp"

namespace galikit::tools {

/// Configuration is rejected as a whole; the message lists every violated
/// field, not just the first.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EarthSimScenario {
  double duration = 10.0;       // s
  double dt = 1e-3;             // s
  IntegrationMethod method = IntegrationMethod::Rk4;
  EarthParams earth;
  IsochronousFrame initial;
  ImuSample imu;                // constant body input; accel defaults to hover
  std::optional<GravityCorrection> gravity_correction;
  std::size_t output_stride = 1;
};

struct GdhFkScenario {
  double duration = 2.0;  // s
  double dt = 1e-3;       // s
  GdhChain links;
  std::size_t output_stride = 1;
};

/// Measurement drawn around a ground-truth event instead of given
/// explicitly; requires a seed.
struct SampledMeasurement {
  Vec3 true_position = Vec3::Zero();
  double true_time = 0.0;
  Mat3 position_cov = Mat3::Identity();
  double timestamp_var = 0.0;
};

struct FuseDemoScenario {
  enum class Mode { Galilean, Classical };
  Mode mode = Mode::Galilean;
  ConcentratedGaussian prior;
  std::variant<PositionMeasurement, SampledMeasurement> measurement;
};

struct PreintegrateScenario {
  std::vector<ImuSample> samples;
  std::vector<GalileanInput> reference_inputs;  // empty or one per sample
};

enum class ScenarioKind { EarthSim, GdhFk, FuseDemo, Preintegrate };

struct Scenario {
  ScenarioKind kind = ScenarioKind::EarthSim;
  std::optional<std::uint64_t> seed;
  std::variant<EarthSimScenario, GdhFkScenario, FuseDemoScenario,
               PreintegrateScenario>
      params;
};

/// Parses and validates a JSON scenario description. Throws ScenarioError
/// listing every violated or unknown field.
Scenario parse_scenario(const std::string& text);

/// Like parse_scenario, but additionally requires the config's kind to
/// match the subcommand the user invoked.
Scenario parse_scenario(const std::string& text, ScenarioKind expected_kind);

struct RunOptions {
  std::filesystem::path out_dir;
  bool plot = false;
  std::optional<std::uint64_t> seed_override;
};

/// Runs the scenario and writes its CSV (and optional SVG) files into
/// out_dir. Throws ScenarioError for late config problems (e.g. missing
/// seed on a stochastic run), IoError for filesystem failures, and lets
/// core numerical errors propagate.
void run_scenario(const Scenario& scenario, const RunOptions& options);

const char* kind_name(ScenarioKind kind);

}  // namespace galikit::tools
