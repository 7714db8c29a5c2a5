#include "scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <set>

namespace galikit::tools {

namespace {

using nlohmann::json;

class Violations {
 public:
  void add(const std::string& msg) { items_.push_back(msg); }
  bool require(bool ok, const std::string& msg) {
    if (!ok) add(msg);
    return ok;
  }
  void raise_if_any() const {
    if (items_.empty()) return;
    std::string joined = "invalid scenario:";
    for (const auto& item : items_) joined += "\n  - " + item;
    throw ScenarioError(joined);
  }

 private:
  std::vector<std::string> items_;
};

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& path, Violations& v) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      v.add(path + ": unknown key \"" + key + "\"");
    }
  }
}

bool get_number(const json& obj, const char* key, const std::string& path,
                Violations& v, double& out, bool required = false) {
  if (!obj.contains(key)) {
    if (required) v.add(path + "." + key + ": missing required field");
    return false;
  }
  if (!obj[key].is_number()) {
    v.add(path + "." + key + ": expected a number");
    return false;
  }
  out = obj[key].get<double>();
  return true;
}

bool get_vec3(const json& obj, const char* key, const std::string& path,
              Violations& v, Vec3& out, bool required = false) {
  if (!obj.contains(key)) {
    if (required) v.add(path + "." + key + ": missing required field");
    return false;
  }
  const json& a = obj[key];
  if (!a.is_array() || a.size() != 3 ||
      !std::all_of(a.begin(), a.end(), [](const json& x) { return x.is_number(); })) {
    v.add(path + "." + key + ": expected an array of 3 numbers");
    return false;
  }
  out = Vec3(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
  return true;
}

bool get_matrix(const json& obj, const char* key, const std::string& path,
                Violations& v, Eigen::Ref<Eigen::MatrixXd> out,
                bool required = false) {
  const auto n = static_cast<std::size_t>(out.rows() * out.cols());
  if (!obj.contains(key)) {
    if (required) v.add(path + "." + key + ": missing required field");
    return false;
  }
  const json& a = obj[key];
  if (!a.is_array() || a.size() != n ||
      !std::all_of(a.begin(), a.end(), [](const json& x) { return x.is_number(); })) {
    v.add(path + "." + key + ": expected a row-major array of " +
          std::to_string(n) + " numbers");
    return false;
  }
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    for (Eigen::Index c = 0; c < out.cols(); ++c) {
      out(r, c) = a[static_cast<std::size_t>(r * out.cols() + c)].get<double>();
    }
  }
  return true;
}

void parse_grid(const json& obj, const std::string& path, Violations& v,
                double& duration, double& dt, std::size_t& stride) {
  get_number(obj, "duration", path, v, duration);
  get_number(obj, "dt", path, v, dt);
  v.require(duration > 0.0 && std::isfinite(duration),
            path + ".duration: must be positive");
  v.require(dt > 0.0 && std::isfinite(dt), path + ".dt: must be positive");
  if (obj.contains("output_stride")) {
    double s = 1.0;
    get_number(obj, "output_stride", path, v, s);
    v.require(s >= 1.0 && s == std::floor(s),
              path + ".output_stride: must be a positive integer");
    stride = static_cast<std::size_t>(std::max(1.0, s));
  }
}

EarthSimScenario parse_earth_sim(const json& root, Violations& v) {
  EarthSimScenario s;
  check_keys(root,
             {"kind", "seed", "duration", "dt", "method", "earth", "initial",
              "imu", "gravity_correction", "output_stride"},
             "earth-sim", v);
  parse_grid(root, "earth-sim", v, s.duration, s.dt, s.output_stride);

  if (root.contains("method")) {
    const std::string method = root["method"].is_string()
                                   ? root["method"].get<std::string>()
                                   : std::string();
    if (method == "rk4") {
      s.method = IntegrationMethod::Rk4;
    } else if (method == "lie-euler") {
      s.method = IntegrationMethod::LieEuler;
    } else {
      v.add("earth-sim.method: expected \"rk4\" or \"lie-euler\"");
    }
  }

  if (root.contains("earth") && root["earth"].is_object()) {
    const json& e = root["earth"];
    check_keys(e, {"omega_e", "g_a"}, "earth-sim.earth", v);
    get_vec3(e, "omega_e", "earth-sim.earth", v, s.earth.omega_e);
    get_number(e, "g_a", "earth-sim.earth", v, s.earth.g_a);
  }
  v.require(s.earth.omega_e.norm() < 1e-3,
            "earth-sim.earth.omega_e: magnitude must be below 1e-3 rad/s");
  v.require(s.earth.g_a > 9.0 && s.earth.g_a < 10.5,
            "earth-sim.earth.g_a: must lie in (9.0, 10.5) m/s^2");

  Vec3 axis_angle = Vec3::Zero();
  if (root.contains("initial") && root["initial"].is_object()) {
    const json& i = root["initial"];
    check_keys(i, {"attitude_axis_angle", "velocity", "position"},
               "earth-sim.initial", v);
    get_vec3(i, "attitude_axis_angle", "earth-sim.initial", v, axis_angle);
    get_vec3(i, "velocity", "earth-sim.initial", v, s.initial.velocity);
    get_vec3(i, "position", "earth-sim.initial", v, s.initial.position);
  }
  if (v.require(axis_angle.norm() < M_PI,
                "earth-sim.initial.attitude_axis_angle: angle must be below pi")) {
    s.initial.rotation = Rotation3::exp(axis_angle);
  }

  // The accelerometer of a body at rest reads the perceived gravity, so
  // that is the hover default.
  s.imu.proper_accel = s.earth.g_a * Vec3::UnitZ();
  if (root.contains("imu") && root["imu"].is_object()) {
    const json& i = root["imu"];
    check_keys(i, {"omega", "accel"}, "earth-sim.imu", v);
    get_vec3(i, "omega", "earth-sim.imu", v, s.imu.angular_velocity);
    get_vec3(i, "accel", "earth-sim.imu", v, s.imu.proper_accel);
  }

  if (root.contains("gravity_correction") && !root["gravity_correction"].is_null()) {
    const json& g = root["gravity_correction"];
    if (!g.is_object()) {
      v.add("earth-sim.gravity_correction: expected an object");
    } else {
      check_keys(g, {"at_reference", "at_body"}, "earth-sim.gravity_correction", v);
      GravityCorrection corr;
      get_vec3(g, "at_reference", "earth-sim.gravity_correction", v,
               corr.at_reference, true);
      get_vec3(g, "at_body", "earth-sim.gravity_correction", v, corr.at_body, true);
      s.gravity_correction = corr;
    }
  }
  return s;
}

GdhFkScenario parse_gdh_fk(const json& root, Violations& v) {
  GdhFkScenario s;
  check_keys(root, {"kind", "seed", "duration", "dt", "links", "output_stride"},
             "gdh-fk", v);
  parse_grid(root, "gdh-fk", v, s.duration, s.dt, s.output_stride);

  if (!root.contains("links") || !root["links"].is_array() || root["links"].empty()) {
    v.add("gdh-fk.links: expected a non-empty array of links");
    return s;
  }
  std::size_t index = 0;
  for (const json& l : root["links"]) {
    const std::string path = "gdh-fk.links[" + std::to_string(index++) + "]";
    if (!l.is_object()) {
      v.add(path + ": expected an object");
      continue;
    }
    check_keys(l, {"kind", "theta", "d", "a", "alpha", "q", "w", "qdot", "wdot"},
               path, v);
    GdhLink link;
    const std::string kind =
        l.contains("kind") && l["kind"].is_string() ? l["kind"].get<std::string>()
                                                    : std::string();
    if (kind == "revolute") {
      link.kind = JointKind::Revolute;
    } else if (kind == "prismatic") {
      link.kind = JointKind::Prismatic;
    } else {
      v.add(path + ".kind: expected \"revolute\" or \"prismatic\"");
      continue;
    }
    get_number(l, "theta", path, v, link.theta);
    get_number(l, "d", path, v, link.d);
    get_number(l, "a", path, v, link.length);
    get_number(l, "alpha", path, v, link.alpha);
    get_number(l, "q", path, v, link.q);
    get_number(l, "w", path, v, link.w);
    get_number(l, "qdot", path, v, link.qdot);
    get_number(l, "wdot", path, v, link.wdot);
    try {
      link.validate();
      s.links.push_back(link);
    } catch (const std::invalid_argument& e) {
      v.add(path + ": " + e.what());
    }
  }
  return s;
}

FuseDemoScenario parse_fuse_demo(const json& root, Violations& v) {
  FuseDemoScenario s;
  check_keys(root, {"kind", "seed", "mode", "prior", "measurement",
                    "sample_measurement"},
             "fuse-demo", v);

  const std::string mode = root.contains("mode") && root["mode"].is_string()
                               ? root["mode"].get<std::string>()
                               : std::string();
  if (mode == "galilean") {
    s.mode = FuseDemoScenario::Mode::Galilean;
  } else if (mode == "classical") {
    s.mode = FuseDemoScenario::Mode::Classical;
  } else {
    v.add("fuse-demo.mode: expected \"galilean\" or \"classical\"");
  }

  GalileanFrame mean;
  Mat10 cov = Mat10::Identity();
  if (v.require(root.contains("prior") && root["prior"].is_object(),
                "fuse-demo.prior: missing required object")) {
    const json& p = root["prior"];
    check_keys(p, {"attitude_axis_angle", "velocity", "position", "time", "cov"},
               "fuse-demo.prior", v);
    Vec3 axis_angle = Vec3::Zero();
    get_vec3(p, "attitude_axis_angle", "fuse-demo.prior", v, axis_angle);
    if (v.require(axis_angle.norm() < M_PI,
                  "fuse-demo.prior.attitude_axis_angle: angle must be below pi")) {
      mean.rotation = Rotation3::exp(axis_angle);
    }
    get_vec3(p, "velocity", "fuse-demo.prior", v, mean.velocity);
    get_vec3(p, "position", "fuse-demo.prior", v, mean.position);
    get_number(p, "time", "fuse-demo.prior", v, mean.time);
    get_matrix(p, "cov", "fuse-demo.prior", v, cov, true);
  }
  try {
    s.prior = ConcentratedGaussian(mean, cov);
  } catch (const std::invalid_argument& e) {
    v.add(std::string("fuse-demo.prior.cov: ") + e.what());
  }

  const bool explicit_meas = root.contains("measurement");
  const bool sampled_meas = root.contains("sample_measurement");
  if (!v.require(explicit_meas != sampled_meas,
                 "fuse-demo: exactly one of \"measurement\" and "
                 "\"sample_measurement\" is required")) {
    return s;
  }

  Mat3 sigma_p = Mat3::Identity();
  double sigma_t = 0.0;
  if (explicit_meas) {
    const json& m = root["measurement"];
    check_keys(m, {"y", "tau", "sigma_p", "sigma_t"}, "fuse-demo.measurement", v);
    PositionMeasurement pm;
    get_vec3(m, "y", "fuse-demo.measurement", v, pm.position, true);
    get_number(m, "tau", "fuse-demo.measurement", v, pm.timestamp, true);
    get_matrix(m, "sigma_p", "fuse-demo.measurement", v, sigma_p, true);
    get_number(m, "sigma_t", "fuse-demo.measurement", v, sigma_t, true);
    pm.position_cov = sigma_p;
    pm.timestamp_var = sigma_t;
    try {
      pm.validate();
    } catch (const std::invalid_argument& e) {
      v.add(std::string("fuse-demo.measurement: ") + e.what());
    }
    s.measurement = pm;
  } else {
    const json& m = root["sample_measurement"];
    check_keys(m, {"true_position", "true_time", "sigma_p", "sigma_t"},
               "fuse-demo.sample_measurement", v);
    SampledMeasurement sm;
    get_vec3(m, "true_position", "fuse-demo.sample_measurement", v,
             sm.true_position, true);
    get_number(m, "true_time", "fuse-demo.sample_measurement", v, sm.true_time,
               true);
    get_matrix(m, "sigma_p", "fuse-demo.sample_measurement", v, sigma_p, true);
    get_number(m, "sigma_t", "fuse-demo.sample_measurement", v, sigma_t, true);
    sm.position_cov = sigma_p;
    sm.timestamp_var = sigma_t;
    v.require(sigma_t >= 0.0, "fuse-demo.sample_measurement.sigma_t: must be >= 0");
    s.measurement = sm;
  }
  return s;
}

PreintegrateScenario parse_preintegrate(const json& root, Violations& v) {
  PreintegrateScenario s;
  check_keys(root, {"kind", "seed", "samples", "profile", "reference_inputs"},
             "preintegrate", v);

  const bool has_samples = root.contains("samples");
  const bool has_profile = root.contains("profile");
  if (!v.require(has_samples != has_profile,
                 "preintegrate: exactly one of \"samples\" and \"profile\" is "
                 "required")) {
    return s;
  }

  if (has_samples) {
    if (!root["samples"].is_array() || root["samples"].size() < 2) {
      v.add("preintegrate.samples: expected an array of at least two samples");
      return s;
    }
    std::size_t index = 0;
    for (const json& j : root["samples"]) {
      const std::string path = "preintegrate.samples[" + std::to_string(index++) + "]";
      if (!j.is_object()) {
        v.add(path + ": expected an object");
        continue;
      }
      check_keys(j, {"t", "omega", "accel"}, path, v);
      ImuSample sample;
      get_number(j, "t", path, v, sample.timestamp, true);
      get_vec3(j, "omega", path, v, sample.angular_velocity);
      get_vec3(j, "accel", path, v, sample.proper_accel);
      s.samples.push_back(sample);
    }
    for (std::size_t i = 0; i + 1 < s.samples.size(); ++i) {
      if (!(s.samples[i + 1].timestamp > s.samples[i].timestamp)) {
        v.add("preintegrate.samples: timestamps must be strictly increasing");
        break;
      }
    }
  } else {
    const json& p = root["profile"];
    if (!p.is_object()) {
      v.add("preintegrate.profile: expected an object");
      return s;
    }
    check_keys(p, {"rate_hz", "duration", "omega_amplitude", "accel_amplitude",
                   "frequency"},
               "preintegrate.profile", v);
    double rate_hz = 100.0, duration = 1.0, frequency = 1.0;
    Vec3 omega_amp = Vec3::Zero(), accel_amp = Vec3::Zero();
    get_number(p, "rate_hz", "preintegrate.profile", v, rate_hz);
    get_number(p, "duration", "preintegrate.profile", v, duration);
    get_number(p, "frequency", "preintegrate.profile", v, frequency);
    get_vec3(p, "omega_amplitude", "preintegrate.profile", v, omega_amp);
    get_vec3(p, "accel_amplitude", "preintegrate.profile", v, accel_amp);
    if (!v.require(rate_hz > 0.0 && duration > 0.0 && frequency >= 0.0,
                   "preintegrate.profile: rate_hz and duration must be positive, "
                   "frequency non-negative")) {
      return s;
    }
    const auto n = static_cast<std::size_t>(std::llround(rate_hz * duration));
    if (!v.require(n >= 1, "preintegrate.profile: fewer than two samples")) {
      return s;
    }
    for (std::size_t j = 0; j <= n; ++j) {
      const double t = static_cast<double>(j) / rate_hz;
      const double phase = 2.0 * M_PI * frequency * t;
      s.samples.push_back(
          {omega_amp * std::sin(phase), accel_amp * std::cos(phase), t});
    }
  }

  if (root.contains("reference_inputs")) {
    if (!root["reference_inputs"].is_array()) {
      v.add("preintegrate.reference_inputs: expected an array");
      return s;
    }
    std::size_t index = 0;
    for (const json& j : root["reference_inputs"]) {
      const std::string path =
          "preintegrate.reference_inputs[" + std::to_string(index++) + "]";
      GalileanInput input;
      if (!j.is_object()) {
        v.add(path + ": expected an object");
        continue;
      }
      check_keys(j, {"omega", "accel"}, path, v);
      get_vec3(j, "omega", path, v, input.omega);
      get_vec3(j, "accel", path, v, input.accel);
      s.reference_inputs.push_back(input);
    }
    v.require(s.reference_inputs.size() == s.samples.size(),
              "preintegrate.reference_inputs: must match the sample count");
  }
  return s;
}

}  // namespace

const char* kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::EarthSim: return "earth-sim";
    case ScenarioKind::GdhFk: return "gdh-fk";
    case ScenarioKind::FuseDemo: return "fuse-demo";
    case ScenarioKind::Preintegrate: return "preintegrate";
  }
  return "?";
}

Scenario parse_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("invalid scenario: not valid JSON (missing "
                                    "\"kind\" and everything else): ") +
                        e.what());
  }

  Violations v;
  if (!root.is_object()) {
    v.add("top level: expected a JSON object with a \"kind\" field");
    v.raise_if_any();
  }
  if (!root.contains("kind") || !root["kind"].is_string()) {
    v.add("kind: missing required field");
    v.raise_if_any();
  }

  Scenario s;
  if (root.contains("seed")) {
    if (root["seed"].is_number_unsigned()) {
      s.seed = root["seed"].get<std::uint64_t>();
    } else {
      v.add("seed: expected an unsigned integer");
    }
  }

  const std::string kind = root["kind"].get<std::string>();
  if (kind == "earth-sim") {
    s.kind = ScenarioKind::EarthSim;
    s.params = parse_earth_sim(root, v);
  } else if (kind == "gdh-fk") {
    s.kind = ScenarioKind::GdhFk;
    s.params = parse_gdh_fk(root, v);
  } else if (kind == "fuse-demo") {
    s.kind = ScenarioKind::FuseDemo;
    s.params = parse_fuse_demo(root, v);
  } else if (kind == "preintegrate") {
    s.kind = ScenarioKind::Preintegrate;
    s.params = parse_preintegrate(root, v);
  } else {
    v.add("kind: unknown scenario kind \"" + kind + "\"");
  }

  v.raise_if_any();
  return s;
}

Scenario parse_scenario(const std::string& text, ScenarioKind expected_kind) {
  Scenario s = parse_scenario(text);
  if (s.kind != expected_kind) {
    throw ScenarioError(std::string("invalid scenario: config kind \"") +
                        kind_name(s.kind) + "\" does not match the subcommand \"" +
                        kind_name(expected_kind) + "\"");
  }
  return s;
}

}  // namespace galikit::tools
