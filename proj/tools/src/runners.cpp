#include <Eigen/Cholesky>
#include <cmath>

#include "csv.hpp"
#include "galikit/rng.hpp"
#include "scenario.hpp"
#include "svg.hpp"

namespace galikit::tools {

namespace {

std::vector<std::string> frame_columns() {
  return {"time", "px",  "py",  "pz",  "vx",  "vy",  "vz",  "r11",
          "r12",  "r13", "r21", "r22", "r23", "r31", "r32", "r33"};
}

std::vector<double> frame_row(double t, const Mat5& m) {
  std::vector<double> row{t};
  for (int i = 0; i < 3; ++i) row.push_back(m(i, 4));
  for (int i = 0; i < 3; ++i) row.push_back(m(i, 3));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) row.push_back(m(r, c));
  return row;
}

void plot_path(const std::vector<Eigen::Vector2d>& path, const std::string& title,
               const std::filesystem::path& file) {
  SvgPlot plot(title, "x [m]", "y [m]");
  plot.polyline(path, "steelblue");
  if (!path.empty()) plot.marker(path.front(), "black");
  plot.save(file);
}

void run_earth_sim(const EarthSimScenario& s, const RunOptions& opt) {
  const auto field = [&](const Mat5& m, double) {
    return rotating_earth_field(m, s.imu, s.earth, s.gravity_correction);
  };
  const auto traj =
      integrate_raw(s.initial.matrix(), field, s.duration, s.dt, s.method);

  CsvWriter csv(opt.out_dir / "trajectory.csv");
  csv.header(frame_columns());
  std::vector<Eigen::Vector2d> path;
  for (std::size_t i = 0; i < traj.size(); i += s.output_stride) {
    csv.row(frame_row(traj[i].first, traj[i].second));
    path.emplace_back(traj[i].second(0, 4), traj[i].second(1, 4));
  }
  if ((traj.size() - 1) % s.output_stride != 0) {
    csv.row(frame_row(traj.back().first, traj.back().second));
    path.emplace_back(traj.back().second(0, 4), traj.back().second(1, 4));
  }
  if (opt.plot) {
    plot_path(path, "earth-sim position trace", opt.out_dir / "trajectory.svg");
  }
}

GdhChain advance_chain(const GdhChain& base, double t) {
  GdhChain out = base;
  for (auto& link : out) {
    if (link.kind == JointKind::Revolute) {
      link.theta += link.q * t + 0.5 * link.qdot * t * t;
      link.q += link.qdot * t;
    } else {
      link.d += link.w * t + 0.5 * link.wdot * t * t;
      link.w += link.wdot * t;
    }
  }
  return out;
}

void run_gdh_fk(const GdhFkScenario& s, const RunOptions& opt) {
  CsvWriter csv(opt.out_dir / "end_effector.csv");
  csv.header({"time", "px", "py", "pz", "pdx", "pdy", "pdz"});

  const auto steps = static_cast<std::size_t>(std::llround(s.duration / s.dt));
  std::vector<Eigen::Vector2d> path;
  for (std::size_t i = 0; i <= steps; i += s.output_stride) {
    const double t = static_cast<double>(i) * s.dt;
    const ExtendedPose ee = forward_kinematics(advance_chain(s.links, t));
    csv.row({t, ee.position.x(), ee.position.y(), ee.position.z(),
             ee.coordinate_velocity.x(), ee.coordinate_velocity.y(),
             ee.coordinate_velocity.z()});
    path.emplace_back(ee.position.x(), ee.position.y());
  }
  if (opt.plot) {
    plot_path(path, "gdh-fk end-effector path", opt.out_dir / "end_effector.svg");
  }
}

void run_fuse_demo(const FuseDemoScenario& s, const RunOptions& opt,
                   const std::optional<std::uint64_t>& seed) {
  PositionMeasurement measurement;
  if (const auto* given = std::get_if<PositionMeasurement>(&s.measurement)) {
    measurement = *given;
  } else {
    const auto& sampled = std::get<SampledMeasurement>(s.measurement);
    if (!seed) {
      throw ScenarioError(
          "invalid scenario: fuse-demo.sample_measurement requires a seed");
    }
    SplitMix64 rng(*seed);
    const Mat3 chol = Eigen::LLT<Mat3>(sampled.position_cov).matrixL();
    measurement.position = sampled.true_position + chol * rng.gaussian_vec3();
    measurement.timestamp =
        sampled.true_time + std::sqrt(sampled.timestamp_var) * rng.next_gaussian();
    measurement.position_cov = sampled.position_cov;
    measurement.timestamp_var = sampled.timestamp_var;
    measurement.validate();
  }

  const bool galilean = s.mode == FuseDemoScenario::Mode::Galilean;
  const FusionResult result = galilean ? map_update(s.prior, measurement)
                                       : classical_fuse(s.prior, measurement);

  {
    CsvWriter csv(opt.out_dir / "result.csv");
    std::vector<std::string> names{"mode"};
    const char* tangent_names[] = {"eps_att_x", "eps_att_y", "eps_att_z",
                                   "eps_vel_x", "eps_vel_y", "eps_vel_z",
                                   "eps_pos_x", "eps_pos_y", "eps_pos_z",
                                   "eps_time"};
    names.insert(names.end(), std::begin(tangent_names), std::end(tangent_names));
    for (const char* n : {"innov_x", "innov_y", "innov_z", "innov_t"})
      names.push_back(n);
    for (const char* n : {"post_px", "post_py", "post_pz", "post_vx", "post_vy",
                          "post_vz", "post_time"})
      names.push_back(n);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        names.push_back("poscov_" + std::to_string(r + 1) + std::to_string(c + 1));
    names.push_back("poscov_trace");
    csv.header(names);

    std::vector<double> row;
    for (int i = 0; i < 10; ++i) row.push_back(result.correction(i));
    for (int i = 0; i < 4; ++i) row.push_back(result.innovation(i));
    const GalileanFrame& mean = result.posterior.mean;
    for (int i = 0; i < 3; ++i) row.push_back(mean.position(i));
    for (int i = 0; i < 3; ++i) row.push_back(mean.velocity(i));
    row.push_back(mean.time);
    const Mat3 pos_cov = result.posterior.covariance.block<3, 3>(6, 6);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) row.push_back(pos_cov(r, c));
    row.push_back(pos_cov.trace());
    csv.row({galilean ? "galilean" : "classical"}, row);
  }

  {
    CsvWriter csv(opt.out_dir / "covariance.csv");
    std::vector<std::string> names;
    for (int c = 1; c <= 10; ++c) names.push_back("q" + std::to_string(c));
    csv.header(names);
    for (int r = 0; r < 10; ++r) {
      std::vector<double> row;
      for (int c = 0; c < 10; ++c) row.push_back(result.posterior.covariance(r, c));
      csv.row(row);
    }
  }

  if (opt.plot) {
    SvgPlot plot(std::string("fusion (") + (galilean ? "galilean" : "classical") +
                     ")",
                 "x [m]", "y [m]");
    const auto xy = [](const Vec3& p) { return Eigen::Vector2d(p.x(), p.y()); };
    plot.covariance_ellipse(xy(s.prior.mean.position),
                            s.prior.covariance.block<2, 2>(6, 6), "red");
    plot.marker(xy(s.prior.mean.position), "red");
    plot.arrow(xy(s.prior.mean.position),
               xy(s.prior.mean.position) +
                   Eigen::Vector2d(s.prior.mean.velocity.x(),
                                   s.prior.mean.velocity.y()),
               "red");
    plot.covariance_ellipse(xy(measurement.position),
                            measurement.position_cov.topLeftCorner<2, 2>(), "cyan");
    plot.marker(xy(measurement.position), "cyan");
    plot.covariance_ellipse(xy(result.posterior.mean.position),
                            result.posterior.covariance.block<2, 2>(6, 6), "blue");
    plot.marker(xy(result.posterior.mean.position), "blue");
    plot.save(opt.out_dir / "fusion.svg");
  }
}

void run_preintegrate(const PreintegrateScenario& s, const RunOptions& opt) {
  CsvWriter csv(opt.out_dir / "relative_frame.csv");
  auto names = frame_columns();
  names.insert(names.begin() + 1, "rel_time");
  csv.header(names);

  std::vector<Eigen::Vector2d> path;
  const auto emit = [&](double t, const GalileanFrame& f) {
    const Mat5 m = f.matrix();
    std::vector<double> row = frame_row(t, m);
    row.insert(row.begin() + 1, f.time);
    csv.row(row);
    path.emplace_back(f.position.x(), f.position.y());
  };

  // Walk the sample stream, emitting the accumulated relative frame.
  GalileanElement g = identity();
  emit(s.samples.front().timestamp, GalileanFrame::from_element(g));
  for (std::size_t j = 0; j + 1 < s.samples.size(); ++j) {
    const double dt = s.samples[j + 1].timestamp - s.samples[j].timestamp;
    const GalileanTangent body =
        make_tangent(s.samples[j].angular_velocity, s.samples[j].proper_accel,
                     Vec3::Zero(), 1.0);
    g = compose(g, exp(dt * body));
    if (!s.reference_inputs.empty()) {
      g = compose(exp(-dt * s.reference_inputs[j].tangent()), g);
    }
    emit(s.samples[j + 1].timestamp, GalileanFrame::from_element(g));
  }

  if (opt.plot) {
    plot_path(path, "preintegrated relative position", opt.out_dir / "relative_frame.svg");
  }
}

}  // namespace

void run_scenario(const Scenario& scenario, const RunOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + options.out_dir.string() +
                  ": " + ec.message());
  }
  const std::optional<std::uint64_t> seed =
      options.seed_override ? options.seed_override : scenario.seed;

  switch (scenario.kind) {
    case ScenarioKind::EarthSim:
      run_earth_sim(std::get<EarthSimScenario>(scenario.params), options);
      break;
    case ScenarioKind::GdhFk:
      run_gdh_fk(std::get<GdhFkScenario>(scenario.params), options);
      break;
    case ScenarioKind::FuseDemo:
      run_fuse_demo(std::get<FuseDemoScenario>(scenario.params), options, seed);
      break;
    case ScenarioKind::Preintegrate:
      run_preintegrate(std::get<PreintegrateScenario>(scenario.params), options);
      break;
  }
}

}  // namespace galikit::tools
