#include "galikit/kinematics.hpp"

#include <cmath>
#include <string>

#include "galikit/errors.hpp"

namespace galikit {

namespace {

constexpr double kPointMassExclusionRadius = 1.0;  // m

Mat5 pinned(Mat5 m) {
  // Rows 4-5 of a frame embedding are structural; products keep them exact,
  // but an RK4 update is a sum, so re-pin after each step.
  m.row(3).head<3>().setZero();
  m(3, 3) = 1.0;
  m.row(4).setZero();
  m(4, 4) = 1.0;
  m.block<3, 3>(0, 0) = Rotation3::project(m.block<3, 3>(0, 0)).matrix();
  return m;
}

void check_finite(const Mat5& m, std::size_t step) {
  if (!m.allFinite()) {
    throw NumericalError("integration state is not finite at step " +
                         std::to_string(step));
  }
}

}  // namespace

Mat5 time_matrix() {
  Mat5 n = Mat5::Zero();
  n(3, 4) = 1.0;
  return n;
}

Mat5 origin_field(const Mat5& frame, const GalileanInput& u) {
  return frame * (u.matrix() + time_matrix());
}

Mat5 origin_derivative(const GalileanFrame& f, const GalileanInput& u) {
  return origin_field(f.matrix(), u);
}

Mat5 isochronous_inertial_field(const Mat5& frame, const GalileanInput& body) {
  const Mat5 n = time_matrix();
  return frame * n - n * frame + frame * body.matrix();
}

Mat5 isochronous_inertial_derivative(const IsochronousFrame& f,
                                     const GalileanInput& body) {
  return isochronous_inertial_field(f.matrix(), body);
}

Mat5 noninertial_field(const Mat5& frame, const GalileanInput& reference,
                       const GalileanInput& body) {
  return isochronous_inertial_field(frame, body) - reference.matrix() * frame;
}

Mat5 noninertial_derivative(const IsochronousFrame& f,
                            const GalileanInput& reference,
                            const GalileanInput& body) {
  return noninertial_field(f.matrix(), reference, body);
}

GravityModel GravityModel::uniform(const Vec3& g) {
  GravityModel m(Kind::Uniform);
  m.param_ = g;
  return m;
}

GravityModel GravityModel::point_mass(double mu, const Vec3& center) {
  GravityModel m(Kind::PointMass);
  m.mu_ = mu;
  m.param_ = center;
  return m;
}

Vec3 GravityModel::at(const Vec3& position) const {
  switch (kind_) {
    case Kind::Zero:
      return Vec3::Zero();
    case Kind::Uniform:
      return param_;
    case Kind::PointMass: {
      const Vec3 d = param_ - position;
      const double r = d.norm();
      if (r < kPointMassExclusionRadius) {
        throw SingularityError(
            "GravityModel: point-mass model queried within 1 m of its center");
      }
      return (mu_ / (r * r * r)) * d;
    }
  }
  return Vec3::Zero();
}

Mat5 imu_gravity_field(const Mat5& frame, const FrameImuInput& reference,
                       const FrameImuInput& body) {
  const GalileanInput u_ref{reference.imu.angular_velocity,
                            reference.imu.proper_accel};
  const GalileanInput u_body{body.imu.angular_velocity, body.imu.proper_accel};
  const GalileanInput g_ref{Vec3::Zero(), reference.gravity.at(reference.position)};
  const GalileanInput g_body{Vec3::Zero(), body.gravity.at(body.position)};
  return noninertial_field(frame, u_ref, u_body) - g_ref.matrix() * frame +
         frame * g_body.matrix();
}

Mat5 imu_gravity_derivative(const FrameImuInput& reference,
                            const IsochronousFrame& f,
                            const FrameImuInput& body) {
  return imu_gravity_field(f.matrix(), reference, body);
}

void EarthParams::validate() const {
  if (!(omega_e.norm() < 1e-3)) {
    throw std::invalid_argument("EarthParams: ||omega_e|| must be below 1e-3 rad/s");
  }
  if (!(g_a > 9.0 && g_a < 10.5)) {
    throw std::invalid_argument("EarthParams: g_a must lie in (9.0, 10.5) m/s^2");
  }
}

Mat5 rotating_earth_field(const Mat5& frame, const ImuSample& body,
                          const EarthParams& earth,
                          const std::optional<GravityCorrection>& correction) {
  earth.validate();
  // The g_a e3 term is the negated proper (normal) acceleration of the
  // reference origin resting on the geoid, not the gravity field itself;
  // the optional correction carries the field difference.
  Vec3 accel_ref = earth.g_a * Vec3::UnitZ();
  Vec3 accel_body = body.proper_accel;
  if (correction) {
    accel_ref += correction->at_reference;
    accel_body += correction->at_body;
  }
  return noninertial_field(frame, GalileanInput{earth.omega_e, accel_ref},
                           GalileanInput{body.angular_velocity, accel_body});
}

Mat5 rotating_earth_derivative(const IsochronousFrame& f, const ImuSample& body,
                               const EarthParams& earth,
                               const std::optional<GravityCorrection>& correction) {
  return rotating_earth_field(f.matrix(), body, earth, correction);
}

std::vector<std::pair<double, Mat5>> integrate_raw(const Mat5& start,
                                                   const MatrixField& field,
                                                   double t_span, double dt,
                                                   IntegrationMethod method) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
  if (t_span < 0.0) throw std::invalid_argument("integrate: t_span must be non-negative");
  const auto steps = static_cast<std::size_t>(std::llround(t_span / dt));

  std::vector<std::pair<double, Mat5>> out;
  out.reserve(steps + 1);
  out.emplace_back(0.0, start);

  if (method == IntegrationMethod::LieEuler) {
    GalileanElement g = GalileanElement::from_matrix(start);
    for (std::size_t i = 0; i < steps; ++i) {
      const double t = static_cast<double>(i) * dt;
      const Mat5 m = g.matrix();
      const GalileanTangent xi = vee(inverse(g).matrix() * field(m, t));
      g = compose(g, exp(dt * xi));
      check_finite(g.matrix(), i + 1);
      out.emplace_back(static_cast<double>(i + 1) * dt, g.matrix());
    }
    return out;
  }

  Mat5 m = start;
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    const Mat5 k1 = field(m, t);
    const Mat5 k2 = field(m + 0.5 * dt * k1, t + 0.5 * dt);
    const Mat5 k3 = field(m + 0.5 * dt * k2, t + 0.5 * dt);
    const Mat5 k4 = field(m + dt * k3, t + dt);
    m = pinned(m + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    check_finite(m, i + 1);
    out.emplace_back(static_cast<double>(i + 1) * dt, m);
  }
  return out;
}

std::vector<TrajectorySample> integrate(const GalileanFrame& start,
                                        const MatrixField& field, double t_span,
                                        double dt, IntegrationMethod method) {
  const auto raw = integrate_raw(start.matrix(), field, t_span, dt, method);
  std::vector<TrajectorySample> out;
  out.reserve(raw.size());
  for (const auto& [t, m] : raw) {
    out.push_back({t, GalileanFrame::from_matrix(m)});
  }
  return out;
}

GalileanFrame preintegrate(std::span<const ImuSample> samples,
                           std::span<const GalileanInput> reference_inputs) {
  if (samples.size() < 2) {
    throw std::invalid_argument("preintegrate: need at least two samples");
  }
  if (!reference_inputs.empty() && reference_inputs.size() != samples.size()) {
    throw std::invalid_argument(
        "preintegrate: reference_inputs must be empty or match samples");
  }

  GalileanElement g = identity();
  for (std::size_t j = 0; j + 1 < samples.size(); ++j) {
    const double dt = samples[j + 1].timestamp - samples[j].timestamp;
    if (!(dt > 0.0)) {
      throw std::invalid_argument("preintegrate: timestamps must be strictly increasing");
    }
    // Body input plus the clock slot, so the relative time advances with dt.
    const GalileanTangent body = make_tangent(samples[j].angular_velocity,
                                              samples[j].proper_accel,
                                              Vec3::Zero(), 1.0);
    g = compose(g, exp(dt * body));
    if (!reference_inputs.empty()) {
      g = compose(exp(-dt * reference_inputs[j].tangent()), g);
    }
  }
  return GalileanFrame::from_element(g);
}

Vec3 relative_coordinate_acceleration(const Vec3& accel_body, const Vec3& accel_ref,
                                      const Vec3& omega_ref, const Vec3& omega_ref_dot,
                                      const Rotation3& rotation, const Vec3& position,
                                      const Vec3& coordinate_velocity) {
  const Rotation3 rt = rotation.transposed();
  return accel_body - rt * accel_ref - rt * omega_ref_dot.cross(position) -
         2.0 * (rt * omega_ref.cross(coordinate_velocity)) -
         rt * omega_ref.cross(omega_ref.cross(position));
}

Vec3 relative_angular_velocity(const Vec3& omega_body, const Vec3& omega_ref,
                               const Rotation3& rotation) {
  return omega_body - rotation.transposed() * omega_ref;
}

Mat5 extended_pose_field(const Mat5& pose, const GalileanInput& relative_input) {
  return isochronous_inertial_field(pose, relative_input);
}

Mat5 extended_pose_derivative(const ExtendedPose& k,
                              const GalileanInput& relative_input) {
  return extended_pose_field(k.matrix(), relative_input);
}

}  // namespace galikit
