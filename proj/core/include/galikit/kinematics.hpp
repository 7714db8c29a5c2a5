#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "galikit/frames.hpp"

namespace galikit {

/// Exogenous input driving frame kinematics. omega and accel are the
/// Galilean angular velocity and acceleration; the vel_offset and
/// clock_rate slots complete the algebra embedding and are typically zero.
struct GalileanInput {
  Vec3 omega = Vec3::Zero();   // rad/s
  Vec3 accel = Vec3::Zero();   // m/s^2
  Vec3 vel_offset = Vec3::Zero();  // m/s
  double clock_rate = 0.0;

  GalileanTangent tangent() const {
    return make_tangent(omega, accel, vel_offset, clock_rate);
  }
  Mat5 matrix() const { return wedge(tangent()); }
  static GalileanInput from_tangent(const GalileanTangent& xi) {
    return {xi.segment<3>(kTangentOmega), xi.segment<3>(kTangentAccel),
            xi.segment<3>(kTangentVel), xi(kTangentClock)};
  }
};

/// The constant matrix N with single entry (4,5) = 1. It carries the
/// clock kinematics dt/ds = 1 and, through FN - NF, the linear kinematics
/// dp/ds = v.
Mat5 time_matrix();

// Derivative fields. Each op has a raw-matrix core (suffix _field) that the
// integrators evaluate at off-group intermediate stages, plus the typed
// form on frames.

/// Left-invariant kinematics against an inertial origin: dF = F (U + N).
Mat5 origin_field(const Mat5& frame, const GalileanInput& u);
Mat5 origin_derivative(const GalileanFrame& f, const GalileanInput& u);

/// Kinematics of an isochronous frame against an inertial reference:
/// dF = FN - NF + F U_body.
Mat5 isochronous_inertial_field(const Mat5& frame, const GalileanInput& body);
Mat5 isochronous_inertial_derivative(const IsochronousFrame& f,
                                     const GalileanInput& body);

/// Kinematics of an isochronous frame against a moving reference:
/// dF = FN - NF - U_ref F + F U_body.
Mat5 noninertial_field(const Mat5& frame, const GalileanInput& reference,
                       const GalileanInput& body);
Mat5 noninertial_derivative(const IsochronousFrame& f,
                            const GalileanInput& reference,
                            const GalileanInput& body);

/// One strapdown IMU reading: rate gyro plus accelerometer. The
/// accelerometer reports proper acceleration; gravity is never baked into
/// a sample and always enters through a GravityModel.
struct ImuSample {
  Vec3 angular_velocity = Vec3::Zero();  // rad/s, body frame
  Vec3 proper_accel = Vec3::Zero();      // m/s^2, body frame
  double timestamp = 0.0;                // s
};

/// Gravitational acceleration as a function of position, g(p), evaluated
/// in the same coordinates as p.
class GravityModel {
 public:
  static GravityModel zero() { return GravityModel(Kind::Zero); }
  static GravityModel uniform(const Vec3& g);
  static GravityModel point_mass(double mu, const Vec3& center);

  /// Throws SingularityError inside the 1 m exclusion ball of a point mass.
  Vec3 at(const Vec3& position) const;

 private:
  enum class Kind { Zero, Uniform, PointMass };
  explicit GravityModel(Kind kind) : kind_(kind) {}

  Kind kind_;
  Vec3 param_ = Vec3::Zero();  // uniform g, or point-mass center
  double mu_ = 0.0;            // m^3/s^2
};

/// IMU reading and gravity model bound to one frame of the relative
/// kinematics; position is where the gravity model is queried, in that
/// frame's own coordinates.
struct FrameImuInput {
  ImuSample imu;
  GravityModel gravity = GravityModel::zero();
  Vec3 position = Vec3::Zero();  // m
};

/// Relative kinematics driven by two IMUs with modelled gravity:
/// dF = FN - NF - U(w_A, a_A) F + F U(w_B, a_B)
///         - U(0, g_A(p_A)) F + F U(0, g_B(p_B)).
Mat5 imu_gravity_field(const Mat5& frame, const FrameImuInput& reference,
                       const FrameImuInput& body);
Mat5 imu_gravity_derivative(const FrameImuInput& reference,
                            const IsochronousFrame& f,
                            const FrameImuInput& body);

/// Earth-surface reference parameters. Aerospace convention: the z-axis
/// points into the Earth, so e3 is "down" and the perceived gravity at the
/// reference origin is +g_a * e3.
struct EarthParams {
  Vec3 omega_e = Vec3::Zero();  // rad/s, Earth rotation in reference coords
  double g_a = 9.81;            // m/s^2, local gravity magnitude

  /// Sanity bounds: ||omega_e|| < 1e-3 rad/s and 9.0 < g_a < 10.5.
  void validate() const;
};

/// Local gravity evaluated at the reference origin and at the body, for
/// callers that do not want the homogeneous-gravity approximation.
struct GravityCorrection {
  Vec3 at_reference = Vec3::Zero();  // g_A(p_A), reference coords
  Vec3 at_body = Vec3::Zero();       // g_B(p_B), body coords
};

/// Strapdown kinematics against an Earth-fixed rotating reference:
///   dR = -w_E^ R + R w_imu^
///   dv = -w_E x v - g_a e3 + R a_imu  [+ R g_B(p_B) - g_A(p_A)]
///   dp = -w_E x p + v
/// Without a correction the bracket is dropped (homogeneous gravity).
Mat5 rotating_earth_field(const Mat5& frame, const ImuSample& body,
                          const EarthParams& earth,
                          const std::optional<GravityCorrection>& correction = {});
Mat5 rotating_earth_derivative(const IsochronousFrame& f, const ImuSample& body,
                               const EarthParams& earth,
                               const std::optional<GravityCorrection>& correction = {});

enum class IntegrationMethod {
  /// F <- F * exp(dt * vee(F^-1 dF)); exact for piecewise-constant
  /// left-invariant inputs and closed under the group pattern.
  LieEuler,
  /// Classical RK4 on the 5x5 embedding with the rotation block
  /// re-projected onto SO(3) after every step.
  Rk4,
};

using MatrixField = std::function<Mat5(const Mat5& state, double time)>;

struct TrajectorySample {
  double time = 0.0;
  GalileanFrame state;
};

/// Integrates a matrix field over [0, t_span] in uniform steps of dt,
/// returning the state at every multiple of dt (including both endpoints).
/// Throws NumericalError naming the step index if the state stops being
/// finite.
std::vector<std::pair<double, Mat5>> integrate_raw(const Mat5& start,
                                                   const MatrixField& field,
                                                   double t_span, double dt,
                                                   IntegrationMethod method);

std::vector<TrajectorySample> integrate(const GalileanFrame& start,
                                        const MatrixField& field, double t_span,
                                        double dt, IntegrationMethod method);

/// Integrates the relative-frame kinematics
///   dF = F (U_j + N) - U_ref F
/// from the identity across the sample timestamps, with zero-order hold on
/// the inputs. Returns the relative frame between the first and last
/// sample times; its time entry is the elapsed duration. reference_inputs
/// is empty (no reference motion) or one entry per sample. Each hold
/// interval is advanced by the exact closed-form step
///   F <- exp(-dt U_ref) F exp(dt (U_j + N)),
/// so the result composes exactly across a split of the sample sequence.
GalileanFrame preintegrate(std::span<const ImuSample> samples,
                           std::span<const GalileanInput> reference_inputs = {});

/// Relative coordinate acceleration of a body against a moving reference,
/// expressed in the body frame. Contains the Coriolis (-2 w_ref x dp) and
/// centripetal (-w_ref x (w_ref x p)) terms:
///   a_rel = a_body - R^T a_ref - R^T (dw_ref x p) - 2 R^T (w_ref x dp)
///           - R^T (w_ref x (w_ref x p)).
Vec3 relative_coordinate_acceleration(const Vec3& accel_body, const Vec3& accel_ref,
                                      const Vec3& omega_ref, const Vec3& omega_ref_dot,
                                      const Rotation3& rotation, const Vec3& position,
                                      const Vec3& coordinate_velocity);

/// Relative kinematic angular velocity, w_body - R^T w_ref, in body coords.
Vec3 relative_angular_velocity(const Vec3& omega_body, const Vec3& omega_ref,
                               const Rotation3& rotation);

/// Extended-pose kinematics dK = KN - NK + K U_rel, where U_rel carries the
/// relative kinematic angular velocity and coordinate acceleration.
Mat5 extended_pose_field(const Mat5& pose, const GalileanInput& relative_input);
Mat5 extended_pose_derivative(const ExtendedPose& k,
                              const GalileanInput& relative_input);

}  // namespace galikit
