#pragma once

#include <vector>

#include "galikit/frames.hpp"
#include "galikit/kinematics.hpp"

namespace galikit {

enum class JointKind { Revolute, Prismatic };

/// One link of a serial chain in the distal Denavit-Hartenberg convention,
/// extended with joint rates (q = dtheta/dt, w = dd/dt) and accelerations.
/// The DH length parameter is stored as `length` to keep it apart from the
/// link acceleration vector.
struct GdhLink {
  JointKind kind = JointKind::Revolute;
  double theta = 0.0;   // rad
  double d = 0.0;       // m, offset along the previous z
  double length = 0.0;  // m, the DH a parameter
  double alpha = 0.0;   // rad, twist
  double q = 0.0;       // rad/s, zero for prismatic joints
  double w = 0.0;       // m/s, zero for revolute joints
  double qdot = 0.0;    // rad/s^2
  double wdot = 0.0;    // m/s^2

  static GdhLink revolute(double theta, double d, double length, double alpha,
                          double q = 0.0, double qdot = 0.0);
  static GdhLink prismatic(double theta, double d, double length, double alpha,
                           double w = 0.0, double wdot = 0.0);

  /// Throws std::invalid_argument if a rate is set on the locked joint
  /// coordinate (w on a revolute link, q on a prismatic link).
  void validate() const;
};

/// Serial chain, base to end effector. Operations require at least one link.
using GdhChain = std::vector<GdhLink>;

/// The generalised-DH transformation of one link as an extended pose.
/// Deleting the velocity column (and its row) recovers the classical 4x4
/// DH matrix; the velocity column is the coordinate velocity of frame {i}
/// in frame {i-1}: (-a sin(theta) q, a cos(theta) q, w).
ExtendedPose gdh_matrix(const GdhLink& link);

/// End-effector pose and coordinate velocity. Rotation and position are
/// the ordered product of the link transformations (classical DH forward
/// kinematics); the velocity block is the time derivative of the
/// end-effector position, linear in the joint rates. It equals the
/// product's velocity column plus the rotated velocity-offset slot of
/// end_effector_input, which carries the sweep of downstream offsets by
/// upstream joint rotation.
ExtendedPose forward_kinematics(const GdhChain& chain);

/// Angular velocity of frame {i} relative to {i-1}, in {i} coordinates:
/// (0, q sin(alpha), q cos(alpha)).
Vec3 link_angular_velocity(const GdhLink& link);

/// Coordinate acceleration of frame {i} relative to {i-1}, in {i}
/// coordinates: (-a q^2, a cos(alpha) qdot + sin(alpha) wdot,
///               -a sin(alpha) qdot + cos(alpha) wdot).
Vec3 link_acceleration(const GdhLink& link);

/// Combined kinematic input of the end effector: the link inputs summed
/// after transport into the end-effector frame through the extended-pose
/// adjoint. Feeding this to extended_pose_field reproduces the derivative
/// of the forward kinematics along a joint trajectory.
GalileanInput end_effector_input(const GdhChain& chain);

}  // namespace galikit
