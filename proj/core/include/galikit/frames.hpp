#pragma once

#include "galikit/liegroup.hpp"

namespace galikit {

// Galilean frames and group elements share the same 5x5 embedding but mean
// different things: a frame is a set of spacetime coordinates, an element
// transforms spacetime. The types below keep them apart; as_element() /
// from_element() are the explicit bridge for the places (fusion, notably)
// that need frame matrices inside group-algebra expressions.

/// Pose of a rigid body in spacetime relative to a reference origin:
/// orientation, inertial velocity, position and time.
struct GalileanFrame {
  Rotation3 rotation;           // R
  Vec3 velocity = Vec3::Zero(); // v, inertial, m/s
  Vec3 position = Vec3::Zero(); // p, m
  double time = 0.0;            // t, s

  Mat5 matrix() const { return as_element().matrix(); }
  GalileanElement as_element() const {
    return {rotation, velocity, position, time};
  }
  static GalileanFrame from_element(const GalileanElement& g) {
    return {g.rotation, g.boost, g.translation, g.time_offset};
  }
  static GalileanFrame from_matrix(const Mat5& m) {
    return from_element(GalileanElement::from_matrix(m));
  }
};

/// A Galilean frame relative to a reference with the same time index: the
/// time slot is identically zero and stays so under composition.
struct IsochronousFrame {
  Rotation3 rotation;
  Vec3 velocity = Vec3::Zero();  // inertial, m/s
  Vec3 position = Vec3::Zero();  // m

  Mat5 matrix() const { return as_frame().matrix(); }
  GalileanFrame as_frame() const { return {rotation, velocity, position, 0.0}; }

  /// Throws StructureError if the time entry is not exactly zero.
  static IsochronousFrame from_frame(const GalileanFrame& f);
};

/// Pose carrying the coordinate velocity dp/dt instead of the inertial
/// velocity. Same embedding as an isochronous frame; different meaning,
/// different kinematics.
struct ExtendedPose {
  Rotation3 rotation;
  Vec3 coordinate_velocity = Vec3::Zero();  // dp/dt, m/s
  Vec3 position = Vec3::Zero();             // m

  Mat5 matrix() const;
  static ExtendedPose from_matrix(const Mat5& m);
};

/// F_AC = F_AB * F_BC; time offsets add.
GalileanFrame frame_compose(const GalileanFrame& f_ab, const GalileanFrame& f_bc);
IsochronousFrame frame_compose(const IsochronousFrame& f_ab,
                               const IsochronousFrame& f_bc);

/// F_BA = F_AB^-1.
GalileanFrame frame_inverse(const GalileanFrame& f_ab);
IsochronousFrame frame_inverse(const IsochronousFrame& f_ab);

/// Frame of B relative to A, both expressed against the same origin:
/// F_AB = F_0A^-1 * F_0B.
GalileanFrame relative_frame(const GalileanFrame& f_0a, const GalileanFrame& f_0b);

// Coordinate changes from {B} to {A} through F_AB. These reinterpret the
// frame as a linear map on homogeneous coordinates; the time coordinate of
// an event maps as t_A = t_AB + t_B.
HomogeneousEvent change_event(const GalileanFrame& f_ab, const HomogeneousEvent& e_b);
HomogeneousVelocity change_velocity(const GalileanFrame& f_ab,
                                    const HomogeneousVelocity& v_b);
HomogeneousDirection change_direction(const GalileanFrame& f_ab,
                                      const HomogeneousDirection& n_b);

/// Rewrites an isochronous frame as an extended pose given the angular
/// velocity of the reference frame: dp/dt = -omega_ref x p + v.
ExtendedPose frame_to_extended(const IsochronousFrame& f, const Vec3& omega_ref);

/// Inverse of frame_to_extended: v = dp/dt + omega_ref x p.
IsochronousFrame extended_to_frame(const ExtendedPose& k, const Vec3& omega_ref);

// Extended poses compose and invert like the isochronous subgroup; used by
// the manipulator chain where each factor is a joint transformation.
ExtendedPose compose(const ExtendedPose& k1, const ExtendedPose& k2);
ExtendedPose inverse(const ExtendedPose& k);

}  // namespace galikit
