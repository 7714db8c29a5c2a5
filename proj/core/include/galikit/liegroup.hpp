#pragma once

#include "galikit/rotation.hpp"
#include "galikit/types.hpp"

namespace galikit {

// Tangent vectors are ordered (omega, accel, vel, clock):
//   [0..2]  omega  angular rate / attitude error      (rad/s | rad)
//   [3..5]  accel  acceleration / velocity error      (m/s^2 | m/s)
//   [6..8]  vel    velocity offset / position error   (m/s   | m)
//   [9]     clock  time rate / time error             (-     | s)
// The same ordering indexes every 10x10 covariance and Jacobian in the
// library.
using GalileanTangent = Vec10;

inline constexpr int kTangentOmega = 0;
inline constexpr int kTangentAccel = 3;
inline constexpr int kTangentVel = 6;
inline constexpr int kTangentClock = 9;

GalileanTangent make_tangent(const Vec3& omega, const Vec3& accel,
                             const Vec3& vel, double clock);

/// A Galilean transformation of spacetime: rotation, velocity boost,
/// spatial translation and time offset, embedded as the 5x5 matrix
///
///   [ Q  b  q ]
///   [ 0  1  d ]
///   [ 0  0  1 ]
///
/// with exact (0,1) entries in the bottom two rows.
struct GalileanElement {
  Rotation3 rotation;        // Q
  Vec3 boost = Vec3::Zero();        // b, m/s
  Vec3 translation = Vec3::Zero();  // q, m
  double time_offset = 0.0;         // d, s

  Mat5 matrix() const;

  /// Throws StructureError unless the matrix has the embedding pattern
  /// above (zero blocks and unit entries to 1e-9, rotation block valid).
  static GalileanElement from_matrix(const Mat5& m);
};

GalileanElement identity();
GalileanElement compose(const GalileanElement& g1, const GalileanElement& g2);
GalileanElement inverse(const GalileanElement& g);

/// Linear embedding of a tangent vector into the matrix Lie algebra:
/// (omega, a, w, kappa) -> [[omega^, a, w], [0, 0, kappa], [0, 0, 0]].
Mat5 wedge(const GalileanTangent& xi);

/// Inverse of wedge. Throws StructureError if the matrix is outside the
/// algebra pattern by more than 1e-12.
GalileanTangent vee(const Mat5& u);

/// Matrix exponential restricted to the group, in closed form: the SO(3)
/// exponential for the rotation block and finite series for the rest
/// (the non-rotation part of the algebra is nilpotent of index 3).
GalileanElement exp(const GalileanTangent& xi);

/// Inverse of exp. Requires the rotation angle strictly below pi;
/// throws SingularityError at pi.
GalileanTangent log(const GalileanElement& g);

/// Adjoint matrix of a group element: wedge(adjoint(g) * xi) equals
/// g * wedge(xi) * g^-1 for every tangent xi.
Mat10 adjoint(const GalileanElement& g);

/// Adjoint of a tangent vector, ad(xi) * eta = vee([xi^, eta^]).
Mat10 ad(const GalileanTangent& xi);

/// Right Jacobian of the exponential map:
/// exp(xi + dxi) ~ exp(xi) * exp(right_jacobian(xi) * dxi) to first order.
Mat10 right_jacobian(const GalileanTangent& xi);

// Homogeneous coordinates for Galilean spacetime. The tail entries encode
// the object class and are pinned exactly:
//   event           (p, t, 1)
//   velocity        (v, 1, 0)
//   direction       (n, 0, 0)
//   event noise     (mu_p, mu_t, 0)
//   velocity noise  (mu_v, 0, 0)

struct HomogeneousEvent {
  Vec3 position = Vec3::Zero();  // m
  double time = 0.0;             // s

  Vec5 vec() const;
  static HomogeneousEvent from_vec(const Vec5& v);
};

struct HomogeneousVelocity {
  Vec3 value = Vec3::Zero();  // m/s

  Vec5 vec() const;
  static HomogeneousVelocity from_vec(const Vec5& v);
};

struct HomogeneousDirection {
  Vec3 value = Vec3::Zero();

  Vec5 vec() const;
  static HomogeneousDirection from_vec(const Vec5& v);
};

struct EventNoise {
  Vec4 value = Vec4::Zero();  // (mu_p [m], mu_t [s])

  Vec5 vec() const;
  static EventNoise from_vec(const Vec5& v);
};

struct VelocityNoise {
  Vec3 value = Vec3::Zero();  // m/s

  Vec5 vec() const;
  static VelocityNoise from_vec(const Vec5& v);
};

// Spacetime actions of a group element, equal to the 5x5 matrix acting on
// the homogeneous coordinates.

HomogeneousEvent act_event(const GalileanElement& g, const HomogeneousEvent& e);
HomogeneousVelocity act_velocity(const GalileanElement& g,
                                 const HomogeneousVelocity& v);
HomogeneousDirection act_direction(const GalileanElement& g,
                                   const HomogeneousDirection& n);
EventNoise act_event_noise(const GalileanElement& g, const EventNoise& mu);
VelocityNoise act_velocity_noise(const GalileanElement& g,
                                 const VelocityNoise& mu);

}  // namespace galikit
