#pragma once

#include "galikit/types.hpp"

namespace galikit {

/// skew3(w) is the unique antisymmetric matrix with skew3(w) * x == w.cross(x).
Mat3 skew3(const Vec3& w);

/// Inverse of skew3. Throws StructureError if the argument is not
/// antisymmetric to 1e-12.
Vec3 unskew3(const Mat3& m);

namespace so3 {

Mat3 exp(const Vec3& omega);

/// Rotation logarithm. Requires the rotation angle to be strictly less
/// than pi; throws SingularityError at (or numerically indistinguishable
/// from) pi, where the axis is not unique.
Vec3 log(const Mat3& rotation);

/// Left Jacobian of the SO(3) exponential, V(w) = sum_n (w^)^n / (n+1)!.
Mat3 left_jacobian(const Vec3& omega);

/// Inverse of the left Jacobian. Valid for angles below 2*pi.
Mat3 left_jacobian_inverse(const Vec3& omega);

}  // namespace so3

/// A 3x3 rotation matrix that maintains its own orthonormality.
///
/// Products re-orthonormalize (by polar projection) once the accumulated
/// drift ||R^T R - I||_inf exceeds 1e-12, which keeps long composition
/// chains well inside the 1e-9 invariant.
class Rotation3 {
 public:
  Rotation3() : m_(Mat3::Identity()) {}

  /// Wraps a matrix that is already a rotation. Throws StructureError if
  /// the matrix is further than 1e-6 from orthonormal or has negative
  /// determinant; smaller drift is projected away.
  explicit Rotation3(const Mat3& m);

  static Rotation3 identity() { return Rotation3(); }
  static Rotation3 exp(const Vec3& omega);

  /// Nearest rotation to an arbitrary (non-degenerate) matrix, by polar
  /// decomposition.
  static Rotation3 project(const Mat3& m);

  Vec3 log() const { return so3::log(m_); }

  Rotation3 operator*(const Rotation3& other) const;
  Vec3 operator*(const Vec3& x) const { return m_ * x; }

  Rotation3 transposed() const;

  const Mat3& matrix() const { return m_; }

  double orthonormality_drift() const;

 private:
  struct Trusted {};
  Rotation3(const Mat3& m, Trusted) : m_(m) {}

  Mat3 m_;
};

}  // namespace galikit
