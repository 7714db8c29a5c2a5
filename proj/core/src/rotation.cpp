#include "galikit/rotation.hpp"

#include <cmath>

#include "galikit/errors.hpp"

namespace galikit {

namespace {

constexpr double kStructureTol = 1e-12;
constexpr double kDriftRenormalize = 1e-12;
constexpr double kRotationGate = 1e-6;

// Below this angle the closed-form coefficients lose digits to
// cancellation; switch to their Taylor expansions.
constexpr double kSmallAngle = 1e-4;

double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

Mat3 skew3(const Vec3& w) {
  Mat3 m;
  m << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
      -w.y(), w.x(), 0.0;
  return m;
}

Vec3 unskew3(const Mat3& m) {
  if (max_abs(m + m.transpose()) > kStructureTol) {
    throw StructureError("unskew3: matrix is not antisymmetric");
  }
  // Average the off-diagonal pairs so round-off in either entry is halved.
  return Vec3(0.5 * (m(2, 1) - m(1, 2)),
              0.5 * (m(0, 2) - m(2, 0)),
              0.5 * (m(1, 0) - m(0, 1)));
}

namespace so3 {

Mat3 exp(const Vec3& omega) {
  const double theta2 = omega.squaredNorm();
  const double theta = std::sqrt(theta2);
  const Mat3 w = skew3(omega);
  double s, c;  // sin(theta)/theta, (1 - cos(theta))/theta^2
  if (theta < kSmallAngle) {
    s = 1.0 - theta2 / 6.0 + theta2 * theta2 / 120.0;
    c = 0.5 - theta2 / 24.0 + theta2 * theta2 / 720.0;
  } else {
    s = std::sin(theta) / theta;
    c = (1.0 - std::cos(theta)) / theta2;
  }
  return Mat3::Identity() + s * w + c * w * w;
}

Vec3 log(const Mat3& rotation) {
  // Angle from the trace, axis direction from the antisymmetric part.
  const Vec3 axis_sin(0.5 * (rotation(2, 1) - rotation(1, 2)),
                      0.5 * (rotation(0, 2) - rotation(2, 0)),
                      0.5 * (rotation(1, 0) - rotation(0, 1)));
  const double cos_theta = 0.5 * (rotation.trace() - 1.0);
  const double sin_theta = axis_sin.norm();
  const double theta = std::atan2(sin_theta, cos_theta);

  if (theta >= M_PI - 1e-10) {
    throw SingularityError("so3::log: rotation angle at pi is singular");
  }
  if (theta < kSmallAngle) {
    // axis_sin = sin(theta) * axis; sin(theta)/theta ~ 1 - theta^2/6.
    return axis_sin * (1.0 + theta * theta / 6.0);
  }
  if (cos_theta > -0.9) {
    return axis_sin * (theta / sin_theta);
  }
  // Near pi the antisymmetric part degrades; recover the axis from the
  // symmetric part (I + 2*cos + ... gives axis*axis^T) instead.
  const Mat3 aat =
      Mat3::Identity() + (rotation + rotation.transpose() - 2.0 * Mat3::Identity()) /
                             (2.0 * (1.0 - cos_theta));
  int k;
  aat.diagonal().maxCoeff(&k);
  Vec3 axis = aat.col(k) / std::sqrt(aat(k, k));
  // Fix the sign so the axis agrees with the antisymmetric part.
  if (axis.dot(axis_sin) < 0.0) axis = -axis;
  return theta * axis;
}

Mat3 left_jacobian(const Vec3& omega) {
  const double theta2 = omega.squaredNorm();
  const double theta = std::sqrt(theta2);
  const Mat3 w = skew3(omega);
  double a, b;  // (1 - cos)/theta^2, (theta - sin)/theta^3
  if (theta < kSmallAngle) {
    a = 0.5 - theta2 / 24.0 + theta2 * theta2 / 720.0;
    b = 1.0 / 6.0 - theta2 / 120.0 + theta2 * theta2 / 5040.0;
  } else {
    a = (1.0 - std::cos(theta)) / theta2;
    b = (theta - std::sin(theta)) / (theta2 * theta);
  }
  return Mat3::Identity() + a * w + b * w * w;
}

Mat3 left_jacobian_inverse(const Vec3& omega) {
  const double theta2 = omega.squaredNorm();
  const double theta = std::sqrt(theta2);
  const Mat3 w = skew3(omega);
  double c;  // 1/theta^2 - (1 + cos)/(2 theta sin)
  if (theta < kSmallAngle) {
    c = 1.0 / 12.0 + theta2 / 720.0 + theta2 * theta2 / 30240.0;
  } else {
    c = 1.0 / theta2 -
        (1.0 + std::cos(theta)) / (2.0 * theta * std::sin(theta));
  }
  return Mat3::Identity() - 0.5 * w + c * w * w;
}

}  // namespace so3

Rotation3::Rotation3(const Mat3& m) : m_(m) {
  const double drift = (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (drift > kRotationGate || m.determinant() < 0.0) {
    throw StructureError("Rotation3: matrix is not a rotation");
  }
  if (drift > kDriftRenormalize) {
    m_ = project(m).m_;
  }
}

Rotation3 Rotation3::exp(const Vec3& omega) {
  return Rotation3(so3::exp(omega), Trusted{});
}

Rotation3 Rotation3::project(const Mat3& m) {
  // Newton iteration for the orthogonal polar factor, X <- (X + X^-T)/2.
  // Quadratic convergence; a handful of steps suffice for any input that
  // is not close to singular.
  Mat3 x = m;
  for (int i = 0; i < 20; ++i) {
    const Mat3 next = 0.5 * (x + x.inverse().transpose());
    const double step = max_abs(next - x);
    x = next;
    if (step < 1e-15) break;
  }
  return Rotation3(x, Trusted{});
}

Rotation3 Rotation3::operator*(const Rotation3& other) const {
  Rotation3 out(Mat3(m_ * other.m_), Trusted{});
  if (out.orthonormality_drift() > kDriftRenormalize) {
    out = project(out.m_);
  }
  return out;
}

Rotation3 Rotation3::transposed() const {
  return Rotation3(m_.transpose(), Trusted{});
}

double Rotation3::orthonormality_drift() const {
  return (m_.transpose() * m_ - Mat3::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace galikit
