#include "galikit/liegroup.hpp"

#include <cmath>

#include "galikit/errors.hpp"

namespace galikit {

namespace {

constexpr double kAlgebraTol = 1e-12;
constexpr double kEmbeddingTol = 1e-9;
constexpr double kSmallAngle = 1e-4;

// Coupling between the acceleration slot and the translation column of the
// exponential: E(omega) = sum_n (omega^)^n / (n+2)!.
Mat3 exp_coupling(const Vec3& omega) {
  const double theta2 = omega.squaredNorm();
  const double theta = std::sqrt(theta2);
  const Mat3 w = skew3(omega);
  double c1, c2;  // (theta - sin)/theta^3, (theta^2/2 + cos - 1)/theta^4
  if (theta < kSmallAngle) {
    c1 = 1.0 / 6.0 - theta2 / 120.0 + theta2 * theta2 / 5040.0;
    c2 = 1.0 / 24.0 - theta2 / 720.0 + theta2 * theta2 / 40320.0;
  } else {
    c1 = (theta - std::sin(theta)) / (theta2 * theta);
    c2 = (0.5 * theta2 + std::cos(theta) - 1.0) / (theta2 * theta2);
  }
  return 0.5 * Mat3::Identity() + c1 * w + c2 * w * w;
}

}  // namespace

GalileanTangent make_tangent(const Vec3& omega, const Vec3& accel,
                             const Vec3& vel, double clock) {
  GalileanTangent xi;
  xi.segment<3>(kTangentOmega) = omega;
  xi.segment<3>(kTangentAccel) = accel;
  xi.segment<3>(kTangentVel) = vel;
  xi(kTangentClock) = clock;
  return xi;
}

Mat5 GalileanElement::matrix() const {
  Mat5 m = Mat5::Identity();
  m.block<3, 3>(0, 0) = rotation.matrix();
  m.block<3, 1>(0, 3) = boost;
  m.block<3, 1>(0, 4) = translation;
  m(3, 4) = time_offset;
  return m;
}

GalileanElement GalileanElement::from_matrix(const Mat5& m) {
  const bool rows_ok =
      m.row(4).head<4>().cwiseAbs().maxCoeff() <= kEmbeddingTol &&
      std::abs(m(4, 4) - 1.0) <= kEmbeddingTol &&
      m.row(3).head<3>().cwiseAbs().maxCoeff() <= kEmbeddingTol &&
      std::abs(m(3, 3) - 1.0) <= kEmbeddingTol;
  if (!rows_ok) {
    throw StructureError("GalileanElement: bottom rows are not (0,0,0,1,d), (0,0,0,0,1)");
  }
  return {Rotation3(m.block<3, 3>(0, 0)), m.block<3, 1>(0, 3),
          m.block<3, 1>(0, 4), m(3, 4)};
}

GalileanElement identity() { return {}; }

GalileanElement compose(const GalileanElement& g1, const GalileanElement& g2) {
  return {g1.rotation * g2.rotation,
          g1.rotation * g2.boost + g1.boost,
          g1.rotation * g2.translation + g2.time_offset * g1.boost + g1.translation,
          g1.time_offset + g2.time_offset};
}

GalileanElement inverse(const GalileanElement& g) {
  const Rotation3 rt = g.rotation.transposed();
  return {rt, -(rt * g.boost),
          -(rt * (g.translation - g.time_offset * g.boost)),
          -g.time_offset};
}

Mat5 wedge(const GalileanTangent& xi) {
  Mat5 u = Mat5::Zero();
  u.block<3, 3>(0, 0) = skew3(xi.segment<3>(kTangentOmega));
  u.block<3, 1>(0, 3) = xi.segment<3>(kTangentAccel);
  u.block<3, 1>(0, 4) = xi.segment<3>(kTangentVel);
  u(3, 4) = xi(kTangentClock);
  return u;
}

GalileanTangent vee(const Mat5& u) {
  const bool pattern_ok =
      u.row(4).cwiseAbs().maxCoeff() <= kAlgebraTol &&
      u.row(3).head<4>().cwiseAbs().maxCoeff() <= kAlgebraTol &&
      (u.block<3, 3>(0, 0) + u.block<3, 3>(0, 0).transpose())
              .cwiseAbs()
              .maxCoeff() <= kAlgebraTol;
  if (!pattern_ok) {
    throw StructureError("vee: matrix is outside the Lie algebra pattern");
  }
  const Mat3 s = u.block<3, 3>(0, 0);
  return make_tangent(Vec3(0.5 * (s(2, 1) - s(1, 2)),
                           0.5 * (s(0, 2) - s(2, 0)),
                           0.5 * (s(1, 0) - s(0, 1))),
                      u.block<3, 1>(0, 3), u.block<3, 1>(0, 4), u(3, 4));
}

GalileanElement exp(const GalileanTangent& xi) {
  const Vec3 omega = xi.segment<3>(kTangentOmega);
  const Vec3 accel = xi.segment<3>(kTangentAccel);
  const Vec3 vel = xi.segment<3>(kTangentVel);
  const double clock = xi(kTangentClock);

  const Mat3 jl = so3::left_jacobian(omega);
  return {Rotation3::exp(omega), jl * accel,
          jl * vel + clock * (exp_coupling(omega) * accel), clock};
}

GalileanTangent log(const GalileanElement& g) {
  const Vec3 omega = g.rotation.log();
  const Mat3 jl_inv = so3::left_jacobian_inverse(omega);
  const double clock = g.time_offset;
  const Vec3 accel = jl_inv * g.boost;
  const Vec3 vel = jl_inv * (g.translation - clock * (exp_coupling(omega) * accel));
  return make_tangent(omega, accel, vel, clock);
}

Mat10 adjoint(const GalileanElement& g) {
  const Mat3& q = g.rotation.matrix();
  const Vec3& b = g.boost;
  const double d = g.time_offset;

  Mat10 a = Mat10::Zero();
  a.block<3, 3>(0, 0) = q;
  a.block<3, 3>(3, 0) = skew3(b) * q;
  a.block<3, 3>(3, 3) = q;
  a.block<3, 3>(6, 0) = skew3(g.translation - d * b) * q;
  a.block<3, 3>(6, 3) = -d * q;
  a.block<3, 3>(6, 6) = q;
  a.block<3, 1>(6, 9) = b;
  a(9, 9) = 1.0;
  return a;
}

Mat10 ad(const GalileanTangent& xi) {
  const Mat3 omega_hat = skew3(xi.segment<3>(kTangentOmega));
  const Vec3 accel = xi.segment<3>(kTangentAccel);

  Mat10 a = Mat10::Zero();
  a.block<3, 3>(0, 0) = omega_hat;
  a.block<3, 3>(3, 0) = skew3(accel);
  a.block<3, 3>(3, 3) = omega_hat;
  a.block<3, 3>(6, 0) = skew3(xi.segment<3>(kTangentVel));
  a.block<3, 3>(6, 3) = -xi(kTangentClock) * Mat3::Identity();
  a.block<3, 3>(6, 6) = omega_hat;
  a.block<3, 1>(6, 9) = accel;
  return a;
}

Mat10 right_jacobian(const GalileanTangent& xi) {
  // J_r(xi) = sum_n (-ad(xi))^n / (n+1)!. The series converges for every
  // xi; for the angles this library admits (< pi) it does so rapidly.
  const Mat10 neg_ad = -ad(xi);
  Mat10 jac = Mat10::Identity();
  Mat10 term = Mat10::Identity();
  for (int n = 1; n <= 150; ++n) {
    term = term * neg_ad / static_cast<double>(n + 1);
    jac += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  return jac;
}

// --- homogeneous coordinates -------------------------------------------

namespace {

void require_exact(bool ok, const char* what) {
  if (!ok) throw StructureError(what);
}

}  // namespace

Vec5 HomogeneousEvent::vec() const {
  return (Vec5() << position, time, 1.0).finished();
}

HomogeneousEvent HomogeneousEvent::from_vec(const Vec5& v) {
  require_exact(v(4) == 1.0, "HomogeneousEvent: fifth entry must be exactly 1");
  return {v.head<3>(), v(3)};
}

Vec5 HomogeneousVelocity::vec() const {
  return (Vec5() << value, 1.0, 0.0).finished();
}

HomogeneousVelocity HomogeneousVelocity::from_vec(const Vec5& v) {
  require_exact(v(3) == 1.0 && v(4) == 0.0,
                "HomogeneousVelocity: tail must be exactly (1, 0)");
  return {v.head<3>()};
}

Vec5 HomogeneousDirection::vec() const {
  return (Vec5() << value, 0.0, 0.0).finished();
}

HomogeneousDirection HomogeneousDirection::from_vec(const Vec5& v) {
  require_exact(v(3) == 0.0 && v(4) == 0.0,
                "HomogeneousDirection: tail must be exactly (0, 0)");
  return {v.head<3>()};
}

Vec5 EventNoise::vec() const { return (Vec5() << value, 0.0).finished(); }

EventNoise EventNoise::from_vec(const Vec5& v) {
  require_exact(v(4) == 0.0, "EventNoise: fifth entry must be exactly 0");
  return {v.head<4>()};
}

Vec5 VelocityNoise::vec() const {
  return (Vec5() << value, 0.0, 0.0).finished();
}

VelocityNoise VelocityNoise::from_vec(const Vec5& v) {
  require_exact(v(3) == 0.0 && v(4) == 0.0,
                "VelocityNoise: tail must be exactly (0, 0)");
  return {v.head<3>()};
}

HomogeneousEvent act_event(const GalileanElement& g, const HomogeneousEvent& e) {
  return {g.rotation * e.position + e.time * g.boost + g.translation,
          e.time + g.time_offset};
}

HomogeneousVelocity act_velocity(const GalileanElement& g,
                                 const HomogeneousVelocity& v) {
  return {g.rotation * v.value + g.boost};
}

HomogeneousDirection act_direction(const GalileanElement& g,
                                   const HomogeneousDirection& n) {
  return {g.rotation * n.value};
}

EventNoise act_event_noise(const GalileanElement& g, const EventNoise& mu) {
  EventNoise out;
  out.value.head<3>() = g.rotation * Vec3(mu.value.head<3>()) + mu.value(3) * g.boost;
  out.value(3) = mu.value(3);
  return out;
}

VelocityNoise act_velocity_noise(const GalileanElement& g,
                                 const VelocityNoise& mu) {
  return {g.rotation * mu.value};
}

}  // namespace galikit
