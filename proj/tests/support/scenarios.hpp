#pragma once

// Shared test scenarios: the rotating-frame representation-equivalence run
// and a smooth joint trajectory for serial-chain checks.

#include <cmath>
#include <vector>

#include "galikit/kinematics.hpp"
#include "galikit/manipulator.hpp"

namespace galikit::testing {

struct ReferenceMotion {
  Vec3 omega(double t) const {
    return {0.1 * std::sin(0.3 * t), -0.05 * std::cos(0.4 * t), 0.5};
  }
  Vec3 omega_dot(double t) const {
    return {0.03 * std::cos(0.3 * t), 0.02 * std::sin(0.4 * t), 0.0};
  }
  Vec3 accel(double t) const {
    return {0.2 * std::cos(0.5 * t), 0.1, -0.15 * std::sin(0.6 * t)};
  }
};

struct BodyMotion {
  Vec3 omega(double t) const {
    return {0.3 * std::cos(t), 0.2, -0.1 * std::sin(0.8 * t)};
  }
  Vec3 accel(double t) const {
    return {0.5 * std::sin(0.7 * t), -0.3, 0.2 * std::cos(0.4 * t)};
  }
};

/// Integrates the same rotating-frame motion twice, as Galilean-frame
/// kinematics and as extended-pose kinematics with the relative kinematic
/// inputs, converting state at every sample. Returns the largest
/// entry-wise deviation between the two trajectories.
inline double representation_equivalence_error(double t_span, double dt) {
  const ReferenceMotion ref;
  const BodyMotion body;

  const IsochronousFrame f0{Rotation3::exp(Vec3(0.1, -0.2, 0.15)),
                            Vec3(0.5, -0.2, 0.1), Vec3(1.0, 0.5, -0.3)};

  const auto galilean_field = [&](const Mat5& m, double t) {
    return noninertial_field(m, GalileanInput{ref.omega(t), ref.accel(t)},
                             GalileanInput{body.omega(t), body.accel(t)});
  };
  const auto galilean =
      integrate_raw(f0.matrix(), galilean_field, t_span, dt, IntegrationMethod::Rk4);

  const ExtendedPose k0 = frame_to_extended(f0, ref.omega(0.0));
  const auto extended_field = [&](const Mat5& m, double t) {
    const Rotation3 r = Rotation3::project(m.block<3, 3>(0, 0));
    const Vec3 pdot = m.block<3, 1>(0, 3);
    const Vec3 p = m.block<3, 1>(0, 4);
    const GalileanInput rel{
        relative_angular_velocity(body.omega(t), ref.omega(t), r),
        relative_coordinate_acceleration(body.accel(t), ref.accel(t), ref.omega(t),
                                         ref.omega_dot(t), r, p, pdot)};
    return extended_pose_field(m, rel);
  };
  const auto extended =
      integrate_raw(k0.matrix(), extended_field, t_span, dt, IntegrationMethod::Rk4);

  double worst = 0.0;
  for (std::size_t i = 0; i < galilean.size(); ++i) {
    const auto& [t, fm] = galilean[i];
    const IsochronousFrame f =
        IsochronousFrame::from_frame(GalileanFrame::from_matrix(fm));
    const Mat5 converted = frame_to_extended(f, ref.omega(t)).matrix();
    worst = std::max(worst,
                     (converted - extended[i].second).cwiseAbs().maxCoeff());
  }
  return worst;
}

/// Smooth joint trajectory around a base chain: revolute angles and
/// prismatic offsets move sinusoidally, with rates and accelerations filled
/// in analytically.
inline GdhChain chain_at(const GdhChain& base, double t) {
  GdhChain out = base;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double amp = 0.3 + 0.07 * static_cast<double>(i);
    const double freq = 0.7 + 0.13 * static_cast<double>(i);
    const double shift = amp * std::sin(freq * t);
    const double rate = amp * freq * std::cos(freq * t);
    const double accel = -amp * freq * freq * std::sin(freq * t);
    if (out[i].kind == JointKind::Revolute) {
      out[i].theta += shift;
      out[i].q = rate;
      out[i].qdot = accel;
    } else {
      out[i].d += shift;
      out[i].w = rate;
      out[i].wdot = accel;
    }
  }
  return out;
}

/// SCARA fixture: three revolute joints and one vertical prismatic joint.
inline GdhChain scara_chain() {
  return {GdhLink::revolute(0.0, 0.4, 0.5, 0.0),
          GdhLink::revolute(0.0, 0.0, 0.35, 0.0),
          GdhLink::prismatic(0.0, 0.1, 0.0, 0.0),
          GdhLink::revolute(0.0, 0.0, 0.0, 0.0)};
}

/// Bare ordered product of the link transformations. Unlike
/// forward_kinematics this keeps the raw velocity column, which is the
/// trajectory the chain kinematics (adjoint-summed input) propagates.
inline ExtendedPose chain_product(const GdhChain& chain) {
  ExtendedPose k = gdh_matrix(chain.front());
  for (std::size_t i = 1; i < chain.size(); ++i) {
    k = compose(k, gdh_matrix(chain[i]));
  }
  return k;
}

/// Reference pre-integration: library RK4 on each zero-order-hold interval
/// at `substeps` steps per sample interval.
inline Mat5 preintegrate_rk4_reference(std::span<const ImuSample> samples,
                                       std::span<const GalileanInput> refs = {},
                                       int substeps = 100) {
  Mat5 m = Mat5::Identity();
  for (std::size_t j = 0; j + 1 < samples.size(); ++j) {
    const GalileanInput body{samples[j].angular_velocity, samples[j].proper_accel};
    const Mat5 ref_term = refs.empty() ? Mat5::Zero() : Mat5(refs[j].matrix());
    const auto field = [&](const Mat5& s, double) {
      return Mat5(origin_field(s, body) - ref_term * s);
    };
    const double span = samples[j + 1].timestamp - samples[j].timestamp;
    m = integrate_raw(m, field, span, span / substeps, IntegrationMethod::Rk4)
            .back()
            .second;
  }
  return m;
}

inline GdhChain random_chain(SplitMix64& rng, std::size_t max_links = 6) {
  const std::size_t n = 1 + rng.next_u64() % max_links;
  GdhChain chain;
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = rng.uniform(-M_PI, M_PI);
    const double d = rng.uniform(-1.0, 1.0);
    const double a = rng.uniform(0.0, 1.0);
    const double alpha = rng.uniform(-M_PI, M_PI);
    if (rng.next_u64() % 2 == 0) {
      chain.push_back(GdhLink::revolute(theta, d, a, alpha, rng.uniform(-2.0, 2.0),
                                        rng.uniform(-2.0, 2.0)));
    } else {
      chain.push_back(GdhLink::prismatic(theta, d, a, alpha, rng.uniform(-2.0, 2.0),
                                         rng.uniform(-2.0, 2.0)));
    }
  }
  return chain;
}

}  // namespace galikit::testing
