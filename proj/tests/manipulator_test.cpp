#include "galikit/manipulator.hpp"

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "scenarios.hpp"

using namespace galikit;
using namespace galikit::testing;

TEST_CASE("gdh_matrix worked values") {
  // Unit-length link spinning about the base z-axis.
  const ExtendedPose k = gdh_matrix(GdhLink::revolute(0.0, 0.0, 1.0, 0.0, 1.0));
  CHECK(max_diff(k.rotation.matrix(), Mat3::Identity()) == 0.0);
  CHECK(max_diff(k.position, Vec3(1, 0, 0)) == 0.0);
  CHECK(max_diff(k.coordinate_velocity, Vec3(0, 1, 0)) == 0.0);

  const ExtendedPose rest = gdh_matrix(GdhLink::revolute(0.0, 0.0, 0.0, 0.0));
  CHECK(max_diff(rest.matrix(), Mat5::Identity()) == 0.0);
}

TEST_CASE("deleting the velocity column recovers classical DH") {
  SplitMix64 rng(61);
  for (int i = 0; i < 200; ++i) {
    const GdhChain chain = random_chain(rng);
    for (const auto& link : chain) {
      const Mat5 k = gdh_matrix(link).matrix();
      Mat4 reduced;
      reduced.topLeftCorner<3, 3>() = k.topLeftCorner<3, 3>();
      reduced.topRightCorner<3, 1>() = k.block<3, 1>(0, 4);
      reduced.row(3) << 0, 0, 0, 1;
      CHECK(max_diff(reduced, classical_dh(link)) == 0.0);
    }
  }
}

TEST_CASE("joint constraints are enforced") {
  GdhLink bad = GdhLink::revolute(0.1, 0.2, 0.3, 0.4);
  bad.w = 0.5;
  CHECK_THROWS_AS(gdh_matrix(bad), std::invalid_argument);

  GdhLink bad2 = GdhLink::prismatic(0.1, 0.2, 0.3, 0.4);
  bad2.q = 0.5;
  CHECK_THROWS_AS(link_angular_velocity(bad2), std::invalid_argument);

  CHECK_THROWS_AS(forward_kinematics(GdhChain{}), std::invalid_argument);
}

TEST_CASE("forward kinematics: fixtures and the classical oracle") {
  // A single link is its own chain.
  const GdhLink solo = GdhLink::revolute(0.3, 0.1, 0.7, -0.4, 0.8);
  CHECK(max_diff(forward_kinematics({solo}).matrix(), gdh_matrix(solo).matrix()) == 0.0);

  // SCARA at the zero configuration stacks the link offsets.
  const GdhChain scara = scara_chain();
  const ExtendedPose ee = forward_kinematics(scara);
  Vec3 stacked = Vec3::Zero();
  for (const auto& link : scara) stacked += Vec3(link.length, 0.0, link.d);
  CHECK(max_diff(ee.position, stacked) == 0.0);
  CHECK(max_diff(ee.rotation.matrix(), Mat3::Identity()) == 0.0);

  SplitMix64 rng(62);
  for (int i = 0; i < 300; ++i) {
    const GdhChain chain = random_chain(rng);
    Mat4 dh = Mat4::Identity();
    for (const auto& link : chain) dh = dh * classical_dh(link);
    const ExtendedPose k = forward_kinematics(chain);
    CHECK(max_diff(k.rotation.matrix(), dh.topLeftCorner<3, 3>()) < 1e-12);
    CHECK(max_diff(k.position, dh.topRightCorner<3, 1>()) < 1e-12);
  }
}

TEST_CASE("end-effector velocity matches finite differences of the positions") {
  SplitMix64 rng(63);
  const double h = 1e-4;
  for (int trial = 0; trial < 20; ++trial) {
    const GdhChain base = random_chain(rng);
    for (double t : {0.0, 0.7, 1.9}) {
      const Vec3 pdot = forward_kinematics(chain_at(base, t)).coordinate_velocity;
      const Vec3 p_plus = forward_kinematics(chain_at(base, t + h)).position;
      const Vec3 p_minus = forward_kinematics(chain_at(base, t - h)).position;
      CHECK(max_diff(pdot, Vec3((p_plus - p_minus) / (2.0 * h))) < 1e-6);
    }
  }
}

TEST_CASE("end-effector velocity is linear in the joint rates") {
  SplitMix64 rng(64);
  for (int trial = 0; trial < 50; ++trial) {
    GdhChain chain = random_chain(rng);

    auto with_rates = [&](const std::vector<double>& rates) {
      GdhChain c = chain;
      for (std::size_t i = 0; i < c.size(); ++i) {
        (c[i].kind == JointKind::Revolute ? c[i].q : c[i].w) = rates[i];
      }
      return forward_kinematics(c).coordinate_velocity;
    };

    std::vector<double> u(chain.size()), v(chain.size()), sum(chain.size());
    for (std::size_t i = 0; i < chain.size(); ++i) {
      u[i] = rng.uniform(-2, 2);
      v[i] = rng.uniform(-2, 2);
      sum[i] = u[i] + v[i];
    }
    CHECK(max_diff(with_rates(sum), Vec3(with_rates(u) + with_rates(v))) < 1e-12);
  }
}

TEST_CASE("link angular velocity") {
  CHECK(max_diff(link_angular_velocity(GdhLink::revolute(0.3, 0, 0.5, 0.0, 2.0)),
                 Vec3(0, 0, 2.0)) == 0.0);
  CHECK(link_angular_velocity(GdhLink::prismatic(0.3, 0, 0.5, 0.7, 1.0))
            .cwiseAbs()
            .maxCoeff() == 0.0);

  SplitMix64 rng(65);
  for (int i = 0; i < 50; ++i) {
    const double alpha = rng.uniform(-M_PI, M_PI);
    const double q = rng.uniform(-3, 3);
    CHECK(link_angular_velocity(GdhLink::revolute(0, 0, 0, alpha, q)).norm() ==
          doctest::Approx(std::abs(q)).epsilon(1e-12));
  }
}

TEST_CASE("link acceleration") {
  CHECK(link_acceleration(GdhLink::revolute(0.4, 0.1, 0.8, 0.2)).cwiseAbs().maxCoeff() == 0.0);

  // Pure centripetal term at unit length and unit rate.
  CHECK(max_diff(link_acceleration(GdhLink::revolute(0.0, 0.0, 1.0, 0.0, 1.0)),
                 Vec3(-1, 0, 0)) == 0.0);

  // Second finite difference of the link origin, rotated into the link frame.
  SplitMix64 rng(66);
  const double h = 1e-3;
  for (int trial = 0; trial < 20; ++trial) {
    GdhChain base{random_chain(rng, 1)};
    const double t = rng.uniform(0.0, 2.0);
    const GdhLink here = chain_at(base, t)[0];
    const Vec3 fd2 = (gdh_matrix(chain_at(base, t + h)[0]).position -
                      2.0 * gdh_matrix(here).position +
                      gdh_matrix(chain_at(base, t - h)[0]).position) /
                     (h * h);
    const Vec3 expected = gdh_matrix(here).rotation * link_acceleration(here);
    CHECK(max_diff(fd2, expected) < 1e-5);
  }
}

TEST_CASE("end_effector_input: fixtures") {
  const GdhLink solo = GdhLink::revolute(0.4, 0.1, 0.6, -0.3, 1.2, 0.5);
  const GalileanInput u = end_effector_input({solo});
  CHECK(max_diff(u.omega, link_angular_velocity(solo)) == 0.0);
  CHECK(max_diff(u.accel, link_acceleration(solo)) == 0.0);

  // Planar two-link arm: angular velocities add about z.
  const GdhChain planar{GdhLink::revolute(0.3, 0.0, 0.5, 0.0, 0.7),
                        GdhLink::revolute(-0.5, 0.0, 0.4, 0.0, 0.9)};
  CHECK(max_diff(end_effector_input(planar).omega, Vec3(0, 0, 0.7 + 0.9)) < 1e-12);
}

TEST_CASE("angular velocity block equals the rotation-transported sum") {
  SplitMix64 rng(67);
  for (int trial = 0; trial < 200; ++trial) {
    const GdhChain chain = random_chain(rng);
    const GalileanInput u = end_effector_input(chain);

    // Independently: sum R_ni * w_i with R_ni accumulated link by link.
    Vec3 expected = Vec3::Zero();
    Mat3 r_tail = Mat3::Identity();  // rotation from frame i to n
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      expected += r_tail.transpose() * link_angular_velocity(*it);
      r_tail = gdh_matrix(*it).rotation.matrix() * r_tail;
    }
    CHECK(max_diff(u.omega, expected) < 1e-12);
  }
}

TEST_CASE("chain input reproduces the derivative of the chain product") {
  SplitMix64 rng(68);
  const double h = 1e-4;
  for (int trial = 0; trial < 10; ++trial) {
    const GdhChain base = random_chain(rng, 4);
    for (double t : {0.2, 1.1}) {
      const GdhChain here = chain_at(base, t);
      const Mat5 field =
          extended_pose_derivative(chain_product(here), end_effector_input(here));
      const Mat5 fd = (chain_product(chain_at(base, t + h)).matrix() -
                       chain_product(chain_at(base, t - h)).matrix()) /
                      (2.0 * h);
      CHECK(max_diff(field, fd) < 1e-5);
    }
  }
}

TEST_CASE("integrating the chain kinematics follows the joint trajectory") {
  SplitMix64 rng(69);
  const GdhChain base = random_chain(rng, 4);
  const auto field = [&](const Mat5& m, double t) {
    return extended_pose_field(m, end_effector_input(chain_at(base, t)));
  };
  const auto traj = integrate_raw(chain_product(chain_at(base, 0.0)).matrix(),
                                  field, 2.0, 1e-3, IntegrationMethod::Rk4);
  for (std::size_t i = 0; i < traj.size(); i += 250) {
    const GdhChain here = chain_at(base, traj[i].first);
    CHECK(max_diff(traj[i].second, chain_product(here).matrix()) < 1e-5);
    // Rotation and position blocks also match the forward kinematics.
    const ExtendedPose fk = forward_kinematics(here);
    CHECK(max_diff(traj[i].second.block<3, 3>(0, 0), fk.rotation.matrix()) < 1e-5);
    CHECK(max_diff(traj[i].second.block<3, 1>(0, 4), fk.position) < 1e-5);
  }
}

TEST_CASE("forward kinematics velocity equals product velocity plus the sweep term") {
  SplitMix64 rng(70);
  for (int trial = 0; trial < 50; ++trial) {
    const GdhChain chain = random_chain(rng);
    const ExtendedPose prod = chain_product(chain);
    const ExtendedPose fk = forward_kinematics(chain);
    const Vec3 sweep = fk.rotation * end_effector_input(chain).vel_offset;
    CHECK(max_diff(fk.coordinate_velocity, Vec3(prod.coordinate_velocity + sweep)) <
          1e-14);
    CHECK(max_diff(fk.position, prod.position) == 0.0);
  }
}
