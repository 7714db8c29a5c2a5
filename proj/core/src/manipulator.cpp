#include "galikit/manipulator.hpp"

#include <cmath>
#include <stdexcept>

namespace galikit {

namespace {

GalileanElement as_element(const ExtendedPose& k) {
  return {k.rotation, k.coordinate_velocity, k.position, 0.0};
}

void require_nonempty(const GdhChain& chain) {
  if (chain.empty()) {
    throw std::invalid_argument("GdhChain: chain must contain at least one link");
  }
}

}  // namespace

GdhLink GdhLink::revolute(double theta, double d, double length, double alpha,
                          double q, double qdot) {
  return {JointKind::Revolute, theta, d, length, alpha, q, 0.0, qdot, 0.0};
}

GdhLink GdhLink::prismatic(double theta, double d, double length, double alpha,
                           double w, double wdot) {
  return {JointKind::Prismatic, theta, d, length, alpha, 0.0, w, 0.0, wdot};
}

void GdhLink::validate() const {
  if (kind == JointKind::Revolute && (w != 0.0 || wdot != 0.0)) {
    throw std::invalid_argument("GdhLink: revolute links must have w = wdot = 0");
  }
  if (kind == JointKind::Prismatic && (q != 0.0 || qdot != 0.0)) {
    throw std::invalid_argument("GdhLink: prismatic links must have q = qdot = 0");
  }
}

ExtendedPose gdh_matrix(const GdhLink& link) {
  link.validate();
  const double ct = std::cos(link.theta);
  const double st = std::sin(link.theta);
  const double ca = std::cos(link.alpha);
  const double sa = std::sin(link.alpha);

  Mat3 r;
  r << ct, -st * ca, st * sa,
       st, ct * ca, -ct * sa,
       0.0, sa, ca;
  return {Rotation3(r),
          Vec3(-link.length * st * link.q, link.length * ct * link.q, link.w),
          Vec3(link.length * ct, link.length * st, link.d)};
}

ExtendedPose forward_kinematics(const GdhChain& chain) {
  require_nonempty(chain);
  ExtendedPose k = gdh_matrix(chain.front());
  for (std::size_t i = 1; i < chain.size(); ++i) {
    k = compose(k, gdh_matrix(chain[i]));
  }
  // The product's velocity column sums the per-joint translational rates
  // but not the swing that upstream joint rotation induces on downstream
  // link offsets. That term is exactly the rotated velocity-offset slot of
  // the transported chain input (the position row of the chain kinematics),
  // so adding it makes the reported velocity the true derivative of the
  // end-effector position.
  k.coordinate_velocity += k.rotation * end_effector_input(chain).vel_offset;
  return k;
}

Vec3 link_angular_velocity(const GdhLink& link) {
  link.validate();
  return {0.0, link.q * std::sin(link.alpha), link.q * std::cos(link.alpha)};
}

Vec3 link_acceleration(const GdhLink& link) {
  link.validate();
  const double ca = std::cos(link.alpha);
  const double sa = std::sin(link.alpha);
  return {-link.length * link.q * link.q,
          link.length * ca * link.qdot + sa * link.wdot,
          -link.length * sa * link.qdot + ca * link.wdot};
}

GalileanInput end_effector_input(const GdhChain& chain) {
  require_nonempty(chain);
  // Walk outward from the last link, keeping `tail` = pose of the end
  // effector relative to the current link's frame.
  ExtendedPose tail;  // identity
  GalileanTangent total = GalileanTangent::Zero();
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const GalileanTangent u =
        make_tangent(link_angular_velocity(*it), link_acceleration(*it),
                     Vec3::Zero(), 0.0);
    total += adjoint(as_element(inverse(tail))) * u;
    tail = compose(gdh_matrix(*it), tail);
  }
  return GalileanInput::from_tangent(total);
}

}  // namespace galikit
