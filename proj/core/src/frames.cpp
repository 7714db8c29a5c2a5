#include "galikit/frames.hpp"

#include "galikit/errors.hpp"

namespace galikit {

IsochronousFrame IsochronousFrame::from_frame(const GalileanFrame& f) {
  if (f.time != 0.0) {
    throw StructureError("IsochronousFrame: time entry must be exactly zero");
  }
  return {f.rotation, f.velocity, f.position};
}

Mat5 ExtendedPose::matrix() const {
  return GalileanElement{rotation, coordinate_velocity, position, 0.0}.matrix();
}

ExtendedPose ExtendedPose::from_matrix(const Mat5& m) {
  const GalileanElement g = GalileanElement::from_matrix(m);
  if (g.time_offset != 0.0) {
    throw StructureError("ExtendedPose: time entry must be exactly zero");
  }
  return {g.rotation, g.boost, g.translation};
}

GalileanFrame frame_compose(const GalileanFrame& f_ab, const GalileanFrame& f_bc) {
  return GalileanFrame::from_element(
      compose(f_ab.as_element(), f_bc.as_element()));
}

IsochronousFrame frame_compose(const IsochronousFrame& f_ab,
                               const IsochronousFrame& f_bc) {
  return {f_ab.rotation * f_bc.rotation,
          f_ab.rotation * f_bc.velocity + f_ab.velocity,
          f_ab.rotation * f_bc.position + f_ab.position};
}

GalileanFrame frame_inverse(const GalileanFrame& f_ab) {
  return GalileanFrame::from_element(inverse(f_ab.as_element()));
}

IsochronousFrame frame_inverse(const IsochronousFrame& f_ab) {
  const Rotation3 rt = f_ab.rotation.transposed();
  return {rt, -(rt * f_ab.velocity), -(rt * f_ab.position)};
}

GalileanFrame relative_frame(const GalileanFrame& f_0a, const GalileanFrame& f_0b) {
  return frame_compose(frame_inverse(f_0a), f_0b);
}

HomogeneousEvent change_event(const GalileanFrame& f_ab, const HomogeneousEvent& e_b) {
  return act_event(f_ab.as_element(), e_b);
}

HomogeneousVelocity change_velocity(const GalileanFrame& f_ab,
                                    const HomogeneousVelocity& v_b) {
  return act_velocity(f_ab.as_element(), v_b);
}

HomogeneousDirection change_direction(const GalileanFrame& f_ab,
                                      const HomogeneousDirection& n_b) {
  return act_direction(f_ab.as_element(), n_b);
}

ExtendedPose frame_to_extended(const IsochronousFrame& f, const Vec3& omega_ref) {
  return {f.rotation, -omega_ref.cross(f.position) + f.velocity, f.position};
}

IsochronousFrame extended_to_frame(const ExtendedPose& k, const Vec3& omega_ref) {
  return {k.rotation, k.coordinate_velocity + omega_ref.cross(k.position),
          k.position};
}

ExtendedPose compose(const ExtendedPose& k1, const ExtendedPose& k2) {
  return {k1.rotation * k2.rotation,
          k1.rotation * k2.coordinate_velocity + k1.coordinate_velocity,
          k1.rotation * k2.position + k1.position};
}

ExtendedPose inverse(const ExtendedPose& k) {
  const Rotation3 rt = k.rotation.transposed();
  return {rt, -(rt * k.coordinate_velocity), -(rt * k.position)};
}

}  // namespace galikit
