#pragma once

#include "galikit/frames.hpp"

namespace galikit {

/// Information state on the group: mean frame F and a 10x10 covariance Q
/// of the concentrated Gaussian F * exp(eta^), eta ~ N(0, Q), in tangent
/// ordering (omega, accel, vel, clock) = (attitude, velocity, position,
/// time) error.
struct ConcentratedGaussian {
  GalileanFrame mean;
  Mat10 covariance = Mat10::Identity();

  ConcentratedGaussian() = default;

  /// Throws std::invalid_argument unless the covariance is symmetric to
  /// 1e-12 with strictly positive eigenvalues.
  ConcentratedGaussian(const GalileanFrame& mean_frame, const Mat10& cov);
};

/// Position fix with a jittered timestamp.
struct PositionMeasurement {
  Vec3 position = Vec3::Zero();        // y, m
  double timestamp = 0.0;              // tau, s
  Mat3 position_cov = Mat3::Identity();  // Sigma_p, m^2
  double timestamp_var = 0.0;          // Sigma_t, s^2

  /// Throws std::invalid_argument unless Sigma_p is symmetric positive
  /// definite and Sigma_t >= 0.
  void validate() const;
};

struct FusionResult {
  ConcentratedGaussian posterior;  // (F*, Q*)
  GalileanTangent correction = GalileanTangent::Zero();  // MAP estimate in log coordinates
  Vec4 innovation = Vec4::Zero();  // d-tilde, (m, m, m, s)
};

/// Homogeneous spacetime coordinates (y, tau, 1) of a measurement.
HomogeneousEvent measurement_event(const PositionMeasurement& m);

/// Inertial-motion estimate of the frame of the measurement state relative
/// to the prior mean: identity rotation, velocity and position, with time
/// entry tau - t_hat. A pre-integrated relative frame can be supplied in
/// its place through the general fuse() overload.
GalileanFrame relative_frame_estimate(const ConcentratedGaussian& prior,
                                      double timestamp);

/// Error measurement d = first four entries of F_hat^-1 * y_bar.
Vec4 error_measurement(const ConcentratedGaussian& prior,
                       const HomogeneousEvent& y);

/// Linear maps taking the measurement noise (4-vector) and the prior state
/// noise (10-vector) into the error-measurement coordinates.
struct NoiseMapping {
  Mat4 event = Mat4::Zero();       // N_mu
  Mat4x10 state = Mat4x10::Zero(); // N_eta
};

NoiseMapping noise_mapping(const ConcentratedGaussian& prior);

struct RelativeCovariance {
  Mat4 value = Mat4::Zero();
  /// Set when eigenvalues below 1e-12 * trace were floored to keep the
  /// matrix invertible (a zero timestamp variance legitimately produces a
  /// rank-deficient time row).
  bool regularized = false;
};

/// Covariance of the error-measurement noise,
/// N_mu Sigma N_mu^T + N_eta Q N_eta^T, symmetrized and floored.
RelativeCovariance relative_covariance(const Mat4& n_mu, const Mat4& sigma,
                                       const Mat4x10& n_eta, const Mat10& q);

/// The 4x10 matrix C with C * eps = -I4_bar^T eps^ (F_ki y0_bar) for every
/// tangent eps, built from the predicted measurement event F_ki * y0_bar.
Mat4x10 measurement_matrix(const GalileanFrame& relative_estimate,
                           const HomogeneousEvent& y0);

/// Single-measurement MAP fusion step. Solves
///   min_eps  eps^T Q^-1 eps + (d~ - C eps)^T Sigma_ki^-1 (d~ - C eps)
/// by completing the square, then maps back to the group:
///   F* = F_hat exp(eps^),  Q* = J^T (Q^-1 + C^T Sigma_ki^-1 C)^-1 J
/// with J the right Jacobian of exp at the correction. sigma is the full
/// 4x4 covariance of the measurement event noise; relative_estimate is the
/// caller's estimate of the relative frame (inertial-motion default or a
/// pre-integration result). Throws NumericalError, reporting the condition
/// number, if the information matrix is not positive definite.
FusionResult fuse(const ConcentratedGaussian& prior, const HomogeneousEvent& y,
                  const Mat4& sigma, const GalileanFrame& relative_estimate);

/// fuse() with the inertial-motion relative estimate and
/// sigma = diag(Sigma_p, Sigma_t): fusion under timestamp uncertainty.
FusionResult map_update(const ConcentratedGaussian& prior,
                        const PositionMeasurement& m);

/// Time-blind baseline: the same pipeline with Sigma_t forced to zero and
/// the relative time offset forced to zero.
FusionResult classical_fuse(const ConcentratedGaussian& prior,
                            const PositionMeasurement& m);

}  // namespace galikit
