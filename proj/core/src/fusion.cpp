#include "galikit/fusion.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "galikit/errors.hpp"

namespace galikit {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kEigenFloorFactor = 1e-12;

template <typename Mat>
void require_spd(const Mat& m, const char* what, bool allow_semidefinite = false) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
    throw std::invalid_argument(std::string(what) + ": matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(m, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (allow_semidefinite ? min_eig < 0.0 : !(min_eig > 0.0)) {
    throw std::invalid_argument(std::string(what) +
                                ": matrix is not positive definite");
  }
}

template <typename Mat>
std::string condition_report(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(m, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  return "min eigenvalue " + std::to_string(lo) + ", condition number " +
         std::to_string(lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity());
}

// Homogeneous (free vector) coordinates of I4: the 5x4 matrix [I4; 0].
Mat5x4 i4_bar() {
  Mat5x4 m = Mat5x4::Zero();
  m.topLeftCorner<4, 4>().setIdentity();
  return m;
}

HomogeneousEvent origin_event() { return {}; }  // (0, 0, 0, 0, 1)

}  // namespace

ConcentratedGaussian::ConcentratedGaussian(const GalileanFrame& mean_frame,
                                           const Mat10& cov)
    : mean(mean_frame), covariance(cov) {
  require_spd(covariance, "ConcentratedGaussian");
}

void PositionMeasurement::validate() const {
  require_spd(position_cov, "PositionMeasurement");
  if (timestamp_var < 0.0) {
    throw std::invalid_argument("PositionMeasurement: timestamp variance < 0");
  }
}

HomogeneousEvent measurement_event(const PositionMeasurement& m) {
  return {m.position, m.timestamp};
}

GalileanFrame relative_frame_estimate(const ConcentratedGaussian& prior,
                                      double timestamp) {
  return {Rotation3::identity(), Vec3::Zero(), Vec3::Zero(),
          timestamp - prior.mean.time};
}

Vec4 error_measurement(const ConcentratedGaussian& prior,
                       const HomogeneousEvent& y) {
  const HomogeneousEvent d = act_event(inverse(prior.mean.as_element()), y);
  return (Vec4() << d.position, d.time).finished();
}

NoiseMapping noise_mapping(const ConcentratedGaussian& prior) {
  NoiseMapping n;
  const Mat5x4 i4 = i4_bar();
  n.event = i4.transpose() * inverse(prior.mean.as_element()).matrix() * i4;
  n.event(3, 3) -= 1.0;  // minus e4 e4^T
  n.state(3, 9) = 1.0;   // e4 e10^T
  return n;
}

RelativeCovariance relative_covariance(const Mat4& n_mu, const Mat4& sigma,
                                       const Mat4x10& n_eta, const Mat10& q) {
  require_spd(sigma, "relative_covariance: sigma", /*allow_semidefinite=*/true);
  require_spd(q, "relative_covariance: q", /*allow_semidefinite=*/true);

  RelativeCovariance out;
  const Mat4 raw =
      n_mu * sigma * n_mu.transpose() + n_eta * q * n_eta.transpose();
  out.value = 0.5 * (raw + raw.transpose());

  const double floor = kEigenFloorFactor * out.value.trace();
  Eigen::SelfAdjointEigenSolver<Mat4> eig(out.value, Eigen::EigenvaluesOnly);
  if (floor > 0.0 && eig.eigenvalues().minCoeff() < floor) {
    out.value += floor * Mat4::Identity();
    out.regularized = true;
  }
  return out;
}

Mat4x10 measurement_matrix(const GalileanFrame& relative_estimate,
                           const HomogeneousEvent& y0) {
  const HomogeneousEvent z =
      act_event(relative_estimate.as_element(), y0);
  // C eps = -I4_bar^T eps^ z_bar with z_bar = (z_p, z_t, 1):
  //   eps^ z_bar = (omega x z_p + z_t a + w, kappa, 0).
  Mat4x10 c = Mat4x10::Zero();
  c.block<3, 3>(0, kTangentOmega) = skew3(z.position);
  c.block<3, 3>(0, kTangentAccel) = -z.time * Mat3::Identity();
  c.block<3, 3>(0, kTangentVel) = -Mat3::Identity();
  c(3, kTangentClock) = -1.0;
  return c;
}

FusionResult fuse(const ConcentratedGaussian& prior, const HomogeneousEvent& y,
                  const Mat4& sigma, const GalileanFrame& relative_estimate) {
  const HomogeneousEvent y0 = origin_event();
  const NoiseMapping n = noise_mapping(prior);
  const RelativeCovariance sigma_ki =
      relative_covariance(n.event, sigma, n.state, prior.covariance);

  const HomogeneousEvent predicted =
      act_event(relative_estimate.as_element(), y0);
  const Vec4 d = error_measurement(prior, y);
  const Vec4 innovation =
      d - (Vec4() << predicted.position, predicted.time).finished();
  const Mat4x10 c = measurement_matrix(relative_estimate, y0);

  const Eigen::LLT<Mat4> sigma_llt(sigma_ki.value);
  if (sigma_llt.info() != Eigen::Success) {
    throw NumericalError("fuse: relative covariance is not positive definite (" +
                         condition_report(sigma_ki.value) + ")");
  }
  const Mat4x10 sigma_inv_c = sigma_llt.solve(c);

  const Eigen::LLT<Mat10> prior_llt(prior.covariance);
  if (prior_llt.info() != Eigen::Success) {
    throw NumericalError("fuse: prior covariance is not positive definite (" +
                         condition_report(prior.covariance) + ")");
  }
  Mat10 information = prior_llt.solve(Mat10::Identity());
  information += c.transpose() * sigma_inv_c;
  information = 0.5 * (information + information.transpose()).eval();

  const Eigen::LLT<Mat10> info_llt(information);
  if (info_llt.info() != Eigen::Success) {
    throw NumericalError("fuse: information matrix is not positive definite (" +
                         condition_report(information) + ")");
  }

  FusionResult out;
  out.innovation = innovation;
  out.correction = info_llt.solve(sigma_inv_c.transpose() * innovation);

  const GalileanFrame mean = GalileanFrame::from_element(
      compose(prior.mean.as_element(), exp(out.correction)));

  // Hessian covariance with the exponential-chart correction, equivalent
  // to the reset step of a filter implementation.
  const Mat10 jac = right_jacobian(out.correction);
  const Mat10 updated = info_llt.solve(Mat10::Identity());
  Mat10 q_star = jac.transpose() * updated * jac;
  q_star = 0.5 * (q_star + q_star.transpose()).eval();

  out.posterior = ConcentratedGaussian(mean, q_star);
  return out;
}

FusionResult map_update(const ConcentratedGaussian& prior,
                        const PositionMeasurement& m) {
  m.validate();
  Mat4 sigma = Mat4::Zero();
  sigma.topLeftCorner<3, 3>() = m.position_cov;
  sigma(3, 3) = m.timestamp_var;
  return fuse(prior, measurement_event(m), sigma,
              relative_frame_estimate(prior, m.timestamp));
}

FusionResult classical_fuse(const ConcentratedGaussian& prior,
                            const PositionMeasurement& m) {
  m.validate();
  Mat4 sigma = Mat4::Zero();
  sigma.topLeftCorner<3, 3>() = m.position_cov;
  // Time-blind: no timestamp variance, no relative time offset.
  return fuse(prior, measurement_event(m), sigma, GalileanFrame{});
}

}  // namespace galikit
