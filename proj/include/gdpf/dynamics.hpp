#pragma once

#include <Eigen/Dense>

namespace gdpf {

/// x(t) = transition * x(t-1) + w,  w ~ N(0, process_noise).
struct MotionModel {
    Eigen::MatrixXd transition;
    Eigen::MatrixXd process_noise;
    double dt = 1.0;
};

/// y(t) = observation * x(t) + v,  v ~ N(0, noise).
struct MeasurementModel {
    Eigen::MatrixXd observation;
    Eigen::MatrixXd noise;
};

struct GaussianState {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
};

struct UpdateResult {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
    /// Density of the innovation under N(0, S).
    double likelihood = 0.0;
};

/// Constant-velocity model over state (x, y, vx, vy) with discrete white-noise
/// acceleration of intensity q on each axis.
MotionModel cv_model(double dt, double q);

/// Observes (x, y) out of (x, y, vx, vy).
MeasurementModel position_measurement_model(const Eigen::Matrix2d& noise);

GaussianState kf_predict(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov, const MotionModel& model);

/// Kalman correction with the Joseph-form covariance update.
UpdateResult kf_update(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov, const Eigen::VectorXd& y,
                       const MeasurementModel& model);

/// N(residual; 0, cov). Throws SingularInnovationError when cov cannot be factorized.
double gaussian_density(const Eigen::VectorXd& residual, const Eigen::MatrixXd& cov);

/// Uninformed-velocity birth: position from the measurement, zero velocity,
/// position variance 4x the measurement noise diagonal, velocity variance v_max^2/3.
GaussianState birth_state(const Eigen::Vector2d& position, const Eigen::Matrix2d& meas_noise, double v_max);

}  // namespace gdpf
