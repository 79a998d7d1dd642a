#include "gdpf/dynamics.hpp"

#include "gdpf/errors.hpp"

#include <cmath>
#include <numbers>

namespace gdpf {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* what) {
    if (!m.allFinite()) throw NumericError(std::string(what) + " is not finite");
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

MotionModel cv_model(double dt, double q) {
    if (!(dt > 0.0)) throw ValidationError("dt must be > 0");
    if (!(q >= 0.0)) throw ValidationError("process noise scale must be >= 0");

    MotionModel model;
    model.dt = dt;
    model.transition = Eigen::MatrixXd::Identity(4, 4);
    model.transition(0, 2) = dt;
    model.transition(1, 3) = dt;

    const double dt2 = dt * dt;
    const double pos = q * dt2 * dt2 / 4.0;
    const double cross = q * dt2 * dt / 2.0;
    const double vel = q * dt2;
    model.process_noise = Eigen::MatrixXd::Zero(4, 4);
    for (int axis = 0; axis < 2; ++axis) {
        model.process_noise(axis, axis) = pos;
        model.process_noise(axis, axis + 2) = cross;
        model.process_noise(axis + 2, axis) = cross;
        model.process_noise(axis + 2, axis + 2) = vel;
    }
    return model;
}

MeasurementModel position_measurement_model(const Eigen::Matrix2d& noise) {
    MeasurementModel model;
    model.observation = Eigen::MatrixXd::Zero(2, 4);
    model.observation(0, 0) = 1.0;
    model.observation(1, 1) = 1.0;
    model.noise = noise;
    return model;
}

GaussianState kf_predict(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov, const MotionModel& model) {
    require_finite(mean, "state mean");
    require_finite(cov, "state covariance");

    GaussianState out;
    out.mean = model.transition * mean;
    out.cov = symmetrized(model.transition * cov * model.transition.transpose() + model.process_noise);

    require_finite(out.mean, "predicted mean");
    require_finite(out.cov, "predicted covariance");
    return out;
}

double gaussian_density(const Eigen::VectorXd& residual, const Eigen::MatrixXd& cov) {
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) throw SingularInnovationError("innovation covariance is not positive definite");
    const Eigen::MatrixXd& l = llt.matrixL();
    const double log_det = 2.0 * l.diagonal().array().log().sum();
    const Eigen::VectorXd whitened = llt.matrixL().solve(residual);
    const double dim = static_cast<double>(residual.size());
    return std::exp(-0.5 * (whitened.squaredNorm() + log_det + dim * std::log(2.0 * std::numbers::pi)));
}

UpdateResult kf_update(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov, const Eigen::VectorXd& y,
                       const MeasurementModel& model) {
    require_finite(mean, "state mean");
    require_finite(cov, "state covariance");
    require_finite(y, "measurement");

    const Eigen::MatrixXd& c = model.observation;
    const Eigen::MatrixXd s = symmetrized(c * cov * c.transpose() + model.noise);
    Eigen::LLT<Eigen::MatrixXd> llt(s);
    if (llt.info() != Eigen::Success || !(s.determinant() > 0.0)) {
        throw SingularInnovationError("innovation covariance is singular");
    }

    const Eigen::VectorXd innovation = y - c * mean;
    // K = P C^T S^-1, solved as S K^T = C P.
    const Eigen::MatrixXd gain = llt.solve(c * cov).transpose();
    const Eigen::MatrixXd i_kc = Eigen::MatrixXd::Identity(cov.rows(), cov.cols()) - gain * c;

    UpdateResult out;
    out.mean = mean + gain * innovation;
    out.cov = symmetrized(i_kc * cov * i_kc.transpose() + gain * model.noise * gain.transpose());
    out.likelihood = gaussian_density(innovation, s);
    require_finite(out.mean, "updated mean");
    require_finite(out.cov, "updated covariance");
    return out;
}

GaussianState birth_state(const Eigen::Vector2d& position, const Eigen::Matrix2d& meas_noise, double v_max) {
    GaussianState out;
    out.mean = Eigen::VectorXd::Zero(4);
    out.mean.head<2>() = position;
    const double vel_var = v_max * v_max / 3.0;
    out.cov = Eigen::MatrixXd::Zero(4, 4);
    out.cov.diagonal() << 4.0 * meas_noise(0, 0), 4.0 * meas_noise(1, 1), vel_var, vel_var;
    return out;
}

}  // namespace gdpf
