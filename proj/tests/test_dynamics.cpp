#include "gdpf/dynamics.hpp"
#include "gdpf/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace gdpf;

namespace {

constexpr double kTol = 1e-9;

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

Eigen::MatrixXd scalar(double v) { return Eigen::MatrixXd::Constant(1, 1, v); }

}  // namespace

TEST(CvModel, TransitionAndNoise) {
    const MotionModel m = cv_model(0.1, 2.0);
    EXPECT_DOUBLE_EQ(m.transition(0, 2), 0.1);
    EXPECT_DOUBLE_EQ(m.transition(1, 3), 0.1);
    EXPECT_DOUBLE_EQ(m.transition(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(m.transition(2, 0), 0.0);

    const double dt = 0.1, q = 2.0;
    for (int axis = 0; axis < 2; ++axis) {
        EXPECT_NEAR(m.process_noise(axis, axis), q * std::pow(dt, 4) / 4.0, 1e-15);
        EXPECT_NEAR(m.process_noise(axis, axis + 2), q * std::pow(dt, 3) / 2.0, 1e-15);
        EXPECT_NEAR(m.process_noise(axis + 2, axis), q * std::pow(dt, 3) / 2.0, 1e-15);
        EXPECT_NEAR(m.process_noise(axis + 2, axis + 2), q * dt * dt, 1e-15);
    }
    EXPECT_DOUBLE_EQ(m.process_noise(0, 1), 0.0);
    EXPECT_DOUBLE_EQ(m.process_noise(0, 3), 0.0);
}

TEST(CvModel, ZeroNoise) { EXPECT_TRUE(cv_model(1.0, 0.0).process_noise.isZero()); }

TEST(CvModel, RejectsBadArguments) {
    EXPECT_THROW(cv_model(0.0, 1.0), ValidationError);
    EXPECT_THROW(cv_model(0.1, -1.0), ValidationError);
}

TEST(KfPredict, UnitStep) {
    const MotionModel m = cv_model(1.0, 0.0);
    const GaussianState s = kf_predict(vec({0, 0, 1, 0}), Eigen::MatrixXd::Identity(4, 4), m);
    EXPECT_TRUE(s.mean.isApprox(vec({1, 0, 1, 0})));
    const GaussianState t = kf_predict(vec({0, 0, 2, 0}), Eigen::MatrixXd::Identity(4, 4), m);
    EXPECT_TRUE(t.mean.isApprox(vec({2, 0, 2, 0})));
    // Phi I Phi^T with dt = 1: position variance 1 + 1.
    EXPECT_NEAR(t.cov(0, 0), 2.0, kTol);
    EXPECT_NEAR(t.cov(0, 2), 1.0, kTol);
}

TEST(KfPredict, IdentityDynamicsLeaveStateAlone) {
    MotionModel m{Eigen::MatrixXd::Identity(4, 4), Eigen::MatrixXd::Zero(4, 4), 1.0};
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(4, 4);
    p(0, 1) = p(1, 0) = 0.3;
    const GaussianState s = kf_predict(vec({1, 2, 3, 4}), p, m);
    EXPECT_EQ(s.mean, vec({1, 2, 3, 4}));
    EXPECT_EQ(s.cov, p);
}

TEST(KfPredict, Scalar) {
    MotionModel m{scalar(1.0), scalar(0.5), 1.0};
    const GaussianState s = kf_predict(vec({0}), scalar(1.0), m);
    EXPECT_NEAR(s.mean(0), 0.0, kTol);
    EXPECT_NEAR(s.cov(0, 0), 1.5, kTol);
}

TEST(KfPredict, NonFiniteInputThrows) {
    const MotionModel m = cv_model(0.1, 1.0);
    Eigen::VectorXd x = vec({0, 0, 0, 0});
    x(1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(kf_predict(x, Eigen::MatrixXd::Identity(4, 4), m), NumericError);
}

TEST(KfUpdate, Scalar) {
    MeasurementModel m{scalar(1.0), scalar(1.0)};
    const UpdateResult r = kf_update(vec({0}), scalar(1.0), vec({2}), m);
    EXPECT_NEAR(r.mean(0), 1.0, kTol);
    EXPECT_NEAR(r.cov(0, 0), 0.5, kTol);
    // N(2; 0, 2)
    EXPECT_NEAR(r.likelihood, std::exp(-1.0) / std::sqrt(2.0 * std::numbers::pi * 2.0), kTol);
}

TEST(KfUpdate, HugeNoiseIsUninformative) {
    MeasurementModel m{scalar(1.0), scalar(1e12)};
    const UpdateResult r = kf_update(vec({3}), scalar(1.0), vec({250}), m);
    EXPECT_NEAR(r.mean(0), 3.0, 1e-6);
}

TEST(KfUpdate, ZeroInnovation) {
    const MeasurementModel m = position_measurement_model(Eigen::Matrix2d::Identity() * 0.04);
    const Eigen::VectorXd x = vec({1, 2, 0.5, -0.5});
    const Eigen::MatrixXd p = Eigen::MatrixXd::Identity(4, 4);
    const UpdateResult r = kf_update(x, p, vec({1, 2}), m);
    EXPECT_EQ(r.mean, x);
    EXPECT_LT(r.cov(0, 0), p(0, 0));
    EXPECT_LT(r.cov(1, 1), p(1, 1));
}

TEST(KfUpdate, MatchesTextbookGain) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    const MeasurementModel m = position_measurement_model((Eigen::Matrix2d() << 0.3, 0.05, 0.05, 0.2).finished());
    for (int t = 0; t < 50; ++t) {
        Eigen::MatrixXd a(4, 4);
        for (int i = 0; i < 16; ++i) a(i / 4, i % 4) = n(rng);
        const Eigen::MatrixXd p = a * a.transpose() + Eigen::MatrixXd::Identity(4, 4) * 0.1;
        const Eigen::VectorXd x = vec({n(rng), n(rng), n(rng), n(rng)});
        const Eigen::VectorXd y = vec({n(rng), n(rng)});

        const Eigen::MatrixXd s = m.observation * p * m.observation.transpose() + m.noise;
        const Eigen::MatrixXd k = p * m.observation.transpose() * s.inverse();
        const Eigen::VectorXd mean = x + k * (y - m.observation * x);
        const Eigen::MatrixXd cov = (Eigen::MatrixXd::Identity(4, 4) - k * m.observation) * p;

        const UpdateResult r = kf_update(x, p, y, m);
        EXPECT_LT((r.mean - mean).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_LT((r.cov - cov).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(KfUpdate, SingularInnovationThrows) {
    MeasurementModel m{scalar(1.0), scalar(0.0)};
    EXPECT_THROW(kf_update(vec({0}), scalar(0.0), vec({1}), m), SingularInnovationError);
}

TEST(GaussianDensity, StandardNormal) {
    EXPECT_NEAR(gaussian_density(vec({0}), scalar(1.0)), 1.0 / std::sqrt(2.0 * std::numbers::pi), kTol);
    EXPECT_NEAR(gaussian_density(vec({1, 1}), Eigen::MatrixXd::Identity(2, 2)),
                std::exp(-1.0) / (2.0 * std::numbers::pi), kTol);
    EXPECT_THROW(gaussian_density(vec({0}), scalar(-1.0)), SingularInnovationError);
}

TEST(BirthState, UninformedVelocity) {
    const GaussianState s = birth_state({3.0, -1.0}, Eigen::Matrix2d::Identity() * 0.04, 15.0);
    EXPECT_TRUE(s.mean.isApprox(vec({3, -1, 0, 0})));
    EXPECT_NEAR(s.cov(0, 0), 0.16, kTol);
    EXPECT_NEAR(s.cov(1, 1), 0.16, kTol);
    EXPECT_NEAR(s.cov(2, 2), 75.0, kTol);
    EXPECT_NEAR(s.cov(3, 3), 75.0, kTol);
    EXPECT_DOUBLE_EQ(s.cov(0, 2), 0.0);
}
