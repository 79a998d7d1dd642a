#include "gdpf/errors.hpp"
#include "gdpf/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace gdpf;

namespace {

std::string validation_message(const Hyperparameters& h) {
    try {
        validate_hyperparameters(h);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}

Cluster healthy_cluster(ClusterId id) {
    Cluster c;
    c.id = id;
    c.mean = Eigen::VectorXd::Zero(4);
    c.cov = Eigen::MatrixXd::Identity(4, 4);
    c.existence = 0.5;
    c.assign_count = 1.0;
    return c;
}

}  // namespace

TEST(Hyperparameters, DefaultsAreValid) {
    Hyperparameters h;
    EXPECT_NO_THROW(validate_hyperparameters(h));
    EXPECT_EQ(&validate_hyperparameters(h), &h);
}

TEST(Hyperparameters, RejectsOutOfRange) {
    Hyperparameters h;
    h.alpha = 0.0;
    EXPECT_EQ(validation_message(h), "alpha must be > 0");

    h = {};
    h.gamma = 1.5;
    EXPECT_EQ(validation_message(h), "gamma must be in (0,1)");
    h.gamma = 0.0;
    EXPECT_EQ(validation_message(h), "gamma must be in (0,1)");

    h = {};
    h.a = -1.0;
    EXPECT_EQ(validation_message(h), "a must be > 0");

    h = {};
    h.survival_prob = 1.2;
    EXPECT_EQ(validation_message(h), "survival_prob must be in (0,1]");

    h = {};
    h.meas_noise_cov(0, 1) = 0.5;
    EXPECT_EQ(validation_message(h), "meas_noise_cov must be symmetric");

    h = {};
    h.meas_noise_cov << 1.0, 2.0, 2.0, 1.0;
    EXPECT_EQ(validation_message(h), "meas_noise_cov must be positive definite");

    h = {};
    h.alpha = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(validate_hyperparameters(h), ValidationError);
}

TEST(FilterState, StartsEmpty) {
    const FilterState s = new_filter_state({});
    EXPECT_TRUE(s.clusters.empty());
    EXPECT_EQ(s.frame, 0);
    EXPECT_EQ(s.next_id, 0);
    EXPECT_TRUE(s.last_assignments.empty());
}

TEST(FilterState, InvalidHyperparametersThrow) {
    Hyperparameters h;
    h.gamma = 2.0;
    EXPECT_THROW(new_filter_state(h), ValidationError);
}

TEST(FilterState, IndependentCopies) {
    FilterState a = new_filter_state({});
    const FilterState b = new_filter_state({});
    a.clusters.push_back(healthy_cluster(0));
    a.next_id = 1;
    EXPECT_TRUE(b.clusters.empty());
    EXPECT_EQ(b.next_id, 0);
}

TEST(FilterState, FindById) {
    FilterState s = new_filter_state({});
    s.clusters = {healthy_cluster(3), healthy_cluster(8)};
    s.next_id = 9;
    ASSERT_NE(s.find(8), nullptr);
    EXPECT_EQ(s.find(8)->id, 8);
    EXPECT_EQ(s.find(4), nullptr);
}

TEST(Audit, HealthyStateIsClean) {
    FilterState s = new_filter_state({});
    s.clusters = {healthy_cluster(0), healthy_cluster(1)};
    s.next_id = 2;
    s.last_assignments[0] = 1;
    EXPECT_TRUE(audit(s).empty());
}

TEST(Audit, FlagsBrokenInvariants) {
    FilterState s = new_filter_state({});
    s.clusters = {healthy_cluster(0), healthy_cluster(0)};
    s.next_id = 1;
    EXPECT_FALSE(audit(s).empty());

    s.clusters = {healthy_cluster(0)};
    s.clusters[0].existence = 1.5;
    EXPECT_EQ(audit(s).size(), 1u);

    s.clusters = {healthy_cluster(0)};
    s.clusters[0].cov(0, 1) = 0.5;
    EXPECT_EQ(audit(s).size(), 1u);

    s.clusters = {healthy_cluster(0)};
    s.clusters[0].cov(2, 2) = -1.0;
    EXPECT_EQ(audit(s).size(), 1u);

    s.clusters = {healthy_cluster(0)};
    s.next_id = 0;
    EXPECT_EQ(audit(s).size(), 1u);

    s.clusters = {healthy_cluster(0)};
    s.next_id = 1;
    s.last_assignments[2] = 5;
    EXPECT_EQ(audit(s).size(), 1u);
}

TEST(Measurement, Validation) {
    Measurement m;
    EXPECT_NO_THROW(validate_measurement(m));

    m.weight = 0.0;
    EXPECT_THROW(validate_measurement(m), ValidationError);
    m.weight = 1.0;

    m.position.x() = std::numeric_limits<double>::infinity();
    EXPECT_THROW(validate_measurement(m), ValidationError);
    m.position.x() = 0.0;

    m.extent = BoxExtent{-1.0, 1.0, 0.0};
    EXPECT_THROW(validate_measurement(m), ValidationError);

    m.extent = BoxExtent{1.0, 1.0, 0.0};
    m.cell = GridCell{1, 1};
    EXPECT_THROW(validate_measurement(m), ValidationError);
}
