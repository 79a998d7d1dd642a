#include "gdpf/model.hpp"

#include "gdpf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace gdpf {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ValidationError(message);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void validate_measurement(const Measurement& m) {
    require(m.position.allFinite(), "measurement position must be finite");
    require(finite(m.weight) && m.weight > 0.0 && m.weight <= 1.0, "measurement weight must be in (0,1]");
    require(!(m.extent && m.cell), "measurement may carry an extent or a grid cell, not both");
    if (m.extent) {
        require(finite(m.extent->half_x) && finite(m.extent->half_y) && finite(m.extent->heading),
                "measurement extent must be finite");
        require(m.extent->half_x >= 0.0 && m.extent->half_y >= 0.0, "measurement extent half lengths must be >= 0");
    }
}

const Hyperparameters& validate_hyperparameters(const Hyperparameters& h) {
    require(finite(h.alpha) && h.alpha > 0.0, "alpha must be > 0");
    require(finite(h.gamma) && h.gamma > 0.0 && h.gamma < 1.0, "gamma must be in (0,1)");
    require(finite(h.a) && h.a > 0.0, "a must be > 0");
    require(finite(h.b) && h.b > 0.0, "b must be > 0");
    require(finite(h.process_noise_scale) && h.process_noise_scale >= 0.0, "process_noise_scale must be >= 0");
    require(h.meas_noise_cov.allFinite(), "meas_noise_cov must be finite");
    require((h.meas_noise_cov - h.meas_noise_cov.transpose()).cwiseAbs().maxCoeff() <= 1e-12,
            "meas_noise_cov must be symmetric");
    require(h.meas_noise_cov.llt().info() == Eigen::Success && h.meas_noise_cov.determinant() > 0.0,
            "meas_noise_cov must be positive definite");
    require(finite(h.survival_prob) && h.survival_prob > 0.0 && h.survival_prob <= 1.0,
            "survival_prob must be in (0,1]");
    require(finite(h.assoc_gain) && h.assoc_gain > 0.0 && h.assoc_gain <= 1.0, "assoc_gain must be in (0,1]");
    require(finite(h.count_decay) && h.count_decay >= 0.0 && h.count_decay <= 1.0, "count_decay must be in [0,1]");
    require(finite(h.birth_existence) && h.birth_existence > 0.0 && h.birth_existence <= 1.0,
            "birth_existence must be in (0,1]");
    require(finite(h.new_cluster_likelihood) && h.new_cluster_likelihood > 0.0, "new_cluster_likelihood must be > 0");
    require(finite(h.dt) && h.dt > 0.0, "dt must be > 0");
    require(finite(h.link_scale) && h.link_scale > 0.0, "link_scale must be > 0");
    require(finite(h.link_floor) && h.link_floor >= 0.0, "link_floor must be >= 0");
    require(finite(h.birth_velocity_max) && h.birth_velocity_max > 0.0, "birth_velocity_max must be > 0");
    return h;
}

const Cluster* FilterState::find(ClusterId id) const {
    auto it = std::find_if(clusters.begin(), clusters.end(), [id](const Cluster& c) { return c.id == id; });
    return it == clusters.end() ? nullptr : &*it;
}

Cluster* FilterState::find(ClusterId id) {
    return const_cast<Cluster*>(std::as_const(*this).find(id));
}

FilterState new_filter_state(const Hyperparameters& h) {
    FilterState state;
    state.hyper = validate_hyperparameters(h);
    return state;
}

std::vector<std::string> audit(const FilterState& state) {
    std::vector<std::string> problems;
    std::set<ClusterId> seen;
    auto report = [&problems](const Cluster& c, const std::string& what) {
        std::ostringstream os;
        os << "cluster " << c.id << ": " << what;
        problems.push_back(os.str());
    };
    for (const auto& c : state.clusters) {
        if (!seen.insert(c.id).second) report(c, "duplicate id");
        if (c.id >= state.next_id) report(c, "id not below next_id");
        if (!(c.existence >= 0.0 && c.existence <= 1.0)) report(c, "existence outside [0,1]");
        if (!(c.assign_count >= 0.0)) report(c, "negative assign_count");
        if (c.frozen()) continue;
        if (c.cov.rows() != c.cov.cols() || c.cov.rows() != c.mean.size()) {
            report(c, "state shape mismatch");
            continue;
        }
        if ((c.cov - c.cov.transpose()).cwiseAbs().maxCoeff() > 1e-9) report(c, "covariance not symmetric");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c.cov, Eigen::EigenvaluesOnly);
        if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
            report(c, "covariance not positive definite");
        }
    }
    for (const auto& [index, id] : state.last_assignments) {
        if (!seen.contains(id)) {
            std::ostringstream os;
            os << "measurement " << index << " assigned to missing cluster " << id;
            problems.push_back(os.str());
        }
    }
    return problems;
}

}  // namespace gdpf
