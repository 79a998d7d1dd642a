#include "gdpf/assoc_priors.hpp"

#include "gdpf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace gdpf {

std::string_view to_string(LinkMode mode) {
    switch (mode) {
        case LinkMode::bbox_signed_distance: return "bbox";
        case LinkMode::grid_neighbor: return "grid";
        case LinkMode::none: return "none";
    }
    return "unknown";
}

LinkContext::LinkContext(std::span<const Measurement> measurements, LinkMode mode)
    : measurements_(measurements), mode_(mode) {}

std::span<const std::size_t> LinkContext::members(ClusterId id) const {
    auto it = members_.find(id);
    if (it == members_.end()) return {};
    return it->second;
}

void LinkContext::record(std::size_t index, ClusterId id) {
    if (index >= measurements_.size()) throw ValidationError("link context: measurement index out of range");
    members_[id].push_back(index);
    ++processed_;
}

double crp_weight(double n_k, std::size_t processed_count, double alpha, bool is_new) {
    if (!(alpha > 0.0)) throw ValidationError("alpha must be > 0");
    if (!(n_k >= 0.0)) throw ValidationError("n_k must be >= 0");
    const double denom = static_cast<double>(processed_count) + alpha;
    // An empty table is indistinguishable from a new one.
    return (is_new || n_k == 0.0 ? alpha : n_k) / denom;
}

double box_signed_distance(const Eigen::Vector2d& point, const Eigen::Vector2d& center, const BoxExtent& box) {
    const double c = std::cos(box.heading);
    const double s = std::sin(box.heading);
    const Eigen::Vector2d d = point - center;
    // Rotate into the box frame.
    const Eigen::Vector2d local(c * d.x() + s * d.y(), -s * d.x() + c * d.y());
    const Eigen::Vector2d q = local.cwiseAbs() - Eigen::Vector2d(box.half_x, box.half_y);
    const double outside = q.cwiseMax(0.0).norm();
    const double inside = std::min(q.maxCoeff(), 0.0);
    return outside + inside;
}

double bbox_link_prior(const Measurement& y_i, const Measurement& y_l, double scale) {
    if (!y_i.extent || !y_l.extent) throw ModeError("bbox link prior needs measurements with extent");
    if (!(scale > 0.0)) throw ValidationError("link scale must be > 0");
    const double s = box_signed_distance(y_i.position, y_l.position, *y_l.extent);
    return std::exp(-std::max(s, 0.0) / scale);
}

double grid_link_prior(const Measurement& y_i, const Measurement& y_l) {
    if (!y_i.cell || !y_l.cell) throw ModeError("grid link prior needs measurements with a cell index");
    const int dr = std::abs(y_i.cell->row - y_l.cell->row);
    const int dc = std::abs(y_i.cell->col - y_l.cell->col);
    return (dr <= 1 && dc <= 1) ? 1.0 : 0.0;
}

double ddcrp_prior(const Measurement& y_i, Label candidate, const LinkContext& ctx, double alpha,
                   const LinkParams& params) {
    if (!candidate) return alpha;
    if (ctx.mode() == LinkMode::none) return 1.0;

    const auto members = ctx.members(*candidate);
    if (members.empty()) return params.floor;

    const auto measurements = ctx.measurements();
    double best = 0.0;
    for (std::size_t l : members) {
        const Measurement& y_l = measurements[l];
        const double p = ctx.mode() == LinkMode::bbox_signed_distance ? bbox_link_prior(y_i, y_l, params.scale)
                                                                      : grid_link_prior(y_i, y_l);
        best = std::max(best, p);
        if (best >= 1.0) break;
    }
    return best;
}

double car_prior_likelihood(const Measurement& y_i, const Cluster& cluster, double a, double b) {
    const double dx = cluster.mean(0) - y_i.position.x();
    const double dy = cluster.mean(1) - y_i.position.y();
    return std::exp(-(dx * dx / a + dy * dy / b));
}

double transition_prior(Label /*candidate*/, const AssignmentRecord& /*previous*/) { return 1.0; }

void normalize(ScoreRow& row) {
    double total = 0.0;
    for (const auto& e : row.entries) {
        if (!(e.raw >= 0.0) || !std::isfinite(e.raw)) throw NumericError("score entries must be finite and >= 0");
        total += e.raw;
    }
    if (!(total > 0.0)) throw DegenerateRowError("all association scores are zero");
    for (auto& e : row.entries) e.posterior = e.raw / total;
}

ScoreRow assignment_posterior(const Measurement& y_i, std::span<const Cluster> clusters, const LinkContext& ctx,
                              const Hyperparameters& h, const AssignmentRecord& previous,
                              const TransitionPrior& transition) {
    const LinkParams link{h.link_scale, h.link_floor};
    const std::size_t processed = ctx.processed_count();

    ScoreRow row;
    row.entries.reserve(clusters.size() + 1);
    for (const Cluster& c : clusters) {
        if (c.frozen()) continue;
        const double link_factor = ddcrp_prior(y_i, c.id, ctx, h.alpha, link);
        const double crp_factor = h.use_crp_factor ? crp_weight(c.assign_count, processed, h.alpha, false) : 1.0;
        const double raw = link_factor * crp_factor * car_prior_likelihood(y_i, c, h.a, h.b) * transition(c.id, previous);
        row.entries.push_back({c.id, raw, 0.0});
    }

    const double new_crp = h.use_crp_factor ? crp_weight(0.0, processed, h.alpha, true) : 1.0;
    const double new_raw = ddcrp_prior(y_i, std::nullopt, ctx, h.alpha, link) * new_crp * h.new_cluster_likelihood *
                           transition(std::nullopt, previous);
    row.entries.push_back({std::nullopt, new_raw, 0.0});

    normalize(row);
    return row;
}

}  // namespace gdpf
