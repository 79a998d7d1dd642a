#include "gdpf/filter.hpp"

#include "gdpf/errors.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <sstream>

namespace gdpf {

FilterModels make_models(const Hyperparameters& h) {
    FilterModels models;
    models.motion = cv_model(h.dt, h.process_noise_scale);
    models.measurement = position_measurement_model(h.meas_noise_cov);
    return models;
}

std::vector<ClusterId> predict_frame(FilterState& state, const MotionModel& model) {
    const Hyperparameters& h = state.hyper;
    std::vector<ClusterId> frozen;
    for (Cluster& c : state.clusters) {
        try {
            GaussianState next = kf_predict(c.mean, c.cov, model);
            c.mean = std::move(next.mean);
            c.cov = std::move(next.cov);
            c.frozen_frames = 0;
        } catch (const NumericError&) {
            ++c.frozen_frames;
            frozen.push_back(c.id);
        }
        c.existence = c.frozen_frames >= kFrozenFrameLimit ? 0.0 : h.survival_prob * c.existence;
        c.assign_count *= h.count_decay;
    }
    ++state.frame;
    state.previous_assignments = std::move(state.last_assignments);
    state.last_assignments.clear();
    return frozen;
}

LabelChoice choose_best_label(const Measurement& y_i, const FilterState& state, const LinkContext& ctx,
                              const TransitionPrior& transition) {
    ScoreRow row;
    try {
        row = assignment_posterior(y_i, state.clusters, ctx, state.hyper, state.previous_assignments, transition);
    } catch (const DegenerateRowError&) {
        return {std::nullopt, 1.0, true};
    }

    // Entries follow the non-frozen clusters in storage order, new cluster last.
    const ScoreEntry* best = &row.new_entry();
    const Cluster* best_cluster = nullptr;
    std::size_t entry = 0;
    for (const Cluster& c : state.clusters) {
        if (c.frozen()) continue;
        const ScoreEntry& e = row.entries[entry++];
        bool better = e.raw > best->raw;
        if (!better && e.raw == best->raw) {
            if (best_cluster == nullptr) {
                better = true;
            } else if (c.assign_count != best_cluster->assign_count) {
                better = c.assign_count > best_cluster->assign_count;
            } else {
                better = c.id < best_cluster->id;
            }
        }
        if (better) {
            best = &e;
            best_cluster = &c;
        }
    }
    return {best->label, best->posterior, false};
}

ClusterId apply_assignment(FilterState& state, std::size_t index, const Measurement& y_i, Label label,
                           const MeasurementModel& model) {
    const Hyperparameters& h = state.hyper;
    ClusterId id = 0;
    if (!label) {
        GaussianState birth = birth_state(y_i.position, h.meas_noise_cov, h.birth_velocity_max);
        Cluster c;
        c.id = state.next_id++;
        c.mean = std::move(birth.mean);
        c.cov = std::move(birth.cov);
        c.assign_count = 1.0;
        c.existence = h.birth_existence;
        c.born_frame = state.frame;
        c.last_assigned_frame = state.frame;
        id = c.id;
        state.clusters.push_back(std::move(c));
    } else {
        Cluster* c = state.find(*label);
        if (c == nullptr) {
            std::ostringstream os;
            os << "cannot assign to unknown cluster " << *label;
            throw ValidationError(os.str());
        }
        UpdateResult updated = kf_update(c->mean, c->cov, y_i.position, model);
        c->mean = std::move(updated.mean);
        c->cov = std::move(updated.cov);
        c->assign_count += y_i.weight;
        c->existence += (1.0 - c->existence) * h.assoc_gain;
        c->last_assigned_frame = state.frame;
        id = c->id;
    }
    state.last_assignments[index] = id;
    return id;
}

std::vector<ClusterId> prune_components(FilterState& state) {
    const double gamma = state.hyper.gamma;
    std::vector<ClusterId> pruned;
    for (const Cluster& c : state.clusters) {
        if (c.existence < gamma) pruned.push_back(c.id);
    }
    if (pruned.empty()) return pruned;

    std::erase_if(state.clusters, [gamma](const Cluster& c) { return c.existence < gamma; });
    std::erase_if(state.last_assignments, [&pruned](const auto& kv) {
        return std::find(pruned.begin(), pruned.end(), kv.second) != pruned.end();
    });
    return pruned;
}

FrameReport process_frame(FilterState& state, std::span<const Measurement> measurements,
                          const FilterModels& models, LinkMode mode) {
    const auto start = std::chrono::steady_clock::now();
    FrameReport report;

    for (ClusterId id : predict_frame(state, models.motion)) {
        std::ostringstream os;
        os << "cluster " << id << " failed to predict and is frozen";
        report.warnings.push_back(os.str());
    }
    report.frame = state.frame;

    LinkContext ctx(measurements, mode);
    const int frame_index = measurements.empty() ? 0 : measurements.front().frame;
    for (std::size_t i = 0; i < measurements.size(); ++i) {
        const Measurement& y = measurements[i];
        try {
            validate_measurement(y);
            if (y.frame != frame_index) throw ValidationError("measurement frame differs from the rest of the frame");

            const LabelChoice choice = choose_best_label(y, state, ctx, models.transition);
            if (choice.degenerate) {
                std::ostringstream os;
                os << "measurement " << i << ": degenerate score row, opening a new cluster";
                report.warnings.push_back(os.str());
            }
            const ClusterId id = apply_assignment(state, i, y, choice.label, models.measurement);
            ctx.record(i, id);
            if (!choice.label) report.born.push_back(id);
            report.assignments.push_back({i, id, choice.posterior});
        } catch (const Error& e) {
            report.unassigned.push_back({i, e.what()});
        }
    }

    report.pruned = prune_components(state);
    assert(audit(state).empty());
    report.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<TrackEstimate> estimates(const FilterState& state, double speed_threshold) {
    std::vector<TrackEstimate> out;
    out.reserve(state.clusters.size());
    for (const Cluster& c : state.clusters) {
        if (c.mean.size() < 4 || !c.mean.allFinite()) continue;
        TrackEstimate e;
        e.id = c.id;
        e.position = c.mean.head<2>();
        e.velocity = c.mean.segment<2>(2);
        e.existence = c.existence;
        e.moving = e.velocity.norm() > speed_threshold;
        out.push_back(e);
    }
    return out;
}

GreedyDpFilter::GreedyDpFilter(const Hyperparameters& h, LinkMode mode)
    : state_(new_filter_state(h)), models_(make_models(state_.hyper)), mode_(mode) {}

FrameReport GreedyDpFilter::step(std::span<const Measurement> measurements) {
    return process_frame(state_, measurements, models_, mode_);
}

}  // namespace gdpf
