#include "cacsim/cac.hpp"

#include <algorithm>
#include <string>

#include "cacsim/errors.hpp"
#include "cacsim/outage.hpp"

namespace cacsim {

namespace {

double deterministic_load(const CellState& state,
                          const std::vector<TrafficClass>& classes,
                          const PowerAllocation& alloc) {
    double load = 0.0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        load += alloc.theta[i] * static_cast<double>(classes[i].code_count_C) *
                static_cast<double>(state.own_counts[i]) * classes[i].activity_alpha;
    }
    return load;
}

} // namespace

AdmissionDecision admit(const CellState& state,
                        const CallArrival& arrival,
                        const CacPolicy& policy,
                        const std::vector<TrafficClass>& classes,
                        const PowerAllocation& alloc,
                        const SystemConfig& cfg) {
    if (arrival.class_index < 0 ||
        static_cast<std::size_t>(arrival.class_index) >= classes.size())
        throw config_error("admit: unknown class " + std::to_string(arrival.class_index));
    if (state.own_counts.size() != classes.size())
        throw config_error("admit: cell state does not match class list");
    if (!(policy.handoff_guard >= 0.0 && policy.handoff_guard < 1.0))
        throw config_error("admit: handoff_guard must lie in [0, 1)");

    // Fresh calls face the tightened budget; handoff calls the full one.
    const double guard = arrival.kind == CallKind::fresh ? policy.handoff_guard : 0.0;

    CellState post = state;
    post.own_counts[arrival.class_index] += 1;

    AdmissionDecision decision;
    if (policy.variant == PolicyVariant::outage_predictive) {
        const OutageEstimate est = outage_gaussian(post, classes, alloc, cfg);
        decision.predicted_p_out = est.p_out;
        for (std::size_t j = 0; j < classes.size(); ++j) {
            const double budget = classes[j].outage_target * (1.0 - guard);
            if (est.p_out[j] > budget) {
                decision.admitted = false;
                decision.binding_class = classes[j].index;
                return decision;
            }
        }
        decision.admitted = true;
        return decision;
    }

    // fixed_threshold: deterministic post-admission load against the
    // tightest power-weighted capacity threshold.
    const ClassThresholds th = class_thresholds(classes, alloc, cfg);
    std::size_t binding = 0;
    double limit = th.eta[0];
    for (std::size_t j = 1; j < th.eta.size(); ++j) {
        if (th.eta[j] < limit) {
            limit = th.eta[j];
            binding = j;
        }
    }
    const double load = deterministic_load(post, classes, alloc);
    if (load <= limit * (1.0 - guard)) {
        decision.admitted = true;
    } else {
        decision.admitted = false;
        decision.binding_class = classes[binding].index;
    }
    return decision;
}

std::uint32_t max_admissible(const std::vector<TrafficClass>& classes,
                             const PowerAllocation& alloc,
                             const SystemConfig& cfg,
                             const CacPolicy& policy,
                             int class_index) {
    if (class_index < 0 || static_cast<std::size_t>(class_index) >= classes.size())
        throw config_error("max_admissible: unknown class " + std::to_string(class_index));

    // Admission is monotone in the count, so the first block ends the scan.
    constexpr std::uint32_t scan_cap = 1u << 20;
    CellState state = CellState::empty(classes.size());
    const CallArrival arrival{class_index, CallKind::fresh};
    std::uint32_t n = 0;
    while (n < scan_cap) {
        if (!admit(state, arrival, policy, classes, alloc, cfg).admitted) break;
        state.own_counts[class_index] += 1;
        ++n;
    }
    return n;
}

} // namespace cacsim
