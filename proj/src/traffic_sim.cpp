#include "cacsim/traffic_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cacsim/errors.hpp"
#include "cacsim/event_queue.hpp"
#include "cacsim/outage.hpp"
#include "cacsim/rng.hpp"

namespace cacsim {

std::optional<double> KindCounters::blocking() const {
    if (offered == 0) return std::nullopt;
    return static_cast<double>(blocked) / static_cast<double>(offered);
}

std::optional<double> KindCounters::blocking_ci95() const {
    if (offered == 0) return std::nullopt;
    const double p = *blocking();
    return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(offered));
}

namespace {

struct SimEvent {
    bool is_departure;
    int class_index;
    CallKind kind;
};

// Stream ids for derive_seed: arrivals and holdings per (class, kind).
std::uint64_t stream_id(int class_index, CallKind kind, bool holding) {
    return static_cast<std::uint64_t>(class_index) * 4ull +
           (kind == CallKind::handoff ? 1ull : 0ull) + (holding ? 2ull : 0ull) + 1ull;
}

} // namespace

SimMetrics run_sim(const SimConfig& sim,
                   const CacPolicy& policy,
                   const std::vector<TrafficClass>& classes,
                   const PowerAllocation& alloc,
                   const SystemConfig& cfg) {
    const std::size_t L = classes.size();
    if (sim.traffic.size() != L)
        throw config_error("sim: traffic table has " + std::to_string(sim.traffic.size()) +
                           " entries for " + std::to_string(L) + " classes");
    if (!(sim.duration_s > 0.0)) throw config_error("sim: duration must be > 0");
    if (!(sim.warmup_s >= 0.0 && sim.warmup_s < sim.duration_s))
        throw config_error("sim: warmup must lie in [0, duration)");
    for (const auto& t : sim.traffic) {
        if (t.new_rate < 0.0 || t.handoff_rate < 0.0)
            throw config_error("sim: arrival rates must be >= 0");
        if (!(t.mean_holding_s > 0.0))
            throw config_error("sim: mean holding time must be > 0");
    }

    // One engine per (class, kind) for inter-arrival gaps, one for holding
    // times. Decisions never consume randomness, so two policies see the
    // exact same event material.
    std::vector<Rng> arrival_rng;
    std::vector<Rng> holding_rng;
    for (std::size_t i = 0; i < L; ++i) {
        for (CallKind kind : {CallKind::fresh, CallKind::handoff}) {
            arrival_rng.emplace_back(
                derive_seed(sim.seed, stream_id(static_cast<int>(i), kind, false)));
            holding_rng.emplace_back(
                derive_seed(sim.seed, stream_id(static_cast<int>(i), kind, true)));
        }
    }
    auto stream_slot = [](std::size_t class_index, CallKind kind) {
        return class_index * 2 + (kind == CallKind::handoff ? 1 : 0);
    };

    EventQueue<SimEvent> queue;
    for (std::size_t i = 0; i < L; ++i) {
        for (CallKind kind : {CallKind::fresh, CallKind::handoff}) {
            const double rate =
                kind == CallKind::fresh ? sim.traffic[i].new_rate : sim.traffic[i].handoff_rate;
            if (rate > 0.0) {
                const double gap = arrival_rng[stream_slot(i, kind)].exponential(1.0 / rate);
                queue.schedule(gap, SimEvent{false, static_cast<int>(i), kind});
            }
        }
    }

    SimMetrics metrics;
    metrics.per_class.resize(L);
    metrics.measured_span_s = sim.duration_s - sim.warmup_s;

    CellState state = CellState::empty(L);
    std::vector<double> p_out_now(L, 0.0);
    std::vector<double> p_out_time_integral(L, 0.0);
    const bool sample_outage = sim.outage_sampling == OutageSampling::per_event;

    auto refresh_outage = [&] {
        if (!sample_outage) return;
        p_out_now = outage_gaussian(state, classes, alloc, cfg).p_out;
    };
    refresh_outage();

    auto note_peaks = [&](double now) {
        if (now < sim.warmup_s) return;
        for (std::size_t i = 0; i < L; ++i)
            metrics.per_class[i].peak_concurrent =
                std::max(metrics.per_class[i].peak_concurrent, state.own_counts[i]);
    };

    double prev_time = 0.0;
    auto integrate_to = [&](double now) {
        const double lo = std::max(prev_time, sim.warmup_s);
        const double hi = std::min(now, sim.duration_s);
        if (sample_outage && hi > lo) {
            for (std::size_t i = 0; i < L; ++i) p_out_time_integral[i] += p_out_now[i] * (hi - lo);
        }
        prev_time = now;
    };

    while (!queue.empty() && queue.peek().time <= sim.duration_s) {
        const auto entry = queue.pop();
        const double now = entry.time;
        const SimEvent ev = entry.payload;
        integrate_to(now);
        note_peaks(now); // state just before the change counts at this instant

        if (ev.is_departure) {
            state.own_counts[ev.class_index] -= 1;
            refresh_outage();
            if (sim.record_log)
                metrics.log.push_back(
                    SimLogEvent{now, SimEventType::departure, ev.class_index, ev.kind});
        } else {
            const std::size_t i = static_cast<std::size_t>(ev.class_index);
            const double rate = ev.kind == CallKind::fresh ? sim.traffic[i].new_rate
                                                           : sim.traffic[i].handoff_rate;
            // Next arrival of this stream.
            const double gap = arrival_rng[stream_slot(i, ev.kind)].exponential(1.0 / rate);
            queue.schedule(now + gap, SimEvent{false, ev.class_index, ev.kind});
            // Holding time is drawn unconditionally (common random numbers).
            const double holding =
                holding_rng[stream_slot(i, ev.kind)].exponential(sim.traffic[i].mean_holding_s);

            const bool measured = now >= sim.warmup_s;
            KindCounters& counters = ev.kind == CallKind::fresh ? metrics.per_class[i].fresh
                                                                : metrics.per_class[i].handoff;
            const AdmissionDecision decision =
                admit(state, CallArrival{ev.class_index, ev.kind}, policy, classes, alloc, cfg);
            if (measured) ++counters.offered;
            if (decision.admitted) {
                if (measured) ++counters.admitted;
                state.own_counts[i] += 1;
                refresh_outage();
                queue.schedule(now + holding, SimEvent{true, ev.class_index, ev.kind});
                if (sim.record_log)
                    metrics.log.push_back(
                        SimLogEvent{now, SimEventType::arrival_admitted, ev.class_index, ev.kind});
            } else {
                if (measured) ++counters.blocked;
                if (sim.record_log)
                    metrics.log.push_back(
                        SimLogEvent{now, SimEventType::arrival_blocked, ev.class_index, ev.kind});
            }
        }
        note_peaks(now);
    }
    integrate_to(sim.duration_s);
    note_peaks(sim.duration_s); // covers a window with no events after warmup

    for (std::size_t i = 0; i < L; ++i) {
        if (sample_outage && metrics.measured_span_s > 0.0)
            metrics.per_class[i].timeavg_p_out = p_out_time_integral[i] / metrics.measured_span_s;
    }
    return metrics;
}

CacComparison compare_cacs(const SimConfig& sim,
                           const std::vector<TrafficClass>& classes,
                           const PowerAllocation& alloc,
                           const SystemConfig& cfg,
                           const CacPolicy& policy_a,
                           const CacPolicy& policy_b) {
    return CacComparison{run_sim(sim, policy_a, classes, alloc, cfg),
                         run_sim(sim, policy_b, classes, alloc, cfg)};
}

double erlang_b(std::uint32_t channels, double offered_load) {
    if (offered_load < 0.0) throw std::domain_error("erlang_b: offered load must be >= 0");
    if (offered_load == 0.0) return channels == 0 ? 1.0 : 0.0;
    double b = 1.0;
    for (std::uint32_t c = 1; c <= channels; ++c) {
        b = offered_load * b / (static_cast<double>(c) + offered_load * b);
    }
    return b;
}

} // namespace cacsim
