#ifndef CACSIM_TRAFFIC_SIM_HPP
#define CACSIM_TRAFFIC_SIM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cacsim/cac.hpp"
#include "cacsim/types.hpp"

namespace cacsim {

enum class OutageSampling { per_event, off };

// Poisson arrivals and exponential holding times per class, the standard
// teletraffic model.
struct ClassTraffic {
    double new_rate = 0.0;     // fresh-call arrivals per second
    double handoff_rate = 0.0; // handoff arrivals per second
    double mean_holding_s = 120.0;
};

struct SimConfig {
    std::vector<ClassTraffic> traffic; // one entry per class
    double duration_s = 0.0;           // virtual seconds
    double warmup_s = 0.0;             // excluded from metrics
    std::uint64_t seed = 0;
    OutageSampling outage_sampling = OutageSampling::per_event;
    bool record_log = false;
};

struct KindCounters {
    std::uint64_t offered = 0;
    std::uint64_t admitted = 0;
    std::uint64_t blocked = 0;

    // Blocking probability and its 95% half-width; absent with no offers.
    std::optional<double> blocking() const;
    std::optional<double> blocking_ci95() const;

    bool operator==(const KindCounters&) const = default;
};

struct ClassMetrics {
    KindCounters fresh;
    KindCounters handoff;
    std::optional<double> timeavg_p_out; // absent when sampling is off
    std::uint32_t peak_concurrent = 0;

    bool operator==(const ClassMetrics&) const = default;
};

enum class SimEventType { arrival_admitted, arrival_blocked, departure };

struct SimLogEvent {
    double time;
    SimEventType type;
    int class_index;
    CallKind kind; // departure entries reuse the admitting arrival's kind

    bool operator==(const SimLogEvent&) const = default;
};

struct SimMetrics {
    std::vector<ClassMetrics> per_class;
    double measured_span_s = 0.0; // duration - warmup
    std::vector<SimLogEvent> log; // populated when record_log is set

    bool operator==(const SimMetrics&) const = default;
};

// Event-driven single-cell simulation under one admission policy. Fully
// deterministic for a given (config, seed): every (class, kind) arrival
// stream and holding-time stream draws from its own derived engine, and a
// holding time is drawn for every arrival whether or not it is admitted.
// That keeps the random sequences identical across policies (common
// random numbers) so compare_cacs isolates the policy effect.
SimMetrics run_sim(const SimConfig& sim,
                   const CacPolicy& policy,
                   const std::vector<TrafficClass>& classes,
                   const PowerAllocation& alloc,
                   const SystemConfig& cfg);

struct CacComparison {
    SimMetrics first;
    SimMetrics second;
};

// Runs both policies under common random numbers.
CacComparison compare_cacs(const SimConfig& sim,
                           const std::vector<TrafficClass>& classes,
                           const PowerAllocation& alloc,
                           const SystemConfig& cfg,
                           const CacPolicy& policy_a,
                           const CacPolicy& policy_b);

// Erlang-B blocking probability, numerically stable recursion.
double erlang_b(std::uint32_t channels, double offered_load);

} // namespace cacsim

#endif
