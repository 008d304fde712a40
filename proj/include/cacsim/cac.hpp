#ifndef CACSIM_CAC_HPP
#define CACSIM_CAC_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "cacsim/types.hpp"

namespace cacsim {

enum class CallKind { fresh, handoff };

struct CallArrival {
    int class_index = 0;
    CallKind kind = CallKind::fresh;
};

enum class PolicyVariant { outage_predictive, fixed_threshold };

// outage_predictive admits iff the post-admission Gaussian outage stays
// within every class's outage budget; fixed_threshold admits iff the
// post-admission deterministic load sum(theta_i * C_i * N_i * alpha_i)
// stays within min_j eta_j. handoff_guard in [0, 1) tightens the budget
// for fresh calls only, so handoff calls are admitted more permissively.
struct CacPolicy {
    PolicyVariant variant = PolicyVariant::outage_predictive;
    double handoff_guard = 0.0;
};

struct AdmissionDecision {
    bool admitted = false;
    std::vector<double> predicted_p_out; // outage_predictive only
    std::optional<int> binding_class;    // absent when admitted
};

// Pure decision function; the state is not mutated. Throws config_error
// for an unknown class index or mismatched dimensions.
AdmissionDecision admit(const CellState& state,
                        const CallArrival& arrival,
                        const CacPolicy& policy,
                        const std::vector<TrafficClass>& classes,
                        const PowerAllocation& alloc,
                        const SystemConfig& cfg);

// Largest single-class fresh-call count the policy admits when arrivals
// fill only this class, found by scanning admit() from the empty cell.
// An infeasible class (zero threshold) yields 0.
std::uint32_t max_admissible(const std::vector<TrafficClass>& classes,
                             const PowerAllocation& alloc,
                             const SystemConfig& cfg,
                             const CacPolicy& policy,
                             int class_index);

} // namespace cacsim

#endif
