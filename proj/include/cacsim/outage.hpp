#ifndef CACSIM_OUTAGE_HPP
#define CACSIM_OUTAGE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "cacsim/types.hpp"

namespace cacsim {

// Maximum supportable active-call count of a single class:
// (3/2) * G * max(0, 1/x - N0/Yb). Throws std::domain_error for x <= 0.
double single_class_capacity(const SystemConfig& cfg, double x);

// Coherent-BPSK AWGN inversion of a BER target: X = Qinv(ber)^2 / 2.
// Accepts ber in (0, 0.5]; ber = 0.5 maps to X = 0.
double ber_to_x(double ber);

// Mean and variance of the active-call count, Binomial(n, alpha).
std::pair<double, double> active_count_moments(std::uint32_t n, double alpha);

struct TrspMoments {
    double mean = 0.0;
    double variance = 0.0;
};

// Moments of the total traffic received signal power:
//   mean = (1 + f1) * sum_i theta_i * n_i * alpha_i
//   var  = sum_i theta_i^2 * (n_i*alpha_i*(1-alpha_i) + f2 * n_i*alpha_i)
TrspMoments trsp_moments(const CellState& state,
                         const std::vector<TrafficClass>& classes,
                         const PowerAllocation& alloc,
                         const SystemConfig& cfg);

// Per-class capacity thresholds. eta[j] is the largest total received
// power the cell tolerates before class j sees outage; a clamped zero
// threshold is reported through the feasible flag rather than silently.
struct ClassThresholds {
    std::vector<double> eta;
    std::vector<bool> feasible;

    bool all_feasible() const {
        for (bool f : feasible)
            if (!f) return false;
        return true;
    }
};

// Unit-power thresholds: eta[j] = single_class_capacity(cfg, C_j * X_j).
// Reduces bitwise to single_class_capacity for one class with C = 1.
ClassThresholds class_thresholds(const std::vector<TrafficClass>& classes,
                                 const SystemConfig& cfg);

// Power-weighted thresholds: eta[j] = theta_j * single_class_capacity(cfg, C_j * X_j).
// This is what the outage estimators compare the total power against.
ClassThresholds class_thresholds(const std::vector<TrafficClass>& classes,
                                 const PowerAllocation& alloc,
                                 const SystemConfig& cfg);

// Gaussian outage estimate: p_out[j] = Q((eta_j - mean) / stddev), with the
// step-function limit when the variance is zero.
OutageEstimate outage_gaussian(const CellState& state,
                               const std::vector<TrafficClass>& classes,
                               const PowerAllocation& alloc,
                               const SystemConfig& cfg);

// Monte Carlo estimate of the same tail probabilities. Per sample the
// own-cell active counts are Binomial(N_i, alpha_i) and the other-cell
// load is a zero-clamped normal with the f1/f2 moments. Deterministic for
// a given seed; sample s always uses the engine derive_seed(seed, s), so
// disjoint sample ranges can run in parallel and merge to the identical
// single-stream tallies.
OutageEstimate outage_montecarlo(const CellState& state,
                                 const std::vector<TrafficClass>& classes,
                                 const PowerAllocation& alloc,
                                 const SystemConfig& cfg,
                                 std::uint64_t samples,
                                 std::uint64_t seed);

// Partial tallies of a Monte Carlo run, mergeable across sample ranges.
struct McTally {
    std::uint64_t samples = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
    std::vector<std::uint64_t> exceed; // per class

    void merge(const McTally& other);
};

// Tally samples with index in [first, first + count). Merging adjacent
// ranges reproduces outage_montecarlo exactly.
McTally mc_tally_range(const CellState& state,
                       const std::vector<TrafficClass>& classes,
                       const PowerAllocation& alloc,
                       const SystemConfig& cfg,
                       std::uint64_t first,
                       std::uint64_t count,
                       std::uint64_t seed);

OutageEstimate mc_estimate_from_tally(const McTally& tally,
                                      const ClassThresholds& thresholds);

// Relative received power of class i against class j, exactly as
//   C_i X_i (3G - 2 C_j X_j) / (C_j X_j (3G + 2 C_i X_i)).
// Throws infeasibility_error naming class j when the numerator term
// 3G - 2 C_j X_j is nonpositive.
double power_ratio(const TrafficClass& i, const TrafficClass& j, double G);

// theta[reference] = 1 exactly, theta[i] = power_ratio(i, reference, G).
// Throws infeasibility_error listing every violating class.
PowerAllocation allocate_powers(const std::vector<TrafficClass>& classes,
                                const SystemConfig& cfg,
                                int reference);

} // namespace cacsim

#endif
