#include "cacsim/outage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cacsim/errors.hpp"
#include "cacsim/qfunc.hpp"
#include "cacsim/rng.hpp"

namespace cacsim {

namespace {

void check_dimensions(const CellState& state,
                      const std::vector<TrafficClass>& classes,
                      const PowerAllocation& alloc) {
    if (state.own_counts.size() != classes.size())
        throw config_error("cell state has " + std::to_string(state.own_counts.size()) +
                           " counts for " + std::to_string(classes.size()) + " classes");
    if (alloc.theta.size() != classes.size())
        throw config_error("power allocation has " + std::to_string(alloc.theta.size()) +
                           " entries for " + std::to_string(classes.size()) + " classes");
}

} // namespace

double single_class_capacity(const SystemConfig& cfg, double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("single_class_capacity: Eb/I0 target must be positive");
    const double headroom = 1.0 / x - cfg.noise_to_power_ratio();
    return 1.5 * cfg.processing_gain_G * std::max(0.0, headroom);
}

double ber_to_x(double ber) {
    if (!(ber > 0.0 && ber <= 0.5))
        throw std::domain_error("ber_to_x: BER target must lie in (0, 0.5]");
    if (ber == 0.5) return 0.0;
    const double q = q_inverse(ber);
    return 0.5 * q * q;
}

std::pair<double, double> active_count_moments(std::uint32_t n, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("active_count_moments: activity must lie in (0, 1]");
    const double mean = static_cast<double>(n) * alpha;
    return {mean, mean * (1.0 - alpha)};
}

TrspMoments trsp_moments(const CellState& state,
                         const std::vector<TrafficClass>& classes,
                         const PowerAllocation& alloc,
                         const SystemConfig& cfg) {
    check_dimensions(state, classes, alloc);
    double weighted_mean = 0.0;
    double variance = 0.0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto [m, v] = active_count_moments(state.own_counts[i], classes[i].activity_alpha);
        const double th = alloc.theta[i];
        weighted_mean += th * m;
        variance += th * th * (v + cfg.f2 * m);
    }
    return {(1.0 + cfg.f1) * weighted_mean, variance};
}

ClassThresholds class_thresholds(const std::vector<TrafficClass>& classes,
                                 const SystemConfig& cfg) {
    ClassThresholds out;
    out.eta.reserve(classes.size());
    out.feasible.reserve(classes.size());
    for (const auto& c : classes) {
        const double aggregate_x = static_cast<double>(c.code_count_C) * c.target_x;
        const double eta = single_class_capacity(cfg, aggregate_x);
        out.eta.push_back(eta);
        out.feasible.push_back(eta > 0.0);
    }
    return out;
}

ClassThresholds class_thresholds(const std::vector<TrafficClass>& classes,
                                 const PowerAllocation& alloc,
                                 const SystemConfig& cfg) {
    if (alloc.theta.size() != classes.size())
        throw config_error("power allocation does not match class list");
    ClassThresholds out = class_thresholds(classes, cfg);
    for (std::size_t j = 0; j < classes.size(); ++j) out.eta[j] *= alloc.theta[j];
    return out;
}

OutageEstimate outage_gaussian(const CellState& state,
                               const std::vector<TrafficClass>& classes,
                               const PowerAllocation& alloc,
                               const SystemConfig& cfg) {
    const TrspMoments m = trsp_moments(state, classes, alloc, cfg);
    const ClassThresholds th = class_thresholds(classes, alloc, cfg);

    OutageEstimate est;
    est.method = OutageMethod::gaussian;
    est.trsp_mean = m.mean;
    est.trsp_stddev = std::sqrt(m.variance);
    est.eta = th.eta;
    est.p_out.reserve(classes.size());
    for (double eta : th.eta) {
        if (est.trsp_stddev == 0.0) {
            // Step-function limit of Q as sigma -> 0.
            est.p_out.push_back(m.mean < eta ? 0.0 : 1.0);
        } else {
            est.p_out.push_back(q_function((eta - m.mean) / est.trsp_stddev));
        }
    }
    return est;
}

void McTally::merge(const McTally& other) {
    if (exceed.size() != other.exceed.size())
        throw config_error("cannot merge tallies of different class counts");
    samples += other.samples;
    sum += other.sum;
    sum_sq += other.sum_sq;
    for (std::size_t j = 0; j < exceed.size(); ++j) exceed[j] += other.exceed[j];
}

McTally mc_tally_range(const CellState& state,
                       const std::vector<TrafficClass>& classes,
                       const PowerAllocation& alloc,
                       const SystemConfig& cfg,
                       std::uint64_t first,
                       std::uint64_t count,
                       std::uint64_t seed) {
    check_dimensions(state, classes, alloc);
    const ClassThresholds th = class_thresholds(classes, alloc, cfg);

    // Other-cell load moments, matching what f1/f2 inject into Eqs. of the
    // Gaussian route while remaining an independent sampling path.
    double other_mean = 0.0;
    double other_var = 0.0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const double active_mean =
            static_cast<double>(state.own_counts[i]) * classes[i].activity_alpha;
        other_mean += alloc.theta[i] * active_mean;
        other_var += alloc.theta[i] * alloc.theta[i] * active_mean;
    }
    other_mean *= cfg.f1;
    other_var *= cfg.f2;
    const double other_sigma = std::sqrt(other_var);

    McTally tally;
    tally.exceed.assign(classes.size(), 0);
    tally.samples = count;
    for (std::uint64_t s = first; s < first + count; ++s) {
        Rng rng(derive_seed(seed, s));
        double total = 0.0;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            const std::uint32_t active =
                rng.binomial(state.own_counts[i], classes[i].activity_alpha);
            total += alloc.theta[i] * static_cast<double>(active);
        }
        if (other_sigma > 0.0 || other_mean > 0.0) {
            // Negative draws clamp to zero (load cannot be negative).
            total += std::max(0.0, rng.normal(other_mean, other_sigma));
        }
        tally.sum += total;
        tally.sum_sq += total * total;
        for (std::size_t j = 0; j < classes.size(); ++j) {
            if (total >= th.eta[j]) ++tally.exceed[j];
        }
    }
    return tally;
}

OutageEstimate mc_estimate_from_tally(const McTally& tally, const ClassThresholds& thresholds) {
    OutageEstimate est;
    est.method = OutageMethod::montecarlo;
    est.eta = thresholds.eta;
    const double n = static_cast<double>(tally.samples);
    est.trsp_mean = tally.sum / n;
    const double var = std::max(0.0, tally.sum_sq / n - est.trsp_mean * est.trsp_mean);
    est.trsp_stddev = std::sqrt(var);
    est.p_out.reserve(tally.exceed.size());
    est.mc_ci_halfwidth.reserve(tally.exceed.size());
    for (std::uint64_t hits : tally.exceed) {
        const double p = static_cast<double>(hits) / n;
        est.p_out.push_back(p);
        est.mc_ci_halfwidth.push_back(1.96 * std::sqrt(p * (1.0 - p) / n));
    }
    return est;
}

OutageEstimate outage_montecarlo(const CellState& state,
                                 const std::vector<TrafficClass>& classes,
                                 const PowerAllocation& alloc,
                                 const SystemConfig& cfg,
                                 std::uint64_t samples,
                                 std::uint64_t seed) {
    if (samples < 1000)
        throw config_error("outage_montecarlo: at least 1000 samples required");
    const McTally tally = mc_tally_range(state, classes, alloc, cfg, 0, samples, seed);
    return mc_estimate_from_tally(tally, class_thresholds(classes, alloc, cfg));
}

double power_ratio(const TrafficClass& i, const TrafficClass& j, double G) {
    const double ti = static_cast<double>(i.code_count_C) * i.target_x;
    const double tj = static_cast<double>(j.code_count_C) * j.target_x;
    const double three_g = 3.0 * G;
    if (!(three_g > 2.0 * tj)) {
        throw infeasibility_error(
            "power_ratio: class " + std::to_string(j.index) +
                " violates 3G > 2*C*X (C*X = " + std::to_string(tj) + ")",
            {j.index});
    }
    return ti * (three_g - 2.0 * tj) / (tj * (three_g + 2.0 * ti));
}

PowerAllocation allocate_powers(const std::vector<TrafficClass>& classes,
                                const SystemConfig& cfg,
                                int reference) {
    if (reference < 0 || static_cast<std::size_t>(reference) >= classes.size())
        throw config_error("allocate_powers: reference class out of range");

    PowerAllocation alloc;
    alloc.reference_class = reference;
    alloc.theta.assign(classes.size(), 1.0);

    std::vector<int> violators;
    std::string detail;
    for (std::size_t idx = 0; idx < classes.size(); ++idx) {
        if (static_cast<int>(idx) == reference) continue; // reference stays exactly 1
        try {
            const double ratio =
                power_ratio(classes[idx], classes[reference], cfg.processing_gain_G);
            if (!(ratio > 0.0)) {
                violators.push_back(classes[idx].index);
                detail = "nonpositive power ratio";
            } else {
                alloc.theta[idx] = ratio;
            }
        } catch (const infeasibility_error& e) {
            violators.push_back(classes[idx].index);
            detail = e.what();
        }
    }
    if (!violators.empty()) {
        std::string msg = "allocate_powers: infeasible classes:";
        for (int c : violators) msg += " " + std::to_string(c);
        msg += " (" + detail + ")";
        throw infeasibility_error(msg, violators);
    }
    return alloc;
}

} // namespace cacsim
