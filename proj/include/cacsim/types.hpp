#ifndef CACSIM_TYPES_HPP
#define CACSIM_TYPES_HPP

#include <cstdint>
#include <vector>

namespace cacsim {

// System-wide uplink parameters of one cell.
//
// noise_to_power_ratio() is the N0/Yb term of the capacity threshold; a
// zero noise density models the interference-limited regime.
struct SystemConfig {
    double bandwidth_hz = 2.5e6;
    double base_rate_bps = 19200.0;
    double processing_gain_G = 256.0; // configured independently of W/R
    double f1 = 0.0;                  // other-cell mean coefficient
    double f2 = 0.0;                  // other-cell variance coefficient
    double noise_density_N0 = 0.0;    // W/Hz; 0 = interference-limited
    double total_power_Yb = 1.0;      // W

    double noise_to_power_ratio() const { return noise_density_N0 / total_power_Yb; }
};

// Per-class QoS profile. target_x is the required Eb/I0 (linear); all
// classes of one scenario share the same outage_target.
struct TrafficClass {
    int index = 0;
    double rate_bps = 19200.0;
    double target_ber = 1e-4;  // in (0, 0.5]
    double target_x = 0.0;     // linear Eb/I0 target
    double activity_alpha = 1.0;
    int code_count_C = 1;
    double outage_target = 0.01;
};

enum class OtherCellMode { folded };

// Admitted calls per class in the own cell. Other-cell load is never
// enumerated; it enters the moments through f1/f2 only.
struct CellState {
    std::vector<std::uint32_t> own_counts;
    OtherCellMode other_cell_mode = OtherCellMode::folded;

    static CellState empty(std::size_t num_classes) {
        return CellState{std::vector<std::uint32_t>(num_classes, 0), OtherCellMode::folded};
    }
};

// Relative received power per class, normalized so that
// theta[reference_class] == 1 exactly.
struct PowerAllocation {
    std::vector<double> theta;
    int reference_class = 0;
};

enum class OutageMethod { gaussian, montecarlo };

// Result of one outage evaluation. For the Monte Carlo method the
// mean/stddev are the empirical moments of the sampled total received
// power and mc_ci_halfwidth carries one 95% half-width per class.
struct OutageEstimate {
    double trsp_mean = 0.0;
    double trsp_stddev = 0.0;
    std::vector<double> eta;
    std::vector<double> p_out;
    OutageMethod method = OutageMethod::gaussian;
    std::vector<double> mc_ci_halfwidth; // empty unless method == montecarlo
};

// Throw config_error if the config or class list violates an invariant
// (negative coefficients, mismatched outage targets, bad activity factor).
void validate(const SystemConfig& cfg);
void validate(const std::vector<TrafficClass>& classes);

} // namespace cacsim

#endif
