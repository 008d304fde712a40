#include "cacsim/types.hpp"

#include <cmath>
#include <string>

#include "cacsim/errors.hpp"

namespace cacsim {

void validate(const SystemConfig& cfg) {
    if (!(cfg.bandwidth_hz > 0.0)) throw config_error("system: bandwidth_hz must be > 0");
    if (!(cfg.base_rate_bps > 0.0)) throw config_error("system: base_rate_bps must be > 0");
    if (!(cfg.processing_gain_G > 0.0)) throw config_error("system: processing_gain must be > 0");
    if (!(cfg.f1 >= 0.0)) throw config_error("system: f1 must be >= 0");
    if (!(cfg.f2 >= 0.0)) throw config_error("system: f2 must be >= 0");
    // N0 = 0 is allowed and selects the interference-limited regime.
    if (!(cfg.noise_density_N0 >= 0.0)) throw config_error("system: noise_density must be >= 0");
    if (!(cfg.total_power_Yb > 0.0)) throw config_error("system: total_power must be > 0");
}

void validate(const std::vector<TrafficClass>& classes) {
    if (classes.empty()) throw config_error("classes: at least one traffic class required");
    for (const auto& c : classes) {
        const std::string tag = "class " + std::to_string(c.index) + ": ";
        if (!(c.rate_bps > 0.0)) throw config_error(tag + "rate_bps must be > 0");
        if (!(c.target_ber > 0.0 && c.target_ber <= 0.5))
            throw config_error(tag + "target_ber must lie in (0, 0.5]");
        if (!(c.target_x > 0.0) || !std::isfinite(c.target_x))
            throw config_error(tag + "target_x must be a positive finite value");
        if (!(c.activity_alpha > 0.0 && c.activity_alpha <= 1.0))
            throw config_error(tag + "activity must lie in (0, 1]");
        if (c.code_count_C < 1) throw config_error(tag + "codes must be >= 1");
        if (!(c.outage_target > 0.0 && c.outage_target < 1.0))
            throw config_error(tag + "outage_target must lie in (0, 1)");
        if (c.outage_target != classes.front().outage_target)
            throw config_error(tag + "all classes must share one outage_target");
    }
}

} // namespace cacsim
