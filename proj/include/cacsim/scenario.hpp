#ifndef CACSIM_SCENARIO_HPP
#define CACSIM_SCENARIO_HPP

#include <string>
#include <vector>

#include "cacsim/ast.hpp"
#include "cacsim/cac.hpp"
#include "cacsim/traffic_sim.hpp"
#include "cacsim/types.hpp"

namespace cacsim {

// One fully validated scenario: system parameters, traffic classes,
// admission policy, and optional traffic-simulation and discovery
// sections. Loaded from a sectioned JSON document; unknown keys are
// rejected so that typos fail loudly.
struct Scenario {
    SystemConfig system;
    std::vector<TrafficClass> classes;
    int reference_class = 0;
    CacPolicy policy;
    bool has_sim = false;
    SimConfig sim;
    AstProtocolConfig ast;
};

// Parse and validate a scenario from JSON text. Throws config_error with
// the offending key in the message.
Scenario parse_scenario(const std::string& json_text);

// Load a scenario file from disk. Missing/unreadable file -> io_error.
Scenario load_scenario_file(const std::string& path);

// Built-in presets; currently "paper-sec6". Unknown name -> config_error.
Scenario preset_scenario(const std::string& name);

// Node file for discovery runs: one node per line, "id x y tx_power_dbm",
// blank lines and '#' comments ignored.
std::vector<NodePosition> load_node_file(const std::string& path);

} // namespace cacsim

#endif
