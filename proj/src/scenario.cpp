#include "cacsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "cacsim/errors.hpp"
#include "cacsim/outage.hpp"

namespace cacsim {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& section) {
    for (const auto& [key, ignored] : obj.items()) {
        (void)ignored;
        if (!allowed.count(key))
            throw config_error("scenario: unknown key '" + key + "' in " + section);
    }
}

double get_number(const json& obj, const std::string& key, const std::string& section,
                  double fallback, bool required = false) {
    if (!obj.contains(key)) {
        if (required) throw config_error("scenario: missing key '" + key + "' in " + section);
        return fallback;
    }
    if (!obj[key].is_number())
        throw config_error("scenario: key '" + key + "' in " + section + " must be a number");
    return obj[key].get<double>();
}

SystemConfig parse_system(const json& obj) {
    reject_unknown_keys(obj,
                        {"bandwidth_hz", "base_rate_bps", "processing_gain", "f1", "f2",
                         "noise_density", "total_power"},
                        "system");
    SystemConfig cfg;
    cfg.bandwidth_hz = get_number(obj, "bandwidth_hz", "system", cfg.bandwidth_hz);
    cfg.base_rate_bps = get_number(obj, "base_rate_bps", "system", cfg.base_rate_bps);
    cfg.processing_gain_G = get_number(obj, "processing_gain", "system", 0.0, true);
    cfg.f1 = get_number(obj, "f1", "system", 0.0, true);
    cfg.f2 = get_number(obj, "f2", "system", 0.0, true);
    cfg.noise_density_N0 = get_number(obj, "noise_density", "system", cfg.noise_density_N0);
    cfg.total_power_Yb = get_number(obj, "total_power", "system", cfg.total_power_Yb);
    validate(cfg);
    return cfg;
}

std::vector<TrafficClass> parse_classes(const json& arr) {
    if (!arr.is_array() || arr.empty())
        throw config_error("scenario: 'classes' must be a non-empty array");
    std::vector<TrafficClass> classes;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& obj = arr[i];
        const std::string section = "classes[" + std::to_string(i) + "]";
        reject_unknown_keys(
            obj, {"index", "rate_bps", "target_ber", "target_x", "activity", "codes",
                  "outage_target"},
            section);
        TrafficClass c;
        c.index = static_cast<int>(get_number(obj, "index", section, static_cast<double>(i)));
        if (c.index != static_cast<int>(i))
            throw config_error("scenario: " + section + " index must equal its position");
        c.rate_bps = get_number(obj, "rate_bps", section, c.rate_bps);
        c.target_ber = get_number(obj, "target_ber", section, 0.0, true);
        c.activity_alpha = get_number(obj, "activity", section, 1.0);
        c.code_count_C = static_cast<int>(get_number(obj, "codes", section, 1.0));
        c.outage_target = get_number(obj, "outage_target", section, 0.0, true);

        if (!(c.target_ber > 0.0 && c.target_ber <= 0.5))
            throw config_error("scenario: " + section + " target_ber must lie in (0, 0.5]");
        const double derived_x = ber_to_x(c.target_ber);
        if (obj.contains("target_x")) {
            c.target_x = get_number(obj, "target_x", section, 0.0, true);
            if (!(std::fabs(c.target_x - derived_x) <= 5e-3 * std::max(1.0, derived_x)))
                throw config_error("scenario: " + section + " target_x " +
                                   std::to_string(c.target_x) +
                                   " is inconsistent with target_ber (expected " +
                                   std::to_string(derived_x) + ")");
        } else {
            c.target_x = derived_x;
        }
        classes.push_back(c);
    }
    validate(classes);
    return classes;
}

CacPolicy parse_policy(const json& obj) {
    reject_unknown_keys(obj, {"variant", "handoff_guard"}, "policy");
    CacPolicy policy;
    if (obj.contains("variant")) {
        const std::string v = obj["variant"].get<std::string>();
        if (v == "outage_predictive") {
            policy.variant = PolicyVariant::outage_predictive;
        } else if (v == "fixed_threshold") {
            policy.variant = PolicyVariant::fixed_threshold;
        } else {
            throw config_error("scenario: policy variant '" + v + "' is not known");
        }
    }
    policy.handoff_guard = get_number(obj, "handoff_guard", "policy", 0.0);
    if (!(policy.handoff_guard >= 0.0 && policy.handoff_guard < 1.0))
        throw config_error("scenario: policy handoff_guard must lie in [0, 1)");
    return policy;
}

SimConfig parse_sim(const json& obj, std::size_t num_classes) {
    reject_unknown_keys(obj, {"duration_s", "warmup_s", "seed", "outage_sampling", "traffic"},
                        "sim");
    SimConfig sim;
    sim.duration_s = get_number(obj, "duration_s", "sim", 0.0, true);
    sim.warmup_s = get_number(obj, "warmup_s", "sim", 0.0);
    sim.seed = static_cast<std::uint64_t>(get_number(obj, "seed", "sim", 0.0));
    if (obj.contains("outage_sampling")) {
        const std::string v = obj["outage_sampling"].get<std::string>();
        if (v == "per_event") {
            sim.outage_sampling = OutageSampling::per_event;
        } else if (v == "off") {
            sim.outage_sampling = OutageSampling::off;
        } else {
            throw config_error("scenario: sim outage_sampling must be 'per_event' or 'off'");
        }
    }
    if (!obj.contains("traffic") || !obj["traffic"].is_array())
        throw config_error("scenario: sim requires a 'traffic' array");
    if (obj["traffic"].size() != num_classes)
        throw config_error("scenario: sim traffic array must have one entry per class");
    for (std::size_t i = 0; i < num_classes; ++i) {
        const json& t = obj["traffic"][i];
        const std::string section = "sim.traffic[" + std::to_string(i) + "]";
        reject_unknown_keys(t, {"new_rate", "handoff_rate", "mean_holding_s"}, section);
        ClassTraffic ct;
        ct.new_rate = get_number(t, "new_rate", section, 0.0);
        ct.handoff_rate = get_number(t, "handoff_rate", section, 0.0);
        ct.mean_holding_s = get_number(t, "mean_holding_s", section, 120.0);
        sim.traffic.push_back(ct);
    }
    return sim;
}

AstProtocolConfig parse_ast(const json& obj) {
    reject_unknown_keys(obj,
                        {"path_loss_exponent", "reference_loss_db", "noise_floor_dbm",
                         "beamwidth_deg", "mainlobe_gain_db", "sidelobe_gain_db",
                         "detection_threshold_db", "emission_spacing_s", "reply_guard_s",
                         "message_delay_s", "collection_deadline_s"},
                        "ast");
    AstProtocolConfig cfg;
    cfg.prop.path_loss_exponent =
        get_number(obj, "path_loss_exponent", "ast", cfg.prop.path_loss_exponent);
    cfg.prop.reference_loss_db =
        get_number(obj, "reference_loss_db", "ast", cfg.prop.reference_loss_db);
    cfg.prop.noise_floor_dbm = get_number(obj, "noise_floor_dbm", "ast", cfg.prop.noise_floor_dbm);
    cfg.prop.beamwidth_deg = get_number(obj, "beamwidth_deg", "ast", cfg.prop.beamwidth_deg);
    cfg.prop.mainlobe_gain_db =
        get_number(obj, "mainlobe_gain_db", "ast", cfg.prop.mainlobe_gain_db);
    cfg.prop.sidelobe_gain_db =
        get_number(obj, "sidelobe_gain_db", "ast", cfg.prop.sidelobe_gain_db);
    cfg.detection_threshold_db =
        get_number(obj, "detection_threshold_db", "ast", cfg.detection_threshold_db);
    cfg.emission_spacing_s = get_number(obj, "emission_spacing_s", "ast", cfg.emission_spacing_s);
    cfg.reply_guard_s = get_number(obj, "reply_guard_s", "ast", cfg.reply_guard_s);
    cfg.message_delay_s = get_number(obj, "message_delay_s", "ast", cfg.message_delay_s);
    if (obj.contains("collection_deadline_s"))
        cfg.collection_deadline_s = get_number(obj, "collection_deadline_s", "ast", 0.0);

    if (!(cfg.prop.path_loss_exponent >= 2.0))
        throw config_error("scenario: ast path_loss_exponent must be >= 2");
    if (!(cfg.prop.mainlobe_gain_db > cfg.prop.sidelobe_gain_db))
        throw config_error("scenario: ast mainlobe gain must exceed sidelobe gain");
    if (!(cfg.emission_spacing_s > 0.0))
        throw config_error("scenario: ast emission_spacing_s must be > 0");
    return cfg;
}

} // namespace

Scenario parse_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("scenario: JSON parse failure: ") + e.what());
    }
    if (!doc.is_object()) throw config_error("scenario: document must be a JSON object");
    reject_unknown_keys(doc, {"system", "classes", "reference_class", "policy", "sim", "ast"},
                        "scenario");
    if (!doc.contains("system")) throw config_error("scenario: missing 'system' section");
    if (!doc.contains("classes")) throw config_error("scenario: missing 'classes' section");

    Scenario scenario;
    scenario.system = parse_system(doc["system"]);
    scenario.classes = parse_classes(doc["classes"]);
    scenario.reference_class =
        static_cast<int>(get_number(doc, "reference_class", "scenario", 0.0));
    if (scenario.reference_class < 0 ||
        static_cast<std::size_t>(scenario.reference_class) >= scenario.classes.size())
        throw config_error("scenario: reference_class out of range");
    if (doc.contains("policy")) scenario.policy = parse_policy(doc["policy"]);
    if (doc.contains("sim")) {
        scenario.sim = parse_sim(doc["sim"], scenario.classes.size());
        scenario.has_sim = true;
    }
    if (doc.contains("ast")) scenario.ast = parse_ast(doc["ast"]);
    return scenario;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

Scenario preset_scenario(const std::string& name) {
    if (name != "paper-sec6")
        throw config_error("unknown preset '" + name + "' (available: paper-sec6)");
    // Two voice classes at 19.2 kbps with BER targets 1e-4 and 1e-6,
    // activity 1.0, G = 256, f1 = 0.114, f2 = 0.44, interference-limited.
    static const char* text = R"json({
  "system": {
    "bandwidth_hz": 2.5e6,
    "base_rate_bps": 19200.0,
    "processing_gain": 256.0,
    "f1": 0.114,
    "f2": 0.44,
    "noise_density": 0.0,
    "total_power": 1.0
  },
  "classes": [
    {"index": 0, "rate_bps": 19200.0, "target_ber": 1e-4, "activity": 1.0, "codes": 1, "outage_target": 0.01},
    {"index": 1, "rate_bps": 19200.0, "target_ber": 1e-6, "activity": 1.0, "codes": 1, "outage_target": 0.01}
  ],
  "reference_class": 0,
  "policy": {"variant": "outage_predictive", "handoff_guard": 0.0},
  "sim": {
    "duration_s": 4000.0,
    "warmup_s": 400.0,
    "outage_sampling": "per_event",
    "traffic": [
      {"new_rate": 0.15, "handoff_rate": 0.03, "mean_holding_s": 120.0},
      {"new_rate": 0.10, "handoff_rate": 0.02, "mean_holding_s": 120.0}
    ]
  },
  "ast": {
    "path_loss_exponent": 3.0,
    "reference_loss_db": 40.0,
    "noise_floor_dbm": -90.0,
    "beamwidth_deg": 30.0,
    "mainlobe_gain_db": 10.0,
    "sidelobe_gain_db": -10.0,
    "detection_threshold_db": 0.0,
    "emission_spacing_s": 0.001,
    "reply_guard_s": 0.001,
    "message_delay_s": 0.0001
  }
})json";
    return parse_scenario(text);
}

std::vector<NodePosition> load_node_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open node file '" + path + "'");
    std::vector<NodePosition> nodes;
    std::set<int> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        for (auto& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream fields(line);
        NodePosition node;
        if (!(fields >> node.id)) continue; // blank or comment-only line
        if (!(fields >> node.x >> node.y >> node.tx_power_dbm))
            throw config_error("node file '" + path + "' line " + std::to_string(line_no) +
                               ": expected 'id x y tx_power_dbm'");
        std::string extra;
        if (fields >> extra)
            throw config_error("node file '" + path + "' line " + std::to_string(line_no) +
                               ": trailing field '" + extra + "'");
        if (!seen.insert(node.id).second)
            throw config_error("node file '" + path + "' line " + std::to_string(line_no) +
                               ": duplicate node id " + std::to_string(node.id));
        if (!std::isfinite(node.x) || !std::isfinite(node.y))
            throw config_error("node file '" + path + "' line " + std::to_string(line_no) +
                               ": coordinates must be finite");
        nodes.push_back(node);
    }
    return nodes;
}

} // namespace cacsim
