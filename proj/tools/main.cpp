// Command-line front end: scenario ingestion, capacity/outage analytics,
// traffic simulation under competing admission policies, and directional
// neighbor-discovery runs. All outputs are plot-ready CSV.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cacsim/ast.hpp"
#include "cacsim/cac.hpp"
#include "cacsim/errors.hpp"
#include "cacsim/outage.hpp"
#include "cacsim/scenario.hpp"
#include "cacsim/traffic_sim.hpp"

namespace {

using namespace cacsim;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : "na"; }

const char* kind_name(CallKind kind) { return kind == CallKind::fresh ? "new" : "handoff"; }

const char* policy_name(PolicyVariant v) {
    return v == PolicyVariant::outage_predictive ? "outage_predictive" : "fixed_threshold";
}

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::string out_path;
    std::optional<std::uint64_t> seed;
};

Scenario load_scenario(const CommonArgs& args) {
    if (!args.config_path.empty() && !args.preset.empty())
        throw config_error("give either --config or --preset, not both");
    if (!args.config_path.empty()) return load_scenario_file(args.config_path);
    if (!args.preset.empty()) return preset_scenario(args.preset);
    throw config_error("a scenario is required: --config PATH or --preset NAME");
}

// Every run is reproducible: a missing --seed picks a random one and logs
// it to stderr.
std::uint64_t effective_seed(const CommonArgs& args) {
    if (args.seed) return *args.seed;
    std::random_device rd;
    const std::uint64_t seed =
        (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
    std::cerr << "seed: " << seed << "\n";
    return seed;
}

void write_output(const CommonArgs& args, const std::string& text) {
    if (args.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(args.out_path);
    if (!out) throw io_error("cannot open output file '" + args.out_path + "'");
    out << text;
    if (!out) throw io_error("failed writing output file '" + args.out_path + "'");
}

void write_trace_file(const std::string& path, const std::string& text) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw io_error("cannot open trace file '" + path + "'");
    out << text;
}

int run_capacity(const CommonArgs& args) {
    const Scenario sc = load_scenario(args);
    const PowerAllocation alloc =
        allocate_powers(sc.classes, sc.system, sc.reference_class);
    const ClassThresholds th = class_thresholds(sc.classes, alloc, sc.system);
    const CacPolicy fixed{PolicyVariant::fixed_threshold, sc.policy.handoff_guard};
    const CacPolicy predictive{PolicyVariant::outage_predictive, sc.policy.handoff_guard};

    std::ostringstream csv;
    csv << "class,codes,target_x,theta,eta,max_admissible_fixed,max_admissible_outage\n";
    for (std::size_t i = 0; i < sc.classes.size(); ++i) {
        const int idx = static_cast<int>(i);
        csv << sc.classes[i].index << ',' << sc.classes[i].code_count_C << ','
            << fmt(sc.classes[i].target_x) << ',' << fmt(alloc.theta[i]) << ','
            << fmt(th.eta[i]) << ',' << max_admissible(sc.classes, alloc, sc.system, fixed, idx)
            << ',' << max_admissible(sc.classes, alloc, sc.system, predictive, idx) << '\n';
    }
    write_output(args, csv.str());
    return 0;
}

int run_powers(const CommonArgs& args) {
    const Scenario sc = load_scenario(args);
    const PowerAllocation alloc =
        allocate_powers(sc.classes, sc.system, sc.reference_class);
    std::ostringstream csv;
    csv << "class,codes,target_x,theta\n";
    for (std::size_t i = 0; i < sc.classes.size(); ++i) {
        csv << sc.classes[i].index << ',' << sc.classes[i].code_count_C << ','
            << fmt(sc.classes[i].target_x) << ',' << fmt(alloc.theta[i]) << '\n';
    }
    write_output(args, csv.str());
    return 0;
}

std::vector<std::uint32_t> parse_counts(const std::string& text, std::size_t expected) {
    std::vector<std::uint32_t> counts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (...) {
            throw config_error("malformed count '" + item + "'");
        }
        if (used != item.size() || v < 0)
            throw config_error("malformed count '" + item + "'");
        counts.push_back(static_cast<std::uint32_t>(v));
    }
    if (counts.size() != expected)
        throw config_error("expected " + std::to_string(expected) + " counts, got " +
                           std::to_string(counts.size()));
    return counts;
}

int run_outage(const CommonArgs& args, const std::string& counts_text, std::uint64_t mc_samples) {
    const Scenario sc = load_scenario(args);
    const PowerAllocation alloc =
        allocate_powers(sc.classes, sc.system, sc.reference_class);
    CellState state = CellState::empty(sc.classes.size());
    state.own_counts = parse_counts(counts_text, sc.classes.size());

    const OutageEstimate gauss = outage_gaussian(state, sc.classes, alloc, sc.system);
    std::optional<OutageEstimate> mc;
    if (mc_samples > 0) {
        mc = outage_montecarlo(state, sc.classes, alloc, sc.system, mc_samples,
                               effective_seed(args));
    }

    std::ostringstream csv;
    csv << "class,count,eta,p_gauss,p_mc,mc_ci95,agree\n";
    for (std::size_t j = 0; j < sc.classes.size(); ++j) {
        csv << sc.classes[j].index << ',' << state.own_counts[j] << ',' << fmt(gauss.eta[j])
            << ',' << fmt(gauss.p_out[j]) << ',';
        if (mc) {
            const double ci = mc->mc_ci_halfwidth[j];
            const bool agree =
                std::fabs(gauss.p_out[j] - mc->p_out[j]) <= std::max(0.01, 3.0 * ci);
            csv << fmt(mc->p_out[j]) << ',' << fmt(ci) << ',' << (agree ? "yes" : "no");
        } else {
            csv << "na,na,na";
        }
        csv << '\n';
    }
    write_output(args, csv.str());
    return 0;
}

void append_sim_rows(std::ostringstream& csv, const SimMetrics& metrics,
                     const std::vector<TrafficClass>& classes, PolicyVariant variant) {
    for (std::size_t i = 0; i < classes.size(); ++i) {
        for (CallKind kind : {CallKind::fresh, CallKind::handoff}) {
            const KindCounters& k =
                kind == CallKind::fresh ? metrics.per_class[i].fresh : metrics.per_class[i].handoff;
            csv << policy_name(variant) << ',' << classes[i].index << ',' << kind_name(kind) << ','
                << k.offered << ',' << k.admitted << ',' << k.blocked << ','
                << fmt_opt(k.blocking()) << ',' << fmt_opt(k.blocking_ci95()) << ','
                << fmt_opt(metrics.per_class[i].timeavg_p_out) << ','
                << metrics.per_class[i].peak_concurrent << '\n';
        }
    }
}

std::string log_lines(const SimMetrics& metrics) {
    std::ostringstream out;
    for (const auto& ev : metrics.log) {
        const char* type = ev.type == SimEventType::arrival_admitted ? "admit"
                           : ev.type == SimEventType::arrival_blocked ? "block"
                                                                      : "depart";
        char buf[96];
        std::snprintf(buf, sizeof(buf), "t=%.6f %s class=%d kind=%s\n", ev.time, type,
                      ev.class_index, kind_name(ev.kind));
        out << buf;
    }
    return out.str();
}

int run_simulate(const CommonArgs& args, const std::string& policy_override, bool compare,
                 const std::string& trace_path) {
    Scenario sc = load_scenario(args);
    if (!sc.has_sim) throw config_error("scenario has no 'sim' section");
    if (!policy_override.empty()) {
        if (policy_override == "outage_predictive") {
            sc.policy.variant = PolicyVariant::outage_predictive;
        } else if (policy_override == "fixed_threshold") {
            sc.policy.variant = PolicyVariant::fixed_threshold;
        } else {
            throw config_error("unknown policy '" + policy_override + "'");
        }
    }
    sc.sim.seed = effective_seed(args);
    sc.sim.record_log = !trace_path.empty();
    const PowerAllocation alloc =
        allocate_powers(sc.classes, sc.system, sc.reference_class);

    std::ostringstream csv;
    csv << "policy,class,kind,offered,admitted,blocked,p_block,ci95,timeavg_pout,peak_concurrent\n";
    if (compare) {
        const CacPolicy a{PolicyVariant::outage_predictive, sc.policy.handoff_guard};
        const CacPolicy b{PolicyVariant::fixed_threshold, sc.policy.handoff_guard};
        const CacComparison paired = compare_cacs(sc.sim, sc.classes, alloc, sc.system, a, b);
        append_sim_rows(csv, paired.first, sc.classes, a.variant);
        append_sim_rows(csv, paired.second, sc.classes, b.variant);
        write_trace_file(trace_path, log_lines(paired.first) + log_lines(paired.second));
    } else {
        const SimMetrics metrics = run_sim(sc.sim, sc.policy, sc.classes, alloc, sc.system);
        append_sim_rows(csv, metrics, sc.classes, sc.policy.variant);
        write_trace_file(trace_path, log_lines(metrics));
    }
    write_output(args, csv.str());
    return 0;
}

int run_ast(const CommonArgs& args, const std::string& nodes_path, int sweep_node, bool offline,
            const std::string& trace_path) {
    const Scenario sc = load_scenario(args);
    const std::vector<NodePosition> nodes = load_node_file(nodes_path);
    bool known = false;
    for (const auto& n : nodes) known = known || n.id == sweep_node;
    if (!known) throw config_error("sweep node " + std::to_string(sweep_node) +
                                   " not present in '" + nodes_path + "'");

    AngleSinrTable table;
    std::string trace_text;
    if (offline) {
        table = offline_ast(nodes, sweep_node, 0.0, sc.ast);
    } else {
        const DiscoveryResult result = run_discovery(nodes, sweep_node, 0.0, sc.ast);
        table = result.table;
        std::ostringstream tr;
        for (const auto& ev : result.trace) tr << ev.line() << '\n';
        trace_text = tr.str();
    }

    // Rows are azimuth angles, one column per neighbor.
    std::ostringstream csv;
    csv << "angle_deg";
    for (const auto& [id, column] : table.entries) {
        (void)column;
        csv << ",n" << id;
    }
    csv << '\n';
    for (std::size_t a = 0; a < ast_angles_deg.size(); ++a) {
        csv << ast_angles_deg[a];
        for (const auto& [id, column] : table.entries) {
            (void)id;
            csv << ',' << (column[a] ? fmt(*column[a]) : "na");
        }
        csv << '\n';
    }
    csv << "\nneighbor,best_angle_deg\n";
    for (const auto& [id, column] : table.entries) {
        (void)column;
        csv << id << ',' << best_angle(table, id) << '\n';
    }
    write_output(args, csv.str());
    if (!offline) write_trace_file(trace_path, trace_text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-class cellular admission-control analytics and simulators"};
    app.require_subcommand(1);

    CommonArgs common;
    app.add_option("--config", common.config_path, "Scenario JSON file")->expected(1);
    app.add_option("--preset", common.preset, "Built-in scenario preset (paper-sec6)");
    app.add_option("--out", common.out_path, "Write CSV here instead of stdout");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "Random seed (logged if omitted)");

    auto* capacity = app.add_subcommand("capacity", "Per-class thresholds and admissible counts");
    auto* powers = app.add_subcommand("powers", "Per-class relative power allocation");

    auto* outage = app.add_subcommand("outage", "Gaussian (and optional Monte Carlo) outage");
    std::string counts_text;
    std::uint64_t mc_samples = 0;
    outage->add_option("--counts", counts_text, "Admitted calls per class, comma separated")
        ->required();
    outage->add_option("--mc", mc_samples, "Monte Carlo sample count (0 = analytic only)");

    auto* simulate = app.add_subcommand("simulate", "Traffic simulation under a CAC policy");
    std::string policy_override;
    bool compare = false;
    std::string sim_trace;
    simulate->add_option("--policy", policy_override,
                         "outage_predictive or fixed_threshold (overrides scenario)");
    simulate->add_flag("--compare", compare, "Run both policies under common random numbers");
    simulate->add_option("--trace", sim_trace, "Write the event log to this file");

    auto* ast = app.add_subcommand("ast", "Directional neighbor discovery sweep");
    std::string nodes_path;
    int sweep_node = 0;
    bool offline = false;
    std::string ast_trace;
    ast->add_option("--nodes", nodes_path, "Node file: 'id x y tx_power_dbm' per line")
        ->required();
    ast->add_option("--sweep", sweep_node, "Sweep-originating node id")->required();
    ast->add_flag("--offline", offline, "Evaluate the table directly instead of via protocol");
    ast->add_option("--trace", ast_trace, "Write the protocol event trace to this file");

    for (auto* sub : {capacity, powers, outage, simulate, ast}) sub->fallthrough();

    try {
        app.parse(argc, argv);
        if (seed_opt->count() > 0) common.seed = seed_value;
        if (capacity->parsed()) return run_capacity(common);
        if (powers->parsed()) return run_powers(common);
        if (outage->parsed()) return run_outage(common, counts_text, mc_samples);
        if (simulate->parsed()) return run_simulate(common, policy_override, compare, sim_trace);
        if (ast->parsed()) return run_ast(common, nodes_path, sweep_node, offline, ast_trace);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const infeasibility_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
