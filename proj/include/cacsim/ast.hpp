#ifndef CACSIM_AST_HPP
#define CACSIM_AST_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cacsim {

struct NodePosition {
    int id = 0;
    double x = 0.0; // meters
    double y = 0.0;
    double tx_power_dbm = 0.0;
};

// Log-distance path loss with a two-level (mainlobe/sidelobe) antenna
// pattern. Discovery runs one sweep at a time, so no co-channel
// interference term enters the SINR.
struct PropagationConfig {
    double path_loss_exponent = 3.0;
    double reference_loss_db = 40.0; // at 1 m
    double noise_floor_dbm = -90.0;
    double beamwidth_deg = 30.0; // main lobe
    double mainlobe_gain_db = 10.0;
    double sidelobe_gain_db = -10.0;
};

struct AstProtocolConfig {
    PropagationConfig prop;
    double detection_threshold_db = 0.0; // requests below this are not received
    double emission_spacing_s = 1e-3;    // gap between the 13 directional emissions
    double reply_guard_s = 1e-3;         // slack added to the neighbor wait
    double message_delay_s = 1e-4;       // virtual delivery latency per message

    // Neighbors reply this long after their first received request, which
    // safely covers the rest of the sweep.
    double reply_wait_s() const { return 13.0 * emission_spacing_s + reply_guard_s; }

    // Relative to sweep start; replies landing later are discarded.
    std::optional<double> collection_deadline_s;
    double effective_deadline_s() const {
        if (collection_deadline_s) return *collection_deadline_s;
        return 13.0 * emission_spacing_s + reply_wait_s() + 2.0 * message_delay_s;
    }
};

// The 13 sweep directions. 0 and 360 describe the same physical bearing
// and both rows are kept; their values are always equal.
constexpr std::array<int, 13> ast_angles_deg{0,   30,  60,  90,  120, 150, 180,
                                             210, 240, 270, 300, 330, 360};

using AstColumn = std::array<std::optional<double>, 13>;

struct AngleSinrTable {
    int owner = 0;
    double timestamp_t = 0.0;
    std::map<int, AstColumn> entries; // neighbor id -> 13 SINR cells (dB)
};

enum class MessageKind { dir_request, column_reply };

struct DiscoveryMessage {
    MessageKind kind = MessageKind::dir_request;
    int from = 0;
    int angle_deg = 0;                                 // dir_request only
    std::vector<std::pair<int, double>> column;        // column_reply only
    double emitted_at = 0.0;
};

enum class AstTraceKind {
    emit_request,
    request_received,
    request_missed,
    reply_timer_armed,
    reply_sent,
    reply_received,
    reply_discarded,
    collection_closed,
};

struct AstTraceEvent {
    double time = 0.0;
    AstTraceKind kind = AstTraceKind::emit_request;
    int node = 0;   // acting node
    int peer = 0;   // other endpoint (or sweep origin)
    int angle_deg = 0;
    double value = 0.0; // SINR or timer target, depending on kind

    std::string line() const; // line-oriented log form
};

struct DiscoveryResult {
    AngleSinrTable table;
    std::vector<AstTraceEvent> trace;
    std::uint64_t discarded_replies = 0;
};

// SINR (dB) of a directional emission from tx at the given azimuth as
// perceived by rx. Throws std::domain_error on coincident positions.
double link_sinr(const NodePosition& tx,
                 const NodePosition& rx,
                 double angle_deg,
                 const PropagationConfig& prop);

// Accumulate one detected (angle, SINR) measurement into a column;
// a duplicate angle keeps the larger value.
void column_record(AstColumn& column, int angle_deg, double sinr_db);

// Event-driven single sweep: the origin emits 13 directional requests at
// the configured spacing, neighbors accumulate columns and reply once
// after their wait, and the table is assembled at the collection
// deadline. Fully deterministic.
DiscoveryResult run_discovery(const std::vector<NodePosition>& nodes,
                              int sweep_origin,
                              double start_time,
                              const AstProtocolConfig& cfg);

// Oracle path: evaluate link_sinr directly for every (neighbor, angle)
// above the detection threshold, bypassing the protocol.
AngleSinrTable offline_ast(const std::vector<NodePosition>& nodes,
                           int owner,
                           double timestamp,
                           const AstProtocolConfig& cfg);

// Argmax angle (degrees) for a neighbor; ties break toward the smaller
// angle and 360 normalizes to 0. Throws config_error when the neighbor
// is not in the table.
int best_angle(const AngleSinrTable& ast, int neighbor);

} // namespace cacsim

#endif
