#include "cacsim/ast.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "cacsim/errors.hpp"
#include "cacsim/event_queue.hpp"

namespace cacsim {

namespace {

constexpr double rad_to_deg = 57.29577951308232;

// Absolute angular offset folded into [0, 180].
double angular_offset_deg(double a, double b) {
    double d = std::fmod(a - b, 360.0);
    if (d < 0.0) d += 360.0;
    return d > 180.0 ? 360.0 - d : d;
}

int angle_index(int angle_deg) {
    for (std::size_t i = 0; i < ast_angles_deg.size(); ++i)
        if (ast_angles_deg[i] == angle_deg) return static_cast<int>(i);
    throw config_error("angle " + std::to_string(angle_deg) + " is not a sweep direction");
}

const NodePosition& find_node(const std::vector<NodePosition>& nodes, int id) {
    for (const auto& n : nodes)
        if (n.id == id) return n;
    throw config_error("unknown node id " + std::to_string(id));
}

} // namespace

std::string AstTraceEvent::line() const {
    const char* name = "";
    switch (kind) {
        case AstTraceKind::emit_request: name = "emit_request"; break;
        case AstTraceKind::request_received: name = "request_received"; break;
        case AstTraceKind::request_missed: name = "request_missed"; break;
        case AstTraceKind::reply_timer_armed: name = "reply_timer_armed"; break;
        case AstTraceKind::reply_sent: name = "reply_sent"; break;
        case AstTraceKind::reply_received: name = "reply_received"; break;
        case AstTraceKind::reply_discarded: name = "reply_discarded"; break;
        case AstTraceKind::collection_closed: name = "collection_closed"; break;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "t=%.6f %s node=%d peer=%d angle=%d value=%.6f", time, name,
                  node, peer, angle_deg, value);
    return buf;
}

double link_sinr(const NodePosition& tx,
                 const NodePosition& rx,
                 double angle_deg,
                 const PropagationConfig& prop) {
    const double dx = rx.x - tx.x;
    const double dy = rx.y - tx.y;
    const double dist = std::hypot(dx, dy);
    if (dist == 0.0) throw std::domain_error("link_sinr: coincident node positions");

    const double bearing = std::atan2(dy, dx) * rad_to_deg;
    const double offset = angular_offset_deg(angle_deg, bearing);
    const double gain =
        offset <= 0.5 * prop.beamwidth_deg ? prop.mainlobe_gain_db : prop.sidelobe_gain_db;
    const double path_loss =
        prop.reference_loss_db + 10.0 * prop.path_loss_exponent * std::log10(dist);
    const double received_dbm = tx.tx_power_dbm + gain - path_loss;
    return received_dbm - prop.noise_floor_dbm;
}

void column_record(AstColumn& column, int angle_deg, double sinr_db) {
    auto& cell = column[static_cast<std::size_t>(angle_index(angle_deg))];
    if (!cell || *cell < sinr_db) cell = sinr_db;
}

namespace {

struct NeighborState {
    AstColumn column{};
    bool timer_armed = false;
};

struct AstEvent {
    enum class Type { emit, deliver, reply_timeout, deadline };
    Type type;
    int node = 0;         // receiver for deliveries/timeouts
    int angle_idx = 0;    // emit only
    double sinr = 0.0;    // measured SINR of a delivered dir_request
    DiscoveryMessage msg; // deliver only
};

} // namespace

DiscoveryResult run_discovery(const std::vector<NodePosition>& nodes,
                              int sweep_origin,
                              double start_time,
                              const AstProtocolConfig& cfg) {
    const NodePosition& origin = find_node(nodes, sweep_origin);

    DiscoveryResult result;
    result.table.owner = sweep_origin;
    result.table.timestamp_t = start_time;

    std::map<int, NeighborState> neighbor_state;
    EventQueue<AstEvent> queue;

    for (std::size_t a = 0; a < ast_angles_deg.size(); ++a) {
        queue.schedule(start_time + static_cast<double>(a) * cfg.emission_spacing_s,
                       AstEvent{AstEvent::Type::emit, sweep_origin, static_cast<int>(a), 0.0, {}});
    }
    const double deadline = start_time + cfg.effective_deadline_s();
    queue.schedule(deadline, AstEvent{AstEvent::Type::deadline, sweep_origin, 0, 0.0, {}});

    bool collecting = true;
    while (!queue.empty()) {
        const auto entry = queue.pop();
        const double now = entry.time;
        const AstEvent& ev = entry.payload;

        switch (ev.type) {
            case AstEvent::Type::emit: {
                const int angle = ast_angles_deg[static_cast<std::size_t>(ev.angle_idx)];
                const DiscoveryMessage request{MessageKind::dir_request, sweep_origin, angle,
                                               {}, now};
                result.trace.push_back(
                    {now, AstTraceKind::emit_request, sweep_origin, sweep_origin, angle, 0.0});
                for (const auto& rx : nodes) {
                    if (rx.id == sweep_origin) continue;
                    const double sinr = link_sinr(origin, rx, angle, cfg.prop);
                    if (sinr >= cfg.detection_threshold_db) {
                        queue.schedule(now + cfg.message_delay_s,
                                       AstEvent{AstEvent::Type::deliver, rx.id, 0, sinr, request});
                    } else {
                        result.trace.push_back(
                            {now, AstTraceKind::request_missed, rx.id, sweep_origin, angle, sinr});
                    }
                }
                break;
            }
            case AstEvent::Type::deliver: {
                if (ev.msg.kind == MessageKind::dir_request) {
                    NeighborState& st = neighbor_state[ev.node];
                    column_record(st.column, ev.msg.angle_deg, ev.sinr);
                    result.trace.push_back({now, AstTraceKind::request_received, ev.node,
                                            ev.msg.from, ev.msg.angle_deg, ev.sinr});
                    if (!st.timer_armed) {
                        // First request from this sweep: wait until the origin
                        // has finished broadcasting in every direction.
                        st.timer_armed = true;
                        const double fire_at = now + cfg.reply_wait_s();
                        queue.schedule(fire_at,
                                       AstEvent{AstEvent::Type::reply_timeout, ev.node, 0, 0.0, {}});
                        result.trace.push_back({now, AstTraceKind::reply_timer_armed, ev.node,
                                                ev.msg.from, 0, fire_at});
                    }
                    break;
                }
                // column_reply back at the sweep origin
                if (!collecting) {
                    ++result.discarded_replies;
                    result.trace.push_back({now, AstTraceKind::reply_discarded, sweep_origin,
                                            ev.msg.from, 0,
                                            static_cast<double>(ev.msg.column.size())});
                    break;
                }
                AstColumn column{};
                for (const auto& [angle, sinr] : ev.msg.column) column_record(column, angle, sinr);
                result.table.entries[ev.msg.from] = column;
                result.trace.push_back({now, AstTraceKind::reply_received, sweep_origin,
                                        ev.msg.from, 0,
                                        static_cast<double>(ev.msg.column.size())});
                break;
            }
            case AstEvent::Type::reply_timeout: {
                NeighborState& st = neighbor_state[ev.node];
                DiscoveryMessage reply{MessageKind::column_reply, ev.node, 0, {}, now};
                for (std::size_t i = 0; i < st.column.size(); ++i) {
                    if (st.column[i]) reply.column.emplace_back(ast_angles_deg[i], *st.column[i]);
                }
                st.column = AstColumn{}; // column cleared once reported
                st.timer_armed = false;
                if (reply.column.empty()) break; // nothing detected, no reply
                result.trace.push_back({now, AstTraceKind::reply_sent, ev.node, sweep_origin, 0,
                                        static_cast<double>(reply.column.size())});
                queue.schedule(now + cfg.message_delay_s,
                               AstEvent{AstEvent::Type::deliver, sweep_origin, 0, 0.0,
                                        std::move(reply)});
                break;
            }
            case AstEvent::Type::deadline: {
                collecting = false;
                result.trace.push_back(
                    {now, AstTraceKind::collection_closed, sweep_origin, sweep_origin, 0, 0.0});
                break;
            }
        }
    }
    return result;
}

AngleSinrTable offline_ast(const std::vector<NodePosition>& nodes,
                           int owner,
                           double timestamp,
                           const AstProtocolConfig& cfg) {
    const NodePosition& origin = find_node(nodes, owner);
    AngleSinrTable table;
    table.owner = owner;
    table.timestamp_t = timestamp;
    for (const auto& rx : nodes) {
        if (rx.id == owner) continue;
        AstColumn column{};
        bool any = false;
        for (std::size_t a = 0; a < ast_angles_deg.size(); ++a) {
            const double sinr = link_sinr(origin, rx, ast_angles_deg[a], cfg.prop);
            if (sinr >= cfg.detection_threshold_db) {
                column[a] = sinr;
                any = true;
            }
        }
        if (any) table.entries[rx.id] = column;
    }
    return table;
}

int best_angle(const AngleSinrTable& ast, int neighbor) {
    const auto it = ast.entries.find(neighbor);
    if (it == ast.entries.end())
        throw config_error("best_angle: neighbor " + std::to_string(neighbor) +
                           " not present in table");
    int best = -1;
    double best_sinr = 0.0;
    for (std::size_t a = 0; a < it->second.size(); ++a) {
        if (!it->second[a]) continue;
        if (best < 0 || *it->second[a] > best_sinr) {
            best = ast_angles_deg[a];
            best_sinr = *it->second[a];
        }
    }
    if (best < 0)
        throw config_error("best_angle: neighbor " + std::to_string(neighbor) +
                           " has no finite cells");
    return best == 360 ? 0 : best;
}

} // namespace cacsim
