// Link ready-time semantics, named firing schedules, and the schedule
// evaluator producing per-node waits and per-class buffering totals.
//
// Timing model. A link's fire time f is the moment its photon emission
// burst launches. Classical messages (triggers, acknowledgments, Pauli
// frames) travel hop-by-hop at exactly the one-way latency of the hop they
// cross. A qubit is "ready" once it is entangled and its end has local
// confirmation of success:
//
//   sender-receiver   left ready f+2t (awaits ack),  right ready f+t
//   receiver-sender   mirror image of the above
//   meet-in-middle    both ends ready f+t   (midpoint result returns t/2)
//   midpoint-source   both ends ready f+3t/2 (arrival f+t/2, then a
//                     full-link classical exchange of success information)
//
// An intermediate node performs its Bell measurement the instant both of
// its qubits are ready; the earlier qubit buffers for the difference (the
// node wait). The source measures as soon as its qubit is ready. Pauli
// frame information from a measurement at node j relays rightward and
// reaches the destination after the remaining path latency; the
// destination's extra hold time until the last frame arrives is the
// destination Pauli wait (clamped at zero; only the T class pays it).

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtl/model.hpp"
#include "rtl/rational.hpp"

namespace rtl::timing {

/// Ready times of a link's two memory qubits for a given fire time, plus
/// the link's constant quantum/classical half-entangled waits per end.
struct LinkEndTimes {
    Rational ready_left;
    Rational ready_right;
    Rational q_left, c_left;
    Rational q_right, c_right;
};

inline LinkEndTimes ready_times(const Link& link, const Rational& fire) {
    const Rational t = link.latency;
    switch (link.kind) {
    case LinkKind::SenderReceiver:
        return {fire + t + t, fire + t, t, t, 0, 0};
    case LinkKind::ReceiverSender:
        return {fire + t, fire + t + t, 0, 0, t, t};
    case LinkKind::MeetInTheMiddle:
        return {fire + t, fire + t, t.half(), t.half(), t.half(), t.half()};
    case LinkKind::MidpointSource: {
        Rational ready = fire + t + t.half();
        return {ready, ready, 0, t, 0, t};
    }
    }
    throw std::logic_error("unreachable link kind");
}

/// Offset from fire time to the left qubit's ready time.
inline Rational left_ready_offset(const Link& link) {
    return ready_times(link, Rational(0)).ready_left;
}

struct Schedule {
    std::vector<Rational> fire_times; // one per link
    std::string pattern_tag = "custom";
};

enum class NamedPattern { Flat, ForwardTrigger, BellMatched, RidgeFold, ValleyFold };

inline const char* to_string(NamedPattern p) {
    switch (p) {
    case NamedPattern::Flat: return "flat";
    case NamedPattern::ForwardTrigger: return "forward";
    case NamedPattern::BellMatched: return "bell_matched";
    case NamedPattern::RidgeFold: return "ridge_fold";
    case NamedPattern::ValleyFold: return "valley_fold";
    }
    return "custom";
}

namespace detail {

// Fire times making both qubits at every intermediate node ready at the
// same instant: f_{j+1} is chosen so link j+1's left ready time equals
// link j's right ready time. Anchored at f_1 = 0.
inline std::vector<Rational> bell_matched_fires(const Path& path) {
    std::vector<Rational> fires;
    fires.reserve(path.hops());
    fires.push_back(Rational(0));
    Rational prev_right = ready_times(path.links[0], fires[0]).ready_right;
    for (std::size_t j = 1; j < path.hops(); ++j) {
        Rational f = prev_right - left_ready_offset(path.links[j]);
        fires.push_back(f);
        prev_right = ready_times(path.links[j], f).ready_right;
    }
    return fires;
}

// Classical trigger starting at the middle node and propagating outward;
// each link fires when the trigger reaches its emitting end. For the
// symmetric architectures the reference is the end nearer the middle.
inline std::vector<Rational> ridge_fold_fires(const Path& path) {
    const std::size_t h = path.hops();
    const std::size_t mid = h / 2; // node index
    std::vector<Rational> cum(h + 1, Rational(0));
    for (std::size_t j = 0; j < h; ++j) cum[j + 1] = cum[j] + path.links[j].latency;
    auto arrival = [&](std::size_t node) { return (cum[node] - cum[mid]).abs(); };

    std::vector<Rational> fires;
    fires.reserve(h);
    for (std::size_t j = 0; j < h; ++j) {
        std::size_t emit_node;
        switch (path.links[j].kind) {
        case LinkKind::SenderReceiver: emit_node = j; break;
        case LinkKind::ReceiverSender: emit_node = j + 1; break;
        default: emit_node = (j + 1 <= mid) ? j + 1 : j; break;
        }
        fires.push_back(arrival(emit_node));
    }
    return fires;
}

} // namespace detail

inline Schedule make_schedule(const Path& path, NamedPattern pattern) {
    path.validate();
    Schedule s;
    s.pattern_tag = to_string(pattern);
    switch (pattern) {
    case NamedPattern::Flat:
        s.fire_times.assign(path.hops(), Rational(0));
        break;
    case NamedPattern::ForwardTrigger: {
        Rational cum = 0;
        for (const Link& l : path.links) {
            s.fire_times.push_back(cum);
            cum += l.latency;
        }
        break;
    }
    case NamedPattern::BellMatched:
        s.fire_times = detail::bell_matched_fires(path);
        break;
    case NamedPattern::RidgeFold:
        if (path.hops() < 2) throw std::invalid_argument("ridge_fold requires at least 2 hops");
        s.fire_times = detail::ridge_fold_fires(path);
        break;
    case NamedPattern::ValleyFold:
        // Bell matched timing under its midpoint-initiated name.
        if (path.hops() < 2) throw std::invalid_argument("valley_fold requires at least 2 hops");
        s.fire_times = detail::bell_matched_fires(path);
        break;
    }
    return s;
}

/// Evaluated waits for one path and schedule.
///
/// swap_times holds the source measurement time s_0 followed by the
/// intermediate Bell measurement times s_1..s_{h-1}; node_waits holds the
/// buffer time of the earlier qubit at each intermediate node. Per-class
/// figures: half_wait is the link-level half-entangled total, path_wait
/// the swap-matching waits (plus the destination Pauli wait for T), and
/// total_wait their sum.
struct WaitReport {
    std::vector<Rational> swap_times;
    Rational dest_ready;
    std::vector<Rational> node_waits;
    Rational dest_pauli_wait;
    Rational max_pauli_arrival;
    PerClass<Rational> half_wait;
    PerClass<Rational> path_wait;
    PerClass<Rational> total_wait;
};

inline WaitReport evaluate(const Path& path, const Schedule& schedule) {
    path.validate();
    const std::size_t h = path.hops();
    if (schedule.fire_times.size() != h)
        throw std::invalid_argument("schedule length does not match path hop count");

    std::vector<LinkEndTimes> ends;
    ends.reserve(h);
    for (std::size_t j = 0; j < h; ++j)
        ends.push_back(ready_times(path.links[j], schedule.fire_times[j]));

    WaitReport r;
    r.swap_times.reserve(h);
    r.swap_times.push_back(ends[0].ready_left); // source measures when ready
    r.node_waits.reserve(h > 0 ? h - 1 : 0);
    Rational wait_sum = 0;
    for (std::size_t node = 1; node < h; ++node) {
        const Rational& a = ends[node - 1].ready_right;
        const Rational& b = ends[node].ready_left;
        r.swap_times.push_back(Rational::max(a, b));
        Rational w = (a - b).abs();
        r.node_waits.push_back(w);
        wait_sum += w;
    }
    r.dest_ready = ends[h - 1].ready_right;

    // Pauli frame from the measurement at node j reaches the destination
    // after the remaining hops' latency.
    Rational suffix = 0;
    for (std::size_t j = h; j-- > 0;) {
        suffix += path.links[j].latency;
        Rational arrival = r.swap_times[j] + suffix;
        if (j == h - 1 || arrival > r.max_pauli_arrival) r.max_pauli_arrival = arrival;
    }
    r.dest_pauli_wait = Rational::max(Rational(0), r.max_pauli_arrival - r.dest_ready);

    Rational two_te = 0;
    for (const Link& l : path.links) two_te += l.latency + l.latency;
    r.half_wait.c = r.half_wait.t = two_te;
    // B-class endpoints are measured the instant their qubit is ready, so
    // the endpoint ends of the first and last links contribute no
    // half-entangled wait. For h == 1 both ends of the single link drop out.
    r.half_wait.b = two_te - (ends[0].q_left + ends[0].c_left) -
                    (ends[h - 1].q_right + ends[h - 1].c_right);

    r.path_wait.b = r.path_wait.c = wait_sum;
    r.path_wait.t = wait_sum + r.dest_pauli_wait;
    for (AppClass cls : {AppClass::B, AppClass::C, AppClass::T})
        r.total_wait[cls] = r.half_wait[cls] + r.path_wait[cls];
    return r;
}

/// Closed form for the T-class path wait of the Bell matched schedule:
/// end-to-end latency plus the polarity sum.
inline Rational matched_tpt(const Path& path) {
    return end_to_end_latency(path) + polarity_sum(path);
}

/// Entanglement attempt rate of one buffer qubit, in attempts per link
/// round trip. The midpoint-source architecture is limited only by the
/// source itself.
struct RepRate {
    int attempts_per_rtt = 1;
    bool source_limited = false;

    std::string str() const {
        if (source_limited) return "many/RTT";
        return std::to_string(attempts_per_rtt) + "/RTT";
    }
};

inline RepRate rep_rate(const Link& link) {
    switch (link.kind) {
    case LinkKind::SenderReceiver:
    case LinkKind::ReceiverSender: return {1, false};
    case LinkKind::MeetInTheMiddle: return {2, false};
    case LinkKind::MidpointSource: return {0, true};
    }
    throw std::logic_error("unreachable link kind");
}

} // namespace rtl::timing
