// Pareto-optimality conditions for schedules, an exhaustive grid oracle
// for minimal path buffering, and the link-orientation search.
//
// Condition (a): no intermediate Bell measurement may happen so late that
// its Pauli frame reaches the destination after the source's does.
// Condition (b): no contiguous run of links may begin with a waiting left
// qubit and end with a waiting right qubit; such a run could slide later
// as a group, shortening both waits at once, so the schedule is dominated.
// A wait of exactly zero does not count as waiting.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtl/model.hpp"
#include "rtl/rational.hpp"
#include "rtl/timing.hpp"
#include "rtl/worker_pool.hpp"

namespace rtl::pareto {

struct ConditionA {
    bool pass = true;
    std::vector<std::size_t> violating_nodes; // intermediate node indices, 1..h-1
};

struct ConditionB {
    bool pass = true;
    std::size_t interval_lo = 0; // 1-based link interval, valid when !pass
    std::size_t interval_hi = 0;
};

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

struct EvalFrame {
    std::vector<timing::LinkEndTimes> ends;
    std::vector<Rational> swaps;   // s_0 .. s_{h-1}
    Rational dest_ready;
    Rational max_pauli_arrival;
    Rational source_arrival;       // s_0 + T_E
};

inline EvalFrame eval_frame(const Path& path, const timing::Schedule& schedule) {
    path.validate();
    const std::size_t h = path.hops();
    if (schedule.fire_times.size() != h)
        throw std::invalid_argument("schedule length does not match path hop count");
    EvalFrame f;
    f.ends.reserve(h);
    for (std::size_t j = 0; j < h; ++j)
        f.ends.push_back(timing::ready_times(path.links[j], schedule.fire_times[j]));
    f.swaps.reserve(h);
    f.swaps.push_back(f.ends[0].ready_left);
    for (std::size_t node = 1; node < h; ++node)
        f.swaps.push_back(Rational::max(f.ends[node - 1].ready_right, f.ends[node].ready_left));
    f.dest_ready = f.ends[h - 1].ready_right;
    Rational suffix = 0;
    for (std::size_t j = h; j-- > 0;) {
        suffix += path.links[j].latency;
        Rational arrival = f.swaps[j] + suffix;
        if (j == h - 1 || arrival > f.max_pauli_arrival) f.max_pauli_arrival = arrival;
    }
    f.source_arrival = f.swaps[0] + suffix; // suffix == T_E here
    return f;
}

} // namespace detail

inline ConditionA check_condition_a(const Path& path, const timing::Schedule& schedule) {
    auto f = detail::eval_frame(path, schedule);
    ConditionA result;
    Rational suffix = 0;
    std::vector<Rational> arrivals(f.swaps.size());
    for (std::size_t j = path.hops(); j-- > 0;) {
        suffix += path.links[j].latency;
        arrivals[j] = f.swaps[j] + suffix;
    }
    for (std::size_t node = 1; node < f.swaps.size(); ++node) {
        if (arrivals[node] > f.source_arrival) result.violating_nodes.push_back(node);
    }
    result.pass = result.violating_nodes.empty();
    return result;
}

inline ConditionB check_condition_b(const Path& path, const timing::Schedule& schedule) {
    auto f = detail::eval_frame(path, schedule);
    const std::size_t h = path.hops();
    // Link j's left qubit waits when it is ready strictly before the swap at
    // node j-1; its right qubit waits relative to the swap at node j. For
    // the last link the reference is the destination's first usable moment.
    const Rational dest_use = Rational::max(f.dest_ready, f.max_pauli_arrival);
    auto left_waits = [&](std::size_t j) { // 1-based link index
        return f.ends[j - 1].ready_left < f.swaps[j - 1];
    };
    auto right_waits = [&](std::size_t j) {
        const Rational& s = (j == h) ? dest_use : f.swaps[j];
        return f.ends[j - 1].ready_right < s;
    };

    ConditionB result;
    std::size_t best_width = h + 1;
    std::size_t last_left = 0; // most recent i with left_waits(i)
    for (std::size_t j = 1; j <= h; ++j) {
        if (left_waits(j)) last_left = j;
        if (last_left > 0 && right_waits(j)) {
            std::size_t width = j - last_left;
            if (width < best_width) {
                best_width = width;
                result.interval_lo = last_left;
                result.interval_hi = j;
            }
        }
    }
    result.pass = best_width > h;
    return result;
}

struct BruteForceOptions {
    Rational grid_step = Rational(1, 2);
    Rational radius = 2;
    std::uint64_t budget = 0; // 0: use default_eval_budget()
    unsigned workers = 0;     // 0: hardware concurrency
};

inline std::uint64_t default_eval_budget() {
    if (const char* env = std::getenv("RTL_EVAL_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 5'000'000;
}

struct FrontierPoint {
    timing::Schedule schedule;
    Rational tp_total;
    std::vector<Rational> node_waits;
    Rational dest_pauli_wait;
};

struct BruteForceResult {
    Rational min_tp;
    std::vector<FrontierPoint> minimal; // grid order
    std::uint64_t evaluated = 0;
};

/// Exhaustive evaluation of all fire-time vectors on a grid around the
/// Bell matched schedule (f_1 pinned by translation invariance). Certifies
/// that the matched closed form is the true minimum on small instances.
inline BruteForceResult brute_force_min(const Path& path, AppClass cls,
                                        const BruteForceOptions& opts = {}) {
    path.validate();
    if (!(opts.grid_step > Rational(0))) throw std::invalid_argument("grid step must be positive");
    if (opts.radius < Rational(0)) throw std::invalid_argument("radius must be non-negative");
    for (const Link& l : path.links)
        if (!(l.latency / opts.grid_step).is_integer())
            throw std::invalid_argument("grid step must divide every link latency");

    const std::size_t h = path.hops();
    const timing::Schedule matched = make_schedule(path, timing::NamedPattern::BellMatched);
    const std::int64_t steps_per_side = (opts.radius / opts.grid_step).num() /
                                        (opts.radius / opts.grid_step).den();
    const std::uint64_t per_dim = static_cast<std::uint64_t>(2 * steps_per_side + 1);
    const unsigned dims = h > 0 ? static_cast<unsigned>(h - 1) : 0;

    const std::uint64_t budget = opts.budget > 0 ? opts.budget : default_eval_budget();
    std::uint64_t total = 1;
    for (unsigned d = 0; d < dims; ++d) {
        if (total > budget / per_dim + 1) throw BudgetExceeded("grid evaluation budget exceeded");
        total *= per_dim;
    }
    if (total > budget) throw BudgetExceeded("grid evaluation budget exceeded");

    struct Local {
        bool any = false;
        Rational min_tp;
        std::vector<std::pair<std::uint64_t, timing::WaitReport>> minimal;
    };
    unsigned workers = resolve_workers(opts.workers);
    std::vector<Local> locals(workers);

    parallel_chunks(total, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        Local& loc = locals[w];
        timing::Schedule s;
        s.fire_times = matched.fire_times;
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            std::uint64_t rest = idx;
            for (unsigned d = 0; d < dims; ++d) {
                std::int64_t off = static_cast<std::int64_t>(rest % per_dim) - steps_per_side;
                rest /= per_dim;
                s.fire_times[d + 1] = matched.fire_times[d + 1] + Rational(off) * opts.grid_step;
            }
            timing::WaitReport rep = timing::evaluate(path, s);
            const Rational& tp = rep.path_wait[cls];
            if (!loc.any || tp < loc.min_tp) {
                loc.any = true;
                loc.min_tp = tp;
                loc.minimal.clear();
            }
            if (tp == loc.min_tp) loc.minimal.emplace_back(idx, std::move(rep));
        }
    });

    BruteForceResult result;
    result.evaluated = total;
    bool any = false;
    for (const Local& loc : locals) {
        if (!loc.any) continue;
        if (!any || loc.min_tp < result.min_tp) {
            any = true;
            result.min_tp = loc.min_tp;
        }
    }
    for (Local& loc : locals) {
        if (!loc.any || loc.min_tp != result.min_tp) continue;
        for (auto& [idx, rep] : loc.minimal) {
            FrontierPoint p;
            p.schedule.pattern_tag = "custom";
            p.schedule.fire_times = matched.fire_times;
            std::uint64_t rest = idx;
            for (unsigned d = 0; d < dims; ++d) {
                std::int64_t off = static_cast<std::int64_t>(rest % per_dim) - steps_per_side;
                rest /= per_dim;
                p.schedule.fire_times[d + 1] =
                    matched.fire_times[d + 1] + Rational(off) * opts.grid_step;
            }
            p.tp_total = rep.path_wait[cls];
            p.node_waits = std::move(rep.node_waits);
            p.dest_pauli_wait = rep.dest_pauli_wait;
            result.minimal.push_back(std::move(p));
        }
    }
    return result;
}

/// Combined verdict of both conditions plus per-class optimality.
struct ParetoVerdict {
    ConditionA cond_a;
    ConditionB cond_b;
    PerClass<Rational> path_wait;
    Rational matched;        // Bell matched closed form for this path
    Rational min_reference;  // T-class minimum used for the verdict
    PerClass<bool> optimal;
};

enum class MinReference { Analytic, Oracle };

inline ParetoVerdict check_pareto(const Path& path, const timing::Schedule& schedule,
                                  MinReference ref = MinReference::Analytic,
                                  const BruteForceOptions& oracle_opts = {}) {
    ParetoVerdict v;
    v.cond_a = check_condition_a(path, schedule);
    v.cond_b = check_condition_b(path, schedule);
    timing::WaitReport rep = timing::evaluate(path, schedule);
    v.path_wait = rep.path_wait;
    v.matched = timing::matched_tpt(path);
    v.min_reference = ref == MinReference::Analytic
                          ? v.matched
                          : brute_force_min(path, AppClass::T, oracle_opts).min_tp;
    // B and C reach zero path wait exactly when every swap is matched.
    v.optimal.b = v.optimal.c = v.path_wait.b.is_zero();
    v.optimal.t = v.cond_a.pass && v.cond_b.pass && v.path_wait.t == v.min_reference;
    return v;
}

inline bool is_pareto(const Path& path, const timing::Schedule& schedule, AppClass cls,
                      MinReference ref = MinReference::Analytic,
                      const BruteForceOptions& oracle_opts = {}) {
    return check_pareto(path, schedule, ref, oracle_opts).optimal[cls];
}

// ---------------------------------------------------------------------------
// Orientation search

enum class Orientation : std::uint8_t { Forward, Neutral, Reverse };

inline char symbol(Orientation o) {
    switch (o) {
    case Orientation::Forward: return '>';
    case Orientation::Neutral: return '=';
    case Orientation::Reverse: return '<';
    }
    return '?';
}

using OrientationVector = std::vector<Orientation>;

inline std::string to_string(const OrientationVector& v) {
    std::string s;
    s.reserve(v.size());
    for (Orientation o : v) s += symbol(o);
    return s;
}

/// Path realizing an orientation vector; neutral links become
/// meet-in-the-middle (any zero-polarity kind gives the same timing).
inline Path orientation_path(const std::vector<Rational>& latencies, const OrientationVector& v) {
    if (latencies.size() != v.size())
        throw std::invalid_argument("orientation vector length must match latency count");
    Path p;
    p.links.reserve(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        LinkKind kind = v[j] == Orientation::Forward    ? LinkKind::SenderReceiver
                        : v[j] == Orientation::Reverse ? LinkKind::ReceiverSender
                                                       : LinkKind::MeetInTheMiddle;
        p.links.push_back(Link{kind, latencies[j]});
    }
    return p;
}

struct RankedOrientation {
    OrientationVector orientations;
    Rational tp; // matched-schedule T-class path wait (0 for B/C)
};

struct OrientationRanking {
    std::vector<RankedOrientation> ranked; // ascending tp, ties lexicographic
    bool unique_minimum = false;
};

/// Enumerates every orientation vector (2^h, or 3^h with neutral links)
/// and ranks them by the matched-schedule path wait of the given class.
inline OrientationRanking best_orientations(const std::vector<Rational>& latencies, AppClass cls,
                                            bool allow_neutral, std::size_t cap = 12,
                                            unsigned workers = 0) {
    if (latencies.empty()) throw std::invalid_argument("at least one latency required");
    for (const Rational& t : latencies)
        if (!(t > Rational(0))) throw std::invalid_argument("latencies must be positive");
    const std::size_t h = latencies.size();
    if (h > cap) throw BudgetExceeded("orientation enumeration cap exceeded");

    const std::uint64_t base = allow_neutral ? 3 : 2;
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < h; ++j) total *= base;

    Rational te = 0;
    for (const Rational& t : latencies) te += t;

    // Digit d at position p (most significant = leftmost link) maps to an
    // orientation; digit order matches the enum, so ascending index is
    // ascending lexicographic order.
    auto digit_orientation = [allow_neutral](std::uint64_t digit) {
        if (!allow_neutral) return digit == 0 ? Orientation::Forward : Orientation::Reverse;
        return static_cast<Orientation>(digit == 0 ? 0 : digit == 1 ? 1 : 2);
    };

    std::vector<std::pair<Rational, std::uint64_t>> scored(total);
    parallel_chunks(total, workers, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            Rational tp = 0;
            if (cls == AppClass::T) {
                tp = te;
                std::uint64_t rest = idx;
                for (std::size_t p = h; p-- > 0;) {
                    Orientation o = digit_orientation(rest % base);
                    rest /= base;
                    if (o == Orientation::Forward) tp += latencies[p];
                    else if (o == Orientation::Reverse) tp -= latencies[p];
                }
            }
            scored[idx] = {tp, idx};
        }
    });

    std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
    });

    OrientationRanking out;
    out.ranked.reserve(total);
    for (const auto& [tp, idx] : scored) {
        OrientationVector v(h);
        std::uint64_t rest = idx;
        for (std::size_t p = h; p-- > 0;) {
            v[p] = digit_orientation(rest % base);
            rest /= base;
        }
        out.ranked.push_back({std::move(v), tp});
    }
    out.unique_minimum = out.ranked.size() == 1 || out.ranked[0].tp != out.ranked[1].tp;
    return out;
}

} // namespace rtl::pareto
