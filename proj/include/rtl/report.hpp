// Text reports for the command-line front end. All numbers come straight
// from the library structures; nothing is re-derived here. Field order is
// fixed and rationals print exactly, so reports are byte-stable.

#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "rtl/model.hpp"
#include "rtl/montecarlo.hpp"
#include "rtl/pareto.hpp"
#include "rtl/probability.hpp"
#include "rtl/timing.hpp"

namespace rtl::report {

namespace detail {

class KeyValueBlock {
public:
    void add(std::string key, std::string value) {
        rows_.emplace_back(std::move(key), std::move(value));
    }

    std::string str() const {
        std::size_t width = 0;
        for (const auto& [k, v] : rows_) width = std::max(width, k.size());
        std::string out;
        for (const auto& [k, v] : rows_) {
            out += k;
            out.append(width - k.size(), ' ');
            out += " : ";
            out += v;
            out += '\n';
        }
        return out;
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

inline std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

inline std::string join_rationals(const std::vector<Rational>& values) {
    if (values.empty()) return "(none)";
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += values[i].str();
    }
    return out;
}

} // namespace detail

inline std::string analyze(const Path& path, const timing::Schedule& schedule, AppClass cls,
                           const std::string& units = "") {
    const timing::WaitReport rep = timing::evaluate(path, schedule);
    const pareto::ParetoVerdict verdict = pareto::check_pareto(path, schedule);

    detail::KeyValueBlock kv;
    kv.add("hops", std::to_string(path.hops()));
    if (!units.empty()) kv.add("units", units); // display label only
    {
        std::string links;
        for (std::size_t j = 0; j < path.hops(); ++j) {
            if (j) links += " | ";
            links += to_string(path.links[j].kind);
            links += ' ';
            links += path.links[j].latency.str();
        }
        kv.add("links", links);
    }
    kv.add("class", to_string(cls));
    kv.add("pattern", schedule.pattern_tag);
    kv.add("fire times", detail::join_rationals(schedule.fire_times));
    kv.add("T_E", end_to_end_latency(path).str());
    kv.add("T^H_B", rep.half_wait.b.str());
    kv.add("T^H_C", rep.half_wait.c.str());
    kv.add("T^H_T", rep.half_wait.t.str());
    kv.add("T^P_B", rep.path_wait.b.str());
    kv.add("T^P_C", rep.path_wait.c.str());
    kv.add("T^P_T", rep.path_wait.t.str());
    kv.add("total_B", rep.total_wait.b.str());
    kv.add("total_C", rep.total_wait.c.str());
    kv.add("total_T", rep.total_wait.t.str());
    kv.add("swap times", detail::join_rationals(rep.swap_times));
    kv.add("node waits", detail::join_rationals(rep.node_waits));
    kv.add("dest ready", rep.dest_ready.str());
    kv.add("dest pauli wait", rep.dest_pauli_wait.str());
    kv.add("bell_matched T^P_T", verdict.matched.str());

    bool matched_timing = rep.path_wait.b.is_zero();
    kv.add("matched", matched_timing ? "yes" : "no");
    {
        std::string a = verdict.cond_a.pass ? "pass" : "fail (node";
        if (!verdict.cond_a.pass) {
            for (std::size_t n : verdict.cond_a.violating_nodes) a += ' ' + std::to_string(n);
            a += ')';
        }
        kv.add("pareto condition (a)", a);
        std::string b = verdict.cond_b.pass
                            ? "pass"
                            : "fail (links " + std::to_string(verdict.cond_b.interval_lo) + ".." +
                                  std::to_string(verdict.cond_b.interval_hi) + ")";
        kv.add("pareto condition (b)", b);
    }
    kv.add("pareto optimal B", verdict.optimal.b ? "yes" : "no");
    kv.add("pareto optimal C", verdict.optimal.c ? "yes" : "no");
    kv.add("pareto optimal T", verdict.optimal.t ? "yes" : "no");

    const prob::RegimeParams regime_params = prob::RegimeParams::for_code(CodeParams::steane());
    for (std::size_t j = 0; j < path.hops(); ++j) {
        std::string value;
        try {
            value = prob::to_string(prob::classify_regime(path.links[j], regime_params));
        } catch (const std::invalid_argument&) {
            value = "unclassifiable (2n/N_T >= 0.5)";
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, " (pr=%g nt=%lld)", path.links[j].reception_prob,
                      static_cast<long long>(path.links[j].transmitters));
        kv.add("regime link " + std::to_string(j + 1), value + buf);
    }
    return kv.str();
}

inline std::string orientations(const std::vector<Rational>& latencies,
                                const pareto::OrientationRanking& ranking, AppClass cls,
                                std::size_t top) {
    Rational te = 0;
    for (const Rational& t : latencies) te += t;
    detail::KeyValueBlock kv;
    kv.add("hops", std::to_string(latencies.size()));
    kv.add("T_E", te.str());
    kv.add("class", to_string(cls));
    kv.add("vectors", std::to_string(ranking.ranked.size()));
    kv.add("unique minimum", ranking.unique_minimum ? "yes" : "no");
    std::string out = kv.str();
    const std::size_t count =
        top == 0 ? ranking.ranked.size() : std::min(top, ranking.ranked.size());
    for (std::size_t i = 0; i < count; ++i) {
        out += pareto::to_string(ranking.ranked[i].orientations);
        out += " : ";
        out += ranking.ranked[i].tp.str();
        out += '\n';
    }
    return out;
}

inline std::string regimes(double pr, std::int64_t nt, const CodeParams& code,
                           double alpha_target, double epsilon, double link_target,
                           std::size_t hops = 1) {
    // hops > 1 spreads the direct-transmission target over a whole path of
    // block operations; the per-block target rises to target^(1/hops).
    const double block_target = prob::path_adjusted_target(alpha_target, hops);
    detail::KeyValueBlock kv;
    kv.add("code", code.str());
    kv.add("P_r", detail::fixed6(pr));
    kv.add("N_T", std::to_string(nt));
    kv.add("2n/N_T", detail::fixed6(2.0 * code.n / static_cast<double>(nt)));
    if (hops > 1) {
        kv.add("path hops", std::to_string(hops));
        kv.add("per-block target", detail::fixed6(block_target));
    }
    {
        Link link{LinkKind::SenderReceiver, Rational(1), pr, nt};
        prob::RegimeParams params;
        params.code = code;
        params.epsilon = epsilon;
        params.link_target = link_target;
        params.direct_target = block_target;
        params.alpha = prob::alpha_threshold(code, block_target);
        std::string value;
        try {
            value = prob::to_string(prob::classify_regime(link, params));
        } catch (const std::invalid_argument&) {
            value = "unclassifiable (2n/N_T >= 0.5)";
        }
        kv.add("regime", value);
        kv.add("alpha " + code.str(),
               detail::fixed4(params.alpha) + " (target " + detail::fixed6(block_target) + ")");
    }
    try {
        kv.add("required N_T",
               std::to_string(prob::required_transmitters(pr, code.n, link_target)) +
                   " (target " + detail::fixed6(link_target) + ")");
    } catch (const std::invalid_argument&) {
        kv.add("required N_T", "n/a (P_r not in (0,1))");
    }
    for (const CodeParams& preset : {CodeParams::steane(), CodeParams::golay()}) {
        if (preset.str() == code.str()) continue; // already reported above
        kv.add("alpha " + preset.str(),
               detail::fixed4(prob::alpha_threshold(preset, block_target)) + " (target " +
                   detail::fixed6(block_target) + ")");
    }
    return kv.str();
}

inline std::string simulate(const mc::SimConfig& config, const mc::SimResult& result) {
    detail::KeyValueBlock kv;
    kv.add("bursts", std::to_string(config.bursts));
    kv.add("seed", std::to_string(config.seed));
    kv.add("code block n", std::to_string(config.code.n));
    double analytic_path = 1.0;
    for (std::size_t j = 0; j < config.path.hops(); ++j) {
        const Link& link = config.path.links[j];
        const double analytic =
            prob::link_cascade_prob(link.transmitters, link.reception_prob, config.code.n);
        analytic_path *= analytic;
        const std::string tag = "link " + std::to_string(j + 1);
        kv.add(tag + " analytic P_s", detail::fixed6(analytic));
        kv.add(tag + " empirical P_s",
               detail::fixed6(result.per_link_success_rate[j]) + " (se " +
                   detail::fixed6(result.per_link_rate_se[j]) + ")");
        kv.add(tag + " mean N_r",
               detail::fixed6(result.mean_success_count[j]) + " (se " +
                   detail::fixed6(result.mean_success_count_se[j]) + ", analytic " +
                   detail::fixed6(link.reception_prob *
                                  static_cast<double>(link.transmitters)) +
                   ")");
    }
    kv.add("path analytic P_p", detail::fixed6(analytic_path));
    kv.add("path empirical P_p", detail::fixed6(result.path_cascade_rate) + " (se " +
                                     detail::fixed6(result.path_rate_se) + ")");
    return kv.str();
}

} // namespace rtl::report
