// Binomial calculators for the probability-regime boundaries: per-link
// cascade success, required transmitter counts, path cascade probability,
// the direct-transmission threshold, and regime classification.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtl/model.hpp"

namespace rtl::prob {

namespace detail {

inline double log_binom_pmf(std::int64_t n, std::int64_t j, double log_p, double log_q) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(j) + 1.0) -
           std::lgamma(static_cast<double>(n - j) + 1.0) +
           static_cast<double>(j) * log_p + static_cast<double>(n - j) * log_q;
}

// Kahan-compensated sum of pmf terms for j in [lo, hi].
inline double sum_pmf(std::int64_t n, std::int64_t lo, std::int64_t hi, double log_p,
                      double log_q) {
    double sum = 0.0;
    double comp = 0.0;
    for (std::int64_t j = lo; j <= hi; ++j) {
        double term = std::exp(log_binom_pmf(n, j, log_p, log_q));
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

} // namespace detail

/// P(X >= k_min) for X ~ Binomial(trials, p). Sums the side of the
/// distribution with fewer terms in log space; absolute error < 1e-12.
inline double binom_tail(std::int64_t trials, double p, std::int64_t k_min) {
    if (trials < 0) throw std::invalid_argument("binom_tail: trials must be >= 0");
    if (!(p >= 0.0) || p > 1.0) throw std::invalid_argument("binom_tail: p must be in [0,1]");
    if (k_min < 0 || k_min > trials + 1)
        throw std::invalid_argument("binom_tail: k_min must be in [0, trials+1]");
    if (k_min <= 0) return 1.0;
    if (k_min > trials) return 0.0;
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;

    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    const std::int64_t lower_terms = k_min;              // j = 0 .. k_min-1
    const std::int64_t upper_terms = trials - k_min + 1; // j = k_min .. trials
    if (upper_terms <= lower_terms)
        return detail::sum_pmf(trials, k_min, trials, log_p, log_q);
    double lower = detail::sum_pmf(trials, 0, k_min - 1, log_p, log_q);
    return lower >= 1.0 ? 0.0 : 1.0 - lower;
}

/// Probability that a burst of transmitter qubits yields at least n
/// entanglement successes on one link.
inline double link_cascade_prob(std::int64_t transmitters, double reception_prob,
                                std::int64_t block_size) {
    if (transmitters < 1) throw std::invalid_argument("link_cascade_prob: transmitters must be >= 1");
    if (block_size < 1) throw std::invalid_argument("link_cascade_prob: block size must be >= 1");
    if (block_size > transmitters) return 0.0;
    return binom_tail(transmitters, reception_prob, block_size);
}

/// Minimal transmitter count whose cascade probability meets the target.
/// Monotone in the transmitter count, so exponential growth followed by
/// binary search always terminates.
inline std::int64_t required_transmitters(double reception_prob, std::int64_t block_size,
                                          double target) {
    if (!(reception_prob > 0.0) || !(reception_prob < 1.0))
        throw std::invalid_argument("required_transmitters: reception probability must be in (0,1)");
    if (!(target > 0.0) || !(target < 1.0))
        throw std::invalid_argument("required_transmitters: target must be in (0,1)");
    if (block_size < 1) throw std::invalid_argument("required_transmitters: block size must be >= 1");

    std::int64_t hi = block_size;
    while (link_cascade_prob(hi, reception_prob, block_size) < target) {
        if (hi > (std::int64_t{1} << 50))
            throw std::overflow_error("required_transmitters: search exceeded 2^50");
        hi *= 2;
    }
    std::int64_t lo = hi / 2; // either < block_size or known to fail
    while (lo + 1 < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (mid < block_size || link_cascade_prob(mid, reception_prob, block_size) < target)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

/// Probability that every link of a path cascades in the same burst.
inline double path_cascade_prob(const std::vector<double>& per_link) {
    double prod = 1.0;
    for (double p : per_link) {
        if (!(p >= 0.0) || p > 1.0)
            throw std::invalid_argument("path_cascade_prob: probabilities must be in [0,1]");
        prod *= p;
    }
    return prod;
}

/// Probability that more than half of an n-qubit encoded block arrives,
/// the no-cloning requirement for direct transmission of encoded states.
inline double direct_tx_success(const CodeParams& code, double reception_prob) {
    code.validate();
    return binom_tail(code.n, reception_prob, code.majority_threshold());
}

/// Minimal reception probability (at 1e-4 granularity) for which direct
/// transmission meets the target success rate.
inline double alpha_threshold(const CodeParams& code, double target) {
    code.validate();
    if (!(target > 0.0) || !(target < 1.0))
        throw std::invalid_argument("alpha_threshold: target must be in (0,1)");
    // Binary search on the 1e-4 grid; direct_tx_success is monotone in P_r
    // and reaches 1.0 at P_r = 1, so a solution always exists.
    std::int64_t lo = 0, hi = 10'000;
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (direct_tx_success(code, static_cast<double>(mid) / 10'000.0) >= target)
            hi = mid;
        else
            lo = mid + 1;
    }
    return static_cast<double>(lo) / 10'000.0;
}

/// Per-block success target equivalent to meeting `target` jointly across
/// `hops` independent block operations: target^(1/hops).
inline double path_adjusted_target(double target, std::size_t hops) {
    if (!(target > 0.0) || !(target < 1.0))
        throw std::invalid_argument("path_adjusted_target: target must be in (0,1)");
    if (hops < 1) throw std::invalid_argument("path_adjusted_target: hops must be >= 1");
    return std::pow(target, 1.0 / static_cast<double>(hops));
}

/// Direct-transmission threshold with the target spread across a path of
/// `hops` block operations; hops = 1 is the per-block form.
inline double alpha_threshold(const CodeParams& code, double target, std::size_t hops) {
    return alpha_threshold(code, path_adjusted_target(target, hops));
}

enum class Regime {
    LowProbability,
    HighProbability,
    HighProbabilityExtended,
    VeryHighProbability,
    Perfect,
};

inline const char* to_string(Regime r) {
    switch (r) {
    case Regime::LowProbability: return "low-probability";
    case Regime::HighProbability: return "high-probability";
    case Regime::HighProbabilityExtended: return "high-probability-extended";
    case Regime::VeryHighProbability: return "very-high-probability";
    case Regime::Perfect: return "perfect";
    }
    return "?";
}

struct RegimeParams {
    CodeParams code;
    double alpha = 0.0;        // direct-transmission boundary, in (0.5, 1-epsilon)
    double epsilon = 1e-2;     // width of the "perfect" band at the top
    double link_target = 0.99; // per-link cascade target
    double direct_target = 0.999;

    void validate() const {
        code.validate();
        if (!(epsilon > 0.0) || !(epsilon < 0.5))
            throw std::invalid_argument("regime epsilon must be in (0, 0.5)");
        if (!(alpha > 0.5) || !(alpha < 1.0 - epsilon))
            throw std::invalid_argument("regime alpha must satisfy 0.5 < alpha < 1 - epsilon");
    }

    /// Params with alpha computed from the code's direct-transmission
    /// threshold at the given target.
    static RegimeParams for_code(const CodeParams& code, double epsilon = 1e-2,
                                 double link_target = 0.99, double direct_target = 0.999) {
        RegimeParams p;
        p.code = code;
        p.epsilon = epsilon;
        p.link_target = link_target;
        p.direct_target = direct_target;
        p.alpha = alpha_threshold(code, direct_target);
        p.validate();
        return p;
    }
};

/// Classifies a link's reception probability into one of the five regimes.
/// Boundaries are lower-inclusive except the lowest:
///   [0, 2n/N_T) low, [2n/N_T, 0.5) high, [0.5, alpha] extended,
///   (alpha, 1-eps) very high, [1-eps, 1] perfect.
inline Regime classify_regime(const Link& link, const RegimeParams& params) {
    link.validate();
    params.validate();
    const double low_bound =
        2.0 * static_cast<double>(params.code.n) / static_cast<double>(link.transmitters);
    if (!(low_bound < 0.5))
        throw std::invalid_argument(
            "regime boundaries out of order: 2n/N_T must be below 0.5 (need N_T > 4n)");
    const double p = link.reception_prob;
    if (p < low_bound) return Regime::LowProbability;
    if (p < 0.5) return Regime::HighProbability;
    if (p <= params.alpha) return Regime::HighProbabilityExtended;
    if (p < 1.0 - params.epsilon) return Regime::VeryHighProbability;
    return Regime::Perfect;
}

} // namespace rtl::prob
