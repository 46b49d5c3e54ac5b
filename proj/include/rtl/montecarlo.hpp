// Stochastic burst simulator: an independent check on the binomial
// calculators. Every (burst, link) pair draws from its own counter-derived
// random substream, so results are bit-identical regardless of how bursts
// are partitioned across workers.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "rtl/model.hpp"
#include "rtl/probability.hpp"
#include "rtl/worker_pool.hpp"

namespace rtl::mc {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline SplitMix64 substream(std::uint64_t seed, std::uint64_t burst, std::uint64_t link) {
    return SplitMix64{mix64(seed ^ mix64(burst ^ mix64(link)))};
}

// One binomial draw. Per-trial Bernoulli counting up to 10^4 trials; above
// that a single uniform is inverted through the exact CDF.
inline std::int64_t draw_binomial(SplitMix64& rng, std::int64_t trials, double p) {
    if (trials <= 10'000) {
        std::int64_t count = 0;
        for (std::int64_t i = 0; i < trials; ++i)
            if (rng.uniform01() < p) ++count;
        return count;
    }
    const double u = rng.uniform01();
    std::int64_t lo = 0, hi = trials;
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        double cdf = 1.0 - prob::binom_tail(trials, p, mid + 1);
        if (cdf >= u) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

} // namespace detail

struct SimConfig {
    Path path;
    CodeParams code;
    std::uint64_t bursts = 1;
    std::uint64_t seed = 0;

    void validate() const {
        path.validate();
        code.validate();
        if (bursts < 1) throw std::invalid_argument("simulation requires at least one burst");
    }
};

struct SimResult {
    std::uint64_t bursts = 0;
    std::vector<std::uint64_t> per_link_success_count;
    std::vector<double> per_link_success_rate;
    std::vector<double> per_link_rate_se;
    std::uint64_t cascade_count = 0;
    double path_cascade_rate = 0.0;
    double path_rate_se = 0.0;
    // Per link: success-count value -> number of bursts observing it.
    std::vector<std::map<std::int64_t, std::uint64_t>> success_count_histogram;
    std::vector<double> mean_success_count;
    std::vector<double> mean_success_count_se;
};

inline SimResult simulate(const SimConfig& config, unsigned workers = 0) {
    config.validate();
    const std::size_t h = config.path.hops();
    const std::int64_t n = config.code.n;

    struct Local {
        std::vector<std::uint64_t> link_success;
        std::uint64_t cascades = 0;
        std::vector<std::map<std::int64_t, std::uint64_t>> hist;
    };
    const unsigned nworkers = resolve_workers(workers);
    std::vector<Local> locals(nworkers);
    for (Local& l : locals) {
        l.link_success.assign(h, 0);
        l.hist.assign(h, {});
    }

    parallel_chunks(config.bursts, nworkers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        Local& loc = locals[w];
        for (std::uint64_t burst = begin; burst < end; ++burst) {
            bool all_ok = true;
            for (std::size_t j = 0; j < h; ++j) {
                const Link& link = config.path.links[j];
                auto rng = detail::substream(config.seed, burst, j);
                std::int64_t successes =
                    detail::draw_binomial(rng, link.transmitters, link.reception_prob);
                ++loc.hist[j][successes];
                if (successes >= n) ++loc.link_success[j];
                else all_ok = false;
            }
            if (all_ok) ++loc.cascades;
        }
    });

    SimResult r;
    r.bursts = config.bursts;
    r.per_link_success_count.assign(h, 0);
    r.success_count_histogram.assign(h, {});
    for (const Local& loc : locals) {
        r.cascade_count += loc.cascades;
        for (std::size_t j = 0; j < h; ++j) {
            r.per_link_success_count[j] += loc.link_success[j];
            for (const auto& [value, count] : loc.hist[j])
                r.success_count_histogram[j][value] += count;
        }
    }

    const double b = static_cast<double>(config.bursts);
    r.per_link_success_rate.resize(h);
    r.per_link_rate_se.resize(h);
    r.mean_success_count.resize(h);
    r.mean_success_count_se.resize(h);
    for (std::size_t j = 0; j < h; ++j) {
        const double rate = static_cast<double>(r.per_link_success_count[j]) / b;
        r.per_link_success_rate[j] = rate;
        r.per_link_rate_se[j] = std::sqrt(rate * (1.0 - rate) / b);
        double sum = 0.0, sumsq = 0.0;
        for (const auto& [value, count] : r.success_count_histogram[j]) {
            const double v = static_cast<double>(value);
            const double c = static_cast<double>(count);
            sum += v * c;
            sumsq += v * v * c;
        }
        const double mean = sum / b;
        r.mean_success_count[j] = mean;
        const double var = sumsq / b - mean * mean;
        r.mean_success_count_se[j] = std::sqrt((var > 0.0 ? var : 0.0) / b);
    }
    r.path_cascade_rate = static_cast<double>(r.cascade_count) / b;
    r.path_rate_se = std::sqrt(r.path_cascade_rate * (1.0 - r.path_cascade_rate) / b);
    return r;
}

} // namespace rtl::mc
