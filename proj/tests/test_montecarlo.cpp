#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rtl/montecarlo.hpp"
#include "test_util.hpp"

using namespace rtl;
using namespace rtl::mc;

namespace {

bool results_equal(const SimResult& a, const SimResult& b) {
    return a.bursts == b.bursts && a.per_link_success_count == b.per_link_success_count &&
           a.cascade_count == b.cascade_count &&
           a.success_count_histogram == b.success_count_histogram &&
           a.per_link_success_rate == b.per_link_success_rate &&
           a.path_cascade_rate == b.path_cascade_rate &&
           a.mean_success_count == b.mean_success_count;
}

SimConfig paper_link_config(std::uint64_t bursts, std::uint64_t seed) {
    SimConfig c;
    c.path.links = {Link{LinkKind::SenderReceiver, 1, 0.01, 1460}};
    c.code = CodeParams::steane();
    c.bursts = bursts;
    c.seed = seed;
    return c;
}

} // namespace

TEST_CASE("simulation is reproducible bit for bit") {
    SimConfig c = paper_link_config(5000, 12345);
    auto a = simulate(c);
    auto b = simulate(c);
    CHECK(results_equal(a, b));
}

TEST_CASE("simulation is independent of worker count") {
    SimConfig c;
    c.path.links = {Link{LinkKind::SenderReceiver, 1, 0.3, 40},
                    Link{LinkKind::MeetInTheMiddle, 2, 0.5, 30},
                    Link{LinkKind::MidpointSource, 1, 0.9, 12}};
    c.code = CodeParams{7, 1, 3};
    c.bursts = 20'000;
    c.seed = 99;
    auto w1 = simulate(c, 1);
    auto w2 = simulate(c, 2);
    auto w5 = simulate(c, 5);
    CHECK(results_equal(w1, w2));
    CHECK(results_equal(w1, w5));
}

TEST_CASE("certain reception cascades every burst") {
    SimConfig c;
    c.path.links = {Link{LinkKind::SenderReceiver, 1, 1.0, 7},
                    Link{LinkKind::ReceiverSender, 1, 1.0, 9}};
    c.code = CodeParams::steane();
    c.bursts = 777;
    c.seed = 3;
    auto r = simulate(c);
    CHECK(r.path_cascade_rate == 1.0);
    CHECK(r.per_link_success_rate[0] == 1.0);
    CHECK(r.per_link_success_rate[1] == 1.0);
    CHECK(r.success_count_histogram[0].at(7) == 777);
}

TEST_CASE("histogram masses sum to the burst count") {
    SimConfig c = paper_link_config(4000, 7);
    auto r = simulate(c);
    std::uint64_t mass = 0;
    for (const auto& [value, count] : r.success_count_histogram[0]) mass += count;
    CHECK(mass == c.bursts);
}

TEST_CASE("empirical rates agree with the binomial calculators") {
    SimConfig c = paper_link_config(30'000, 20240811);
    auto r = simulate(c);

    const double analytic = prob::link_cascade_prob(1460, 0.01, 7);
    const double se = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(c.bursts));
    CHECK(std::abs(r.per_link_success_rate[0] - analytic) < 3.0 * se);

    const double mean = 1460 * 0.01;
    const double sd = std::sqrt(1460 * 0.01 * 0.99);
    CHECK(std::abs(r.mean_success_count[0] - mean) <
          3.0 * sd / std::sqrt(static_cast<double>(c.bursts)));
}

TEST_CASE("path rate matches the product of per-link rates") {
    SimConfig c;
    c.path.links = {Link{LinkKind::SenderReceiver, 1, 0.25, 40},
                    Link{LinkKind::SenderReceiver, 1, 0.30, 36},
                    Link{LinkKind::SenderReceiver, 1, 0.40, 28}};
    c.code = CodeParams::steane();
    c.bursts = 60'000;
    c.seed = 17;
    auto r = simulate(c);
    double product = 1.0;
    double analytic = 1.0;
    for (std::size_t j = 0; j < 3; ++j) {
        product *= r.per_link_success_rate[j];
        analytic *= prob::link_cascade_prob(c.path.links[j].transmitters,
                                            c.path.links[j].reception_prob, c.code.n);
    }
    const double se = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(c.bursts));
    CHECK(std::abs(r.path_cascade_rate - product) < 4.0 * se);
    CHECK(std::abs(r.path_cascade_rate - analytic) < 4.0 * se);
}

TEST_CASE("large transmitter counts use the inverse-CDF sampler deterministically") {
    SimConfig c;
    c.path.links = {Link{LinkKind::SenderReceiver, 1, 0.001, 20'000}};
    c.code = CodeParams::steane();
    c.bursts = 400;
    c.seed = 5;
    auto a = simulate(c, 1);
    auto b = simulate(c, 3);
    CHECK(results_equal(a, b));

    const double analytic = prob::link_cascade_prob(20'000, 0.001, 7);
    const double se = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(c.bursts));
    CHECK(std::abs(a.per_link_success_rate[0] - analytic) < 4.0 * se + 1e-9);
    // Mean of the draws should track N_T * P_r = 20.
    CHECK(std::abs(a.mean_success_count[0] - 20.0) < 1.0);
}

TEST_CASE("config validation") {
    SimConfig c;
    c.code = CodeParams::steane();
    c.bursts = 0;
    c.path.links = {Link{LinkKind::SenderReceiver, 1, 0.5, 10}};
    CHECK_THROWS_AS(simulate(c), std::invalid_argument);
    c.bursts = 1;
    c.path.links.clear();
    CHECK_THROWS_AS(simulate(c), std::invalid_argument);
}
