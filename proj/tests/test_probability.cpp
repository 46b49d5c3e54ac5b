#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <random>

#include "rtl/probability.hpp"

using namespace rtl;
using namespace rtl::prob;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

// Exact big-rational tail oracle. The double p converts to cpp_rational
// without rounding, so this is the mathematically exact tail of the
// binomial the implementation claims to approximate.
double exact_tail(int n, double p, int k_min) {
    if (k_min <= 0) return 1.0;
    if (k_min > n) return 0.0;
    const cpp_rational pr(p);
    const cpp_rational q = cpp_rational(1) - pr;
    cpp_rational sum = 0;
    for (int j = k_min; j <= n; ++j) {
        cpp_int coeff = 1;
        for (int i = 1; i <= j; ++i) coeff = coeff * (n - i + 1) / i;
        cpp_rational term(coeff);
        for (int i = 0; i < j; ++i) term *= pr;
        for (int i = 0; i < n - j; ++i) term *= q;
        sum += term;
    }
    return sum.convert_to<double>();
}

} // namespace

TEST_CASE("binomial tail basics") {
    CHECK(binom_tail(7, 0.5, 4) == Catch::Approx(0.5).margin(1e-12));
    CHECK(binom_tail(100, 0.3, 0) == 1.0);
    CHECK(binom_tail(100, 0.3, 101) == 0.0);
    CHECK(binom_tail(10, 0.0, 1) == 0.0);
    CHECK(binom_tail(10, 0.0, 0) == 1.0);
    CHECK(binom_tail(10, 1.0, 10) == 1.0);
    CHECK(binom_tail(1460, 0.01, 7) >= 0.99);
    CHECK_THROWS_AS(binom_tail(10, -0.1, 3), std::invalid_argument);
    CHECK_THROWS_AS(binom_tail(10, 1.1, 3), std::invalid_argument);
    CHECK_THROWS_AS(binom_tail(10, 0.5, 12), std::invalid_argument);
    CHECK_THROWS_AS(binom_tail(-1, 0.5, 0), std::invalid_argument);
}

TEST_CASE("binomial tail agrees with the exact big-rational oracle for n <= 25") {
    std::mt19937_64 rng(2025);
    std::uniform_int_distribution<int> n_dist(1, 25);
    const double ps[] = {0.001, 0.01, 0.1, 0.27, 0.5, 0.79, 0.93, 0.999};
    for (int i = 0; i < 400; ++i) {
        int n = n_dist(rng);
        double p = ps[std::uniform_int_distribution<int>(0, 7)(rng)];
        int k = std::uniform_int_distribution<int>(0, n + 1)(rng);
        double impl = binom_tail(n, p, k);
        double oracle = exact_tail(n, p, k);
        INFO("n=" << n << " p=" << p << " k=" << k);
        CHECK(std::abs(impl - oracle) < 1e-12);
    }
}

TEST_CASE("link cascade probability") {
    CHECK(link_cascade_prob(7, 1.0, 7) == 1.0);
    CHECK(link_cascade_prob(1460, 0.01, 7) == Catch::Approx(0.9904443840161683).margin(1e-9));
    CHECK(link_cascade_prob(6, 0.9, 7) == 0.0); // fewer transmitters than block size
    CHECK_THROWS_AS(link_cascade_prob(0, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(link_cascade_prob(10, 0.5, 0), std::invalid_argument);

    SECTION("monotone in transmitters and in reception probability") {
        double prev = 0.0;
        for (std::int64_t nt = 7; nt <= 2000; nt += 137) {
            double v = link_cascade_prob(nt, 0.01, 7);
            CHECK(v >= prev - 1e-15);
            prev = v;
        }
        prev = 0.0;
        for (double p = 0.001; p < 0.06; p += 0.003) {
            double v = link_cascade_prob(1000, p, 7);
            CHECK(v >= prev - 1e-15);
            prev = v;
        }
    }
}

TEST_CASE("required transmitters") {
    const std::int64_t nt = required_transmitters(0.01, 7, 0.99);
    CHECK(nt == 1453); // exact computed value; roughly 1460 with a couple % slack
    CHECK(nt >= 1431);
    CHECK(nt <= 1489);
    CHECK(link_cascade_prob(nt, 0.01, 7) >= 0.99);
    CHECK(link_cascade_prob(nt - 1, 0.01, 7) < 0.99);

    CHECK(required_transmitters(1.0 - 1e-12, 7, 0.99) == 7);
    CHECK(required_transmitters(0.5, 1, 0.5) == 1);

    SECTION("monotone non-increasing in reception probability") {
        std::int64_t prev = INT64_MAX;
        for (double p : {0.005, 0.01, 0.02, 0.05, 0.1}) {
            std::int64_t v = required_transmitters(p, 7, 0.99);
            CHECK(v <= prev);
            prev = v;
        }
    }
    CHECK_THROWS_AS(required_transmitters(0.0, 7, 0.99), std::invalid_argument);
    CHECK_THROWS_AS(required_transmitters(1.0, 7, 0.99), std::invalid_argument);
    CHECK_THROWS_AS(required_transmitters(0.5, 7, 1.0), std::invalid_argument);
}

TEST_CASE("path cascade probability") {
    std::vector<double> fifty(50, 0.99);
    double p = path_cascade_prob(fifty);
    CHECK(p == Catch::Approx(0.6050060671375364).margin(1e-12));
    CHECK(std::abs(p - 0.6050) < 1e-4);
    CHECK(path_cascade_prob({1.0, 1.0, 1.0}) == 1.0);
    CHECK(path_cascade_prob({0.37}) == 0.37);
    CHECK_THROWS_AS(path_cascade_prob({1.2}), std::invalid_argument);
}

TEST_CASE("direct transmission success") {
    CHECK(direct_tx_success(CodeParams::steane(), 0.93) >= 0.999);
    CHECK(direct_tx_success(CodeParams::golay(), 0.79) >= 0.999);
    CHECK(direct_tx_success(CodeParams::steane(), 1.0) == 1.0);
    // A fair coin cannot reach majority more than half the time (odd n).
    for (const CodeParams& code : {CodeParams::steane(), CodeParams::golay()})
        CHECK(direct_tx_success(code, 0.5) <= 0.5 + 1e-12);
    // Exact-oracle cross-check on the displayed sums.
    for (double pr : {0.79, 0.9, 0.93}) {
        CHECK(std::abs(direct_tx_success(CodeParams::steane(), pr) - exact_tail(7, pr, 4)) < 1e-12);
        CHECK(std::abs(direct_tx_success(CodeParams::golay(), pr) - exact_tail(23, pr, 12)) < 1e-12);
    }
}

TEST_CASE("alpha threshold") {
    const double steane = alpha_threshold(CodeParams::steane(), 0.999);
    const double golay = alpha_threshold(CodeParams::golay(), 0.999);
    // Minimal value on the 1e-4 grid meeting the target.
    CHECK(steane == Catch::Approx(0.9234).margin(1e-12));
    CHECK(golay == Catch::Approx(0.7889).margin(1e-12));
    CHECK(direct_tx_success(CodeParams::steane(), steane) >= 0.999);
    CHECK(direct_tx_success(CodeParams::steane(), steane - 1e-4) < 0.999);
    CHECK(direct_tx_success(CodeParams::golay(), golay) >= 0.999);
    CHECK(direct_tx_success(CodeParams::golay(), golay - 1e-4) < 0.999);
    // Larger blocks tolerate lower reception probability.
    CHECK(golay < steane);
    CHECK(alpha_threshold(CodeParams{1, 1, 1}, 0.999) == Catch::Approx(0.999).margin(1e-12));
    CHECK_THROWS_AS(alpha_threshold(CodeParams::steane(), 1.0), std::invalid_argument);

    SECTION("path-adjusted target tightens the per-block requirement") {
        CHECK(path_adjusted_target(0.999, 1) == 0.999);
        CHECK(path_adjusted_target(0.999, 50) ==
              Catch::Approx(std::pow(0.999, 1.0 / 50.0)).margin(1e-15));
        CHECK(alpha_threshold(CodeParams::steane(), 0.999, 1) == steane);
        CHECK(alpha_threshold(CodeParams::steane(), 0.999, 50) > steane);
        CHECK_THROWS_AS(path_adjusted_target(0.999, 0), std::invalid_argument);
    }
}

TEST_CASE("regime classification") {
    RegimeParams params;
    params.code = CodeParams::steane();
    params.alpha = 0.9;
    params.epsilon = 0.01;

    auto link = [](double pr, std::int64_t nt) {
        return Link{LinkKind::SenderReceiver, Rational(1), pr, nt};
    };

    CHECK(classify_regime(link(0.001, 1460), params) == Regime::LowProbability);
    CHECK(classify_regime(link(0.01, 1460), params) == Regime::HighProbability);
    CHECK(classify_regime(link(0.3, 1460), params) == Regime::HighProbability);
    CHECK(classify_regime(link(0.6, 1460), params) == Regime::HighProbabilityExtended);
    CHECK(classify_regime(link(0.95, 1460), params) == Regime::VeryHighProbability);
    CHECK(classify_regime(link(1.0, 1460), params) == Regime::Perfect);

    SECTION("boundary membership is lower-inclusive except the lowest") {
        CHECK(classify_regime(link(2.0 * 7 / 1400, 1400), params) == Regime::HighProbability);
        CHECK(classify_regime(link(0.5, 1460), params) == Regime::HighProbabilityExtended);
        CHECK(classify_regime(link(0.9, 1460), params) == Regime::HighProbabilityExtended);
        CHECK(classify_regime(link(0.99, 1460), params) == Regime::Perfect); // 1 - epsilon
        CHECK(classify_regime(link(0.98999, 1460), params) == Regime::VeryHighProbability);
    }
    SECTION("inconsistent parameterizations are rejected") {
        CHECK_THROWS_AS(classify_regime(link(0.5, 20), params), std::invalid_argument);
        RegimeParams bad = params;
        bad.alpha = 0.4;
        CHECK_THROWS_AS(classify_regime(link(0.5, 1460), bad), std::invalid_argument);
        bad.alpha = 0.995; // >= 1 - epsilon
        CHECK_THROWS_AS(classify_regime(link(0.5, 1460), bad), std::invalid_argument);
        bad = params;
        bad.epsilon = 0.6;
        CHECK_THROWS_AS(classify_regime(link(0.5, 1460), bad), std::invalid_argument);
    }
    SECTION("every probability lands in exactly one regime") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(1e-6, 1.0);
        for (int i = 0; i < 500; ++i) CHECK_NOTHROW(classify_regime(link(u(rng), 1460), params));
    }
    SECTION("derived params compute alpha from the code") {
        auto derived = RegimeParams::for_code(CodeParams::steane());
        CHECK(derived.alpha == Catch::Approx(0.9234).margin(1e-12));
    }
}
