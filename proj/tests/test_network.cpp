#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sawkit/network.hpp"
#include "test_util.hpp"

using namespace sawkit;
using sawkit::testutil::uniform_grid;

namespace {
constexpr double kPi = 3.14159265358979323846;

FrequencySweep make_sweep(std::vector<double> freqs, std::vector<std::complex<double>> s) {
    FrequencySweep out;
    out.freqs = std::move(freqs);
    out.s11 = std::move(s);
    return out;
}
}  // namespace

TEST_CASE("s_to_y trivial points") {
    const auto y = s_to_y(make_sweep({1e9, 2e9, 3e9}, {{0, 0}, {1, 0}, {0, 1}}));
    CHECK(y.y[0] == std::complex<double>(0.02, 0.0));  // matched load
    CHECK(std::abs(y.y[1]) == doctest::Approx(0.0));   // open circuit
    CHECK(y.y[2].real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(y.y[2].imag() == doctest::Approx(-0.02));    // (1-j)/(1+j) = -j
}

TEST_CASE("y_to_s trivial points") {
    AdmittanceSweep y;
    y.freqs = {1e9, 2e9};
    y.y = {{0.02, 0.0}, {0.0, 0.0}};
    const auto s = y_to_s(y);
    CHECK(std::abs(s.s11[0]) == doctest::Approx(0.0));
    CHECK(s.s11[1] == std::complex<double>(1.0, 0.0));
}

TEST_CASE("singular conversions are reported with frequency") {
    CHECK_THROWS_AS(s_to_y(make_sweep({1e9}, {{-1.0, 0.0}})), NumericalError);
    AdmittanceSweep y;
    y.freqs = {1e9};
    y.y = {{-0.02, 0.0}};  // z_ref * Y = -1 exactly
    CHECK_THROWS_AS(y_to_s(y), NumericalError);
}

TEST_CASE("round trip recovers random passive admittances") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> re(1e-4, 0.1), im(-0.05, 0.05);
    AdmittanceSweep y;
    y.freqs = uniform_grid(1e9, 2e9, 200);
    for (std::size_t i = 0; i < 200; ++i)
        y.y.emplace_back(re(rng), im(rng));
    const auto back = s_to_y(y_to_s(y));
    for (std::size_t i = 0; i < 200; ++i)
        CHECK(std::abs(back.y[i] - y.y[i]) / std::abs(y.y[i]) < 1e-12);
}

TEST_CASE("composition the other way is also the identity") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> mag(0.0, 0.99), ang(-kPi, kPi);
    FrequencySweep s;
    s.freqs = uniform_grid(1e9, 2e9, 100);
    for (std::size_t i = 0; i < 100; ++i)
        s.s11.push_back(std::polar(mag(rng), ang(rng)));
    const auto back = y_to_s(s_to_y(s));
    for (std::size_t i = 0; i < 100; ++i)
        CHECK(std::abs(back.s11[i] - s.s11[i]) < 1e-12);
}

TEST_CASE("passivity preserved by the conversion") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> mag(0.0, 1.0), ang(-kPi, kPi);
    FrequencySweep s;
    s.freqs = uniform_grid(1e9, 2e9, 500);
    for (std::size_t i = 0; i < 500; ++i)
        s.s11.push_back(std::polar(mag(rng), ang(rng)));
    const auto y = s_to_y(s);
    for (const auto& v : y.y)
        CHECK(v.real() >= -1e-12);
}

TEST_CASE("group delay of a pure 1 ns delay line") {
    const double t0 = 1e-9;
    FrequencySweep s;
    s.freqs = uniform_grid(1e9, 1.1e9, 101);
    for (double f : s.freqs)
        s.s11.push_back(std::exp(std::complex<double>(0.0, -2.0 * kPi * f * t0)));
    for (const auto& [f, tau] : group_delay(s))
        CHECK(std::abs(tau - t0) < 1e-15);
}

TEST_CASE("group delay of a constant is zero") {
    FrequencySweep s;
    s.freqs = uniform_grid(1e9, 2e9, 11);
    s.s11.assign(11, {0.3, 0.4});
    for (const auto& [f, tau] : group_delay(s))
        CHECK(tau == 0.0);
}

TEST_CASE("group delay requires 3 points") {
    FrequencySweep s;
    s.freqs = {1e9, 2e9};
    s.s11 = {{0.1, 0}, {0.1, 0}};
    CHECK_THROWS_AS(group_delay(s), std::invalid_argument);
}

TEST_CASE("group delay is linear in an added delay") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> mag(0.1, 0.9), ang(-0.2, 0.2);
    FrequencySweep s;
    s.freqs = uniform_grid(1e9, 1.01e9, 51);
    std::complex<double> v = std::polar(0.5, 0.1);
    for (std::size_t i = 0; i < 51; ++i) {
        v *= std::polar(1.0, ang(rng) * 0.01);  // slow phase drift, no wraps
        s.s11.push_back(v);
    }
    const auto base = group_delay(s);

    const double t0 = 2.5e-9;
    FrequencySweep delayed = s;
    for (std::size_t i = 0; i < s.size(); ++i)
        delayed.s11[i] *= std::exp(std::complex<double>(0.0, -2.0 * kPi * s.freqs[i] * t0));
    const auto shifted = group_delay(delayed);
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(std::abs(shifted[i].second - base[i].second - t0) < 1e-15);
}

TEST_CASE("mBVD group delay matches a dense finite-difference oracle") {
    const auto model = sawkit::testutil::device_d_model(500.0, 7.5, 2.0);
    const auto grid = uniform_grid(6.3e9, 7.3e9, 401);
    const auto s = y_to_s(admittance(model, grid));
    const auto tau = group_delay(s);

    // Oracle: phase derivative on a 10x denser grid around each point.
    const auto dense = uniform_grid(6.3e9, 7.3e9, 4001);
    const auto s_dense = y_to_s(admittance(model, dense));
    const auto tau_dense = group_delay(s_dense);

    for (std::size_t i = 5; i + 5 < tau.size(); ++i) {
        const double oracle = tau_dense[i * 10].second;
        if (std::abs(oracle) < 1e-12)
            continue;  // relative comparison meaningless through zero crossings
        CHECK(std::abs(tau[i].second - oracle) / std::abs(oracle) < 0.005);
    }
}
