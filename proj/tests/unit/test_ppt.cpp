#include "doctest.h"
#include "oracles.hpp"

#include "irt/errors.hpp"
#include "irt/ppt.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace irt;

namespace {

std::vector<double> random_series(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<double> x(n);
    for (auto& v : x) v = d(rng);
    return x;
}

// wrapped difference in (-pi, pi]
double wrap(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

}  // namespace

TEST_CASE("constant signal is DC only") {
    const std::vector<double> x(16, 2.5);
    const auto f = dft_real(x);
    CHECK(std::abs(f[0] - 2.5) < 1e-12);
    for (std::size_t u = 1; u < f.size(); ++u) CHECK(std::abs(f[u]) < 1e-12);
}

TEST_CASE("cosine line") {
    const std::size_t n = 64, u0 = 5;
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = std::cos(2.0 * std::numbers::pi * double(k * u0) / double(n));
    for (auto method : {DftMethod::fft, DftMethod::direct}) {
        const auto f = dft_real(x, method);
        REQUIRE(f.size() == n / 2 + 1);
        CHECK(std::abs(std::abs(f[u0]) - 0.5) < 1e-9);
        CHECK(std::abs(phase_of(f[u0])) < 1e-9);
        for (std::size_t u = 0; u < f.size(); ++u)
            if (u != u0) CHECK(std::abs(f[u]) < 1e-12);
    }
}

TEST_CASE("both paths agree with long double summation") {
    for (std::size_t n : {8u, 64u, 97u, 100u, 1781u}) {
        const auto x = random_series(n, n);
        const auto ref = oracle::dft(x);
        for (auto method : {DftMethod::automatic, DftMethod::fft, DftMethod::direct}) {
            const auto f = dft_real(x, method);
            double scale = 0.0;
            for (const auto& c : ref) scale = std::max(scale, static_cast<double>(std::abs(c)));
            for (std::size_t u = 0; u < f.size(); ++u) {
                const std::complex<double> r(static_cast<double>(ref[u].real()), static_cast<double>(ref[u].imag()));
                CHECK(std::abs(f[u] - r) < 1e-12 * scale);
            }
        }
        const auto full = dft_direct_full(x);
        CHECK(full.size() == n);
    }
}

TEST_CASE("parseval under 1/N normalization") {
    for (std::size_t n : {64u, 65u, 1000u}) {
        const auto x = random_series(n, 3 + n);
        const auto f = dft_real(x);
        double spec = std::norm(f[0]);
        for (std::size_t u = 1; u < f.size(); ++u) spec += (2 * u == n ? 1.0 : 2.0) * std::norm(f[u]);
        double energy = 0.0;
        for (double v : x) energy += v * v;
        energy /= static_cast<double>(n);
        CHECK(std::abs(spec - energy) < 1e-9 * energy);
    }
}

TEST_CASE("time shift multiplies by a linear phase") {
    const std::size_t n = 128, s = 7;
    const auto x = random_series(n, 1);
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) y[k] = x[(k + n - s) % n];
    const auto fx = dft_real(x), fy = dft_real(y);
    for (std::size_t u = 1; u < fx.size(); ++u) {
        CHECK(std::abs(std::abs(fy[u]) - std::abs(fx[u])) < 1e-9);
        const double expect = -2.0 * std::numbers::pi * double(u * s) / double(n);
        CHECK(std::abs(wrap(phase_of(fy[u]) - phase_of(fx[u]) - expect)) < 1e-9);
    }
}

TEST_CASE("even signal has real spectrum") {
    const std::size_t n = 50;
    auto x = random_series(n, 4);
    for (std::size_t k = 1; k < n; ++k) x[n - k] = x[k];
    for (const auto& c : dft_real(x)) {
        const double p = phase_of(c);
        CHECK(std::min(std::abs(p), std::abs(std::abs(p) - std::numbers::pi)) < 1e-9);
    }
    CHECK(phase_of({-1.0, -0.0}) == doctest::Approx(std::numbers::pi));
    CHECK(phase_of({0.0, 0.0}) == 0.0);
}

TEST_CASE("sequence transform") {
    std::vector<Frame> frames;
    std::vector<double> t;
    for (std::size_t k = 0; k < 10; ++k) {
        Frame f(3, 2, 1.0);
        f(1, 2) = std::cos(2.0 * std::numbers::pi * double(k) * 2.0 / 10.0);
        frames.push_back(f);
        t.push_back(0.1 * double(k + 1));
    }
    const auto sp = ppt_transform(Sequence(frames, AxisKind::time, t));
    REQUIRE(sp.amplitude.n_frames() == 6);
    CHECK(sp.amplitude.axis_kind() == AxisKind::frequency);
    CHECK(sp.frequencies[1] == doctest::Approx(1.0));
    CHECK(sp.amplitude.frame(0)(0, 0) == doctest::Approx(1.0));
    CHECK(sp.amplitude.frame(2)(1, 2) == doctest::Approx(0.5));
    CHECK(sp.amplitude.frame(3)(0, 0) < 1e-12);
    CHECK(sp.includes_dc);

    CHECK_THROWS_AS(ppt_transform(Sequence(frames, AxisKind::coefficient, t)), ConfigError);
    t[5] += 0.03;
    CHECK_THROWS_AS(ppt_transform(Sequence(frames, AxisKind::time, t)), DataError);
}
