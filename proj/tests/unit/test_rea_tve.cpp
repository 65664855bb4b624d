#include "doctest.h"
#include "oracles.hpp"

#include "irt/errors.hpp"
#include "irt/rea_tve.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace irt;

namespace {

SegmentedImage random_labels(std::size_t w, std::size_t h, std::size_t phi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(0, static_cast<int>(phi) - 1);
    SegmentedImage s;
    s.width = w;
    s.height = h;
    s.phi = phi;
    for (std::size_t i = 0; i < w * h; ++i) s.labels.push_back(static_cast<PhaseLabel>(d(rng)));
    return s;
}

TGICurve step_curve(PhaseLabel phase, std::size_t len, std::size_t step) {
    TGICurve c;
    c.phase = phase;
    for (std::size_t j = 0; j <= len; ++j) {
        c.sizes.push_back(j + 2);
        c.tgi.push_back(0.0);
    }
    for (std::size_t j = 0; j < len; ++j) c.dtgi.push_back(j < step ? -1.0 : 0.0);
    return c;
}

Frame noise_frame(std::size_t w, std::size_t h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    Frame f(w, h);
    for (auto& v : f.values()) v = n(rng);
    return f;
}

}  // namespace

TEST_CASE("cv guard cases") {
    SegmentedImage s;
    s.width = s.height = 10;
    s.phi = 2;
    s.labels.assign(100, 0);
    SamplingPlan plan{SamplingStrategy::random, 439, 0, {2, 3, 4}};
    for (const auto& st : stage1(s, plan)) {
        for (const auto& f : st.functional) CHECK(f.cv_norm == 0.0);
    }
    const auto sat = cv_norm_from_moments(0.0, 2.0, 4, 1.0);
    CHECK(sat.saturated);
    CHECK(sat.cv_norm == doctest::Approx(1e6 / 2.0));
}

TEST_CASE("stage 1 moments equal exhaustive enumeration") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto s = random_labels(8, 8, 3, seed);
        SamplingPlan plan{SamplingStrategy::random, 439, seed, {2, 3, 4}};
        for (const auto& st : stage1(s, plan)) {
            const auto mask = s.phase_mask(st.phase);
            std::array<std::vector<double>, 3> v;
            for (std::size_t y = 0; y + st.n <= 8; ++y) {
                for (std::size_t x = 0; x + st.n <= 8; ++x) {
                    const auto r = oracle::complex_counts(oracle::sub_mask(mask, x, y, st.n));
                    v[0].push_back(static_cast<double>(r.area));
                    v[1].push_back(static_cast<double>(r.boundary));
                    v[2].push_back(static_cast<double>(r.euler));
                }
            }
            CHECK(st.k == v[0].size());
            for (std::size_t f = 0; f < 3; ++f) {
                double mean = 0.0, ss = 0.0;
                for (double x : v[f]) mean += x;
                mean /= static_cast<double>(v[f].size());
                for (double x : v[f]) ss += (x - mean) * (x - mean);
                const double sd = std::sqrt(ss / static_cast<double>(v[f].size()));
                CHECK(st.functional[f].mean == doctest::Approx(mean).epsilon(1e-12));
                CHECK(st.functional[f].stddev == doctest::Approx(sd).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("checkerboard windows of side 2 are identical") {
    SegmentedImage s;
    s.width = s.height = 8;
    s.phi = 2;
    for (std::size_t y = 0; y < 8; ++y)
        for (std::size_t x = 0; x < 8; ++x) s.labels.push_back(static_cast<PhaseLabel>((x + y) % 2));
    SamplingPlan plan{SamplingStrategy::random, 439, 0, {2}};
    for (const auto& st : stage1(s, plan)) {
        CHECK(st.k == 49);
        CHECK(st.functional[0].mean == 2.0);
        CHECK(st.functional[1].mean == 8.0);
        CHECK(st.functional[2].mean == 1.0);
        for (const auto& f : st.functional) CHECK(f.stddev == 0.0);
    }
}

TEST_CASE("cv is scale invariant") {
    std::vector<double> v{3, 5, 8, 13, 2, 7};
    auto w = v;
    for (auto& x : w) x *= 2.0 * std::numbers::pi;
    CHECK(cv_norm_of(w).cv_norm == doctest::Approx(cv_norm_of(v).cv_norm).epsilon(1e-14));
}

TEST_CASE("stage 2 arithmetic") {
    std::vector<FunctionalStats> stats;
    const double tgi[] = {3, 1, 1, 1};
    for (std::size_t j = 0; j < 4; ++j) {
        FunctionalStats st;
        st.n = j + 2;
        st.functional[0].cv_norm = tgi[j];
        stats.push_back(st);
    }
    std::swap(stats[0], stats[2]);
    const auto c = stage2(stats);
    REQUIRE(c.size() == 1);
    CHECK(c[0].dtgi == std::vector<double>{-2, 0, 0});
    CHECK(tve(c) == 4.0);
}

TEST_CASE("stage 2 finite differences on random stats") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<FunctionalStats> stats;
    const std::vector<std::size_t> sizes{2, 4, 5, 9, 10};
    for (PhaseLabel p = 0; p < 3; ++p) {
        for (auto n : sizes) {
            FunctionalStats st;
            st.phase = p;
            st.n = n;
            for (auto& f : st.functional) f.cv_norm = u(rng);
            stats.push_back(st);
        }
    }
    const auto curves = stage2(stats);
    double energy = 0.0;
    for (const auto& c : curves) {
        for (std::size_t j = 0; j + 1 < sizes.size(); ++j) {
            const auto& a = stats[c.phase * sizes.size() + j];
            const auto& b = stats[c.phase * sizes.size() + j + 1];
            const double ta = a.functional[0].cv_norm + a.functional[1].cv_norm + a.functional[2].cv_norm;
            const double tb = b.functional[0].cv_norm + b.functional[1].cv_norm + b.functional[2].cv_norm;
            const double d = (tb - ta) / static_cast<double>(sizes[j + 1] - sizes[j]);
            CHECK(c.dtgi[j] == doctest::Approx(d).epsilon(1e-14));
            energy += d * d;
        }
    }
    CHECK(tve(curves) == doctest::Approx(energy).epsilon(1e-14));
    const std::vector<TGICurve> a{curves[0]}, b{curves[1], curves[2]};
    CHECK(tve(curves) == doctest::Approx(tve(a) + tve(b)).epsilon(1e-14));
}

TEST_CASE("aic onset") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> n(0.0, 0.01);
    std::vector<double> x{5, 5, 5, 0, 0, 0, 0, 0};
    for (auto& v : x) v += n(rng);
    const auto t = aic_onset(x);
    CHECK(t >= 2);
    CHECK(t <= 4);
    CHECK(t == oracle::aic_split(x));

    CHECK(aic_onset(std::vector<double>(9, 1.5)) == 2);

    std::vector<double> ramp(30);
    for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i);
    const auto r = aic_onset(ramp);
    CHECK(r >= 10);
    CHECK(r <= 20);
    CHECK(r == oracle::aic_split(ramp));

    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> y(5 + trial % 40);
        for (auto& v : y) v = n(rng) * (1 + trial % 3);
        CHECK(aic_onset(y) == oracle::aic_split(y));
    }
    CHECK_THROWS_AS(aic_onset(std::vector<double>(4, 0.0)), ConfigError);
}

TEST_CASE("rea rules") {
    TGICurve flat = step_curve(0, 10, 0);
    for (auto& d : flat.dtgi) d = 0.0;
    const std::vector<TGICurve> f{flat};
    const auto r0 = rea(f, 30);
    CHECK(r0.phases[0].converged);
    CHECK(r0.rea == flat.sizes[3]);

    const std::vector<TGICurve> steps{step_curve(0, 19, 2), step_curve(1, 19, 9), step_curve(2, 19, 4)};
    const auto r1 = rea(steps, 59);
    CHECK(r1.phases[0].rea == 5);
    CHECK(r1.phases[1].rea == 12);
    CHECK(r1.phases[2].rea == 7);
    CHECK(r1.rea == 12);

    // noisy tail never settles
    TGICurve noisy = step_curve(1, 19, 3);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n(0.0, 1.0);
    for (auto& d : noisy.dtgi) d = n(rng);
    const std::vector<TGICurve> mixed{step_curve(0, 19, 2), noisy};
    const auto r2 = rea(mixed, 59);
    CHECK_FALSE(r2.phases[1].converged);
    CHECK(r2.phases[1].rea == 59);
    CHECK(r2.rea == 59);
}

TEST_CASE("frame evaluation") {
    ReaTveConfig cfg;
    CHECK(evaluate_frame(Frame(24, 24, 1.0), cfg).tve == 0.0);

    const auto f = noise_frame(24, 24, 3);
    cfg.plan.seed = 12;
    auto raw_cfg = cfg, scaled_cfg = cfg;
    scaled_cfg.normalization = MinkowskiNormalization::paper;
    const auto a = evaluate_frame(f, raw_cfg), b = evaluate_frame(f, scaled_cfg);
    CHECK(a.tve > 0.0);
    CHECK(b.tve == doctest::Approx(a.tve).epsilon(1e-12));
    CHECK(a.rea == b.rea);
}

TEST_CASE("curves are deterministic across worker counts") {
    std::vector<Frame> frames;
    std::vector<double> axis;
    for (std::size_t i = 0; i < 6; ++i) {
        frames.push_back(noise_frame(20, 20, i));
        axis.push_back(static_cast<double>(i));
    }
    const Sequence seq(frames, AxisKind::time, axis);
    ReaTveConfig cfg;
    cfg.plan.seed = 5;
    const auto one = rea_tve_curve(seq, cfg, 1);
    const auto three = rea_tve_curve(seq, cfg, 3);
    CHECK(one.first.values == three.first.values);
    CHECK(one.second.values == three.second.values);

    const Sequence flat({Frame(20, 20, 2.0), Frame(20, 20, 2.0)}, AxisKind::time, {0, 1});
    for (double v : rea_tve_curve(flat, cfg).first.values) CHECK(v == 0.0);
}
