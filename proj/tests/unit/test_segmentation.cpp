#include "doctest.h"
#include "oracles.hpp"

#include "irt/errors.hpp"
#include "irt/segmentation.hpp"

#include <algorithm>
#include <random>

using namespace irt;

TEST_CASE("two-valued frame follows value order") {
    const Frame f(4, 1, std::vector<double>{3.0, 1.0, 3.0, 1.0});
    const auto s = segment(f, 2);
    CHECK(s.labels == std::vector<PhaseLabel>{1, 0, 1, 0});
    REQUIRE(s.thresholds.size() == 1);
    CHECK(s.thresholds[0] == doctest::Approx(2.0));
}

TEST_CASE("constant frame lands in phase 0") {
    const auto s = segment(Frame(5, 5, 0.7), 2);
    for (auto l : s.labels) CHECK(l == 0);
    CHECK(s.thresholds.size() == 1);
    CHECK(s.phase_mask(1).count() == 0);
}

TEST_CASE("kmeans threshold matches exhaustive split") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> a(0.0, 1.0), b(10.0, 1.5);
        std::vector<double> v;
        for (int i = 0; i < 600; ++i) v.push_back(a(rng));
        for (int i = 0; i < 400; ++i) v.push_back(b(rng));
        auto sorted = v;
        std::sort(sorted.begin(), sorted.end());
        const auto km = kmeans1d(sorted, 2);
        REQUIRE(km.thresholds.size() == 1);
        const double cut = oracle::best_two_class_cut(v);
        // both cuts must sit in the same gap between consecutive sorted values
        const auto above = [&](double t) { return std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin(); };
        CHECK(above(km.thresholds[0]) == above(cut));
        CHECK(km.thresholds[0] > 2.0);
        CHECK(km.thresholds[0] < 8.0);
    }
}

TEST_CASE("kmeans objective never increases") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(2000);
    for (auto& x : v) x = u(rng) * u(rng);
    std::sort(v.begin(), v.end());
    const auto km = kmeans1d(v, 4);
    for (std::size_t i = 1; i < km.objective.size(); ++i) CHECK(km.objective[i] <= km.objective[i - 1] + 1e-12);
    CHECK(std::is_sorted(km.centers.begin(), km.centers.end()));
}

TEST_CASE("ties go to the lower phase and labels are ordered") {
    std::vector<double> v;
    for (int i = 0; i < 64; ++i) v.push_back(static_cast<double>(i % 8));
    const auto s = segment(Frame(8, 8, v), 4);
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::size_t expect = 0;
        while (expect < s.thresholds.size() && v[i] > s.thresholds[expect]) ++expect;
        CHECK(s.labels[i] == expect);
    }
    const auto eq = segment(Frame(8, 8, v), 4, SegmentationMethod::equal_width);
    CHECK(eq.thresholds == std::vector<double>{1.75, 3.5, 5.25});
}

TEST_CASE("bad phase count") {
    CHECK_THROWS_AS(segment(Frame(2, 2), 1), ConfigError);
    CHECK_THROWS_AS(parse_segmentation_method("otsu"), ConfigError);
}
