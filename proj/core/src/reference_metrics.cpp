#include "irt/reference_metrics.hpp"

#include "irt/errors.hpp"
#include "irt/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace irt {

namespace {

void check_same_shape(const Frame& f, const Mask& m, const char* what) {
    if (m.width() != f.width() || m.height() != f.height()) {
        throw DataError(std::string(what) + " mask dimensions do not match the frame");
    }
}

double otsu_threshold(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    double total = 0.0;
    for (double x : v) total += x;
    double best = -1.0, thr = v.front(), left = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        left += v[i - 1];
        if (v[i] == v[i - 1]) continue;
        const double w0 = static_cast<double>(i), w1 = static_cast<double>(n - i);
        const double m0 = left / w0, m1 = (total - left) / w1;
        const double between = w0 * w1 * (m0 - m1) * (m0 - m1);
        if (between > best) {
            best = between;
            thr = 0.5 * (v[i - 1] + v[i]);
        }
    }
    return thr;
}

}  // namespace

RegionStats region_stats(const Frame& f, const Mask& m) {
    check_same_shape(f, m, "region");
    RegionStats s;
    double sum = 0.0;
    for (std::size_t y = 0; y < f.height(); ++y)
        for (std::size_t x = 0; x < f.width(); ++x)
            if (m(y, x)) {
                sum += f(y, x);
                ++s.count;
            }
    if (s.count == 0) {
        throw DataError("empty region mask");
    }
    s.mean = sum / static_cast<double>(s.count);
    double ss = 0.0;
    for (std::size_t y = 0; y < f.height(); ++y)
        for (std::size_t x = 0; x < f.width(); ++x)
            if (m(y, x)) ss += (f(y, x) - s.mean) * (f(y, x) - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(s.count));
    return s;
}

double centered_x(const Frame& f, std::size_t x) noexcept {
    return static_cast<double>(x) - 0.5 * static_cast<double>(f.width() - 1);
}

double centered_y(const Frame& f, std::size_t y) noexcept {
    return static_cast<double>(y) - 0.5 * static_cast<double>(f.height() - 1);
}

FilterFit fit_quadratic_background(const Frame& f) {
    if (f.size() < 3) {
        throw DataError("quadratic background fit needs at least 3 pixels");
    }
    const auto [lo, hi] = std::minmax_element(f.values().begin(), f.values().end());
    if (*lo == *hi) {
        return FilterFit{0.0, 0.0, *lo};
    }
    Eigen::MatrixXd a(static_cast<Eigen::Index>(f.size()), 3);
    Eigen::VectorXd z(static_cast<Eigen::Index>(f.size()));
    Eigen::Index row = 0;
    for (std::size_t y = 0; y < f.height(); ++y) {
        const double cy = centered_y(f, y);
        for (std::size_t x = 0; x < f.width(); ++x) {
            const double cx = centered_x(f, x);
            a(row, 0) = cx * cx;
            a(row, 1) = cy * cy;
            a(row, 2) = 1.0;
            z(row) = f(y, x);
            ++row;
        }
    }
    // A 2-pixel axis makes its x^2 column an exact multiple of the constant one; roundoff in the
    // pivots hides that from the default rank threshold.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
    cod.setThreshold(1e-10);
    cod.compute(a);
    const Eigen::Vector3d c = cod.solve(z);
    if (!c.allFinite()) {
        throw NumericError("quadratic background fit did not produce finite coefficients");
    }
    return FilterFit{c(0), c(1), c(2)};
}

Frame subtract_background(const Frame& f, const FilterFit& fit) {
    Frame out = f;
    for (std::size_t y = 0; y < f.height(); ++y) {
        const double cy = centered_y(f, y);
        for (std::size_t x = 0; x < f.width(); ++x) {
            out(y, x) = f(y, x) - fit(centered_x(f, x), cy);
        }
    }
    return out;
}

Snr snr(const Frame& f, const Mask& defect, const Mask& ref) {
    check_same_shape(f, defect, "defect");
    check_same_shape(f, ref, "reference");
    for (std::size_t i = 0; i < defect.bits().size(); ++i) {
        if (defect.bits()[i] && ref.bits()[i]) {
            throw DataError("defect and reference masks overlap");
        }
    }
    const auto d = region_stats(f, defect);
    const auto r = region_stats(f, ref);
    const double contrast = std::abs(d.mean - r.mean);
    if (contrast == 0.0) {
        return Snr{SnrStatus::no_contrast, -std::numeric_limits<double>::infinity()};
    }
    if (r.stddev == 0.0) {
        throw NumericError("SNR undefined: reference region has zero spread");
    }
    return Snr{SnrStatus::ok, 20.0 * std::log10(contrast / r.stddev)};
}

ConfusionCounts confusion(const Mask& detected, const Mask& truth) {
    if (detected.width() != truth.width() || detected.height() != truth.height()) {
        throw DataError("detected and truth masks differ in size");
    }
    ConfusionCounts c;
    const auto d = detected.bits(), t = truth.bits();
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] && t[i]) ++c.n_rd;
        else if (d[i]) ++c.n_fd;
        else if (t[i]) ++c.n_md;
    }
    return c;
}

double tanimoto(const Mask& detected, const Mask& truth) {
    const auto c = confusion(detected, truth);
    if (c.n_rd + c.n_fd == 0) {
        throw NumericError("Tanimoto criterion undefined: nothing detected");
    }
    return (static_cast<double>(c.n_rd) - static_cast<double>(c.n_md)) / static_cast<double>(c.n_rd + c.n_fd);
}

DetectorKind parse_detector(std::string_view text) {
    if (text == "otsu") return DetectorKind::otsu;
    if (text == "quantile") return DetectorKind::quantile;
    throw ConfigError("unknown detector '" + std::string(text) + "'");
}

Mask detect_threshold(const Frame& f, const DetectorConfig& cfg) {
    std::vector<double> v(f.values().begin(), f.values().end());
    Mask m(f.width(), f.height());
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (*lo == *hi) {
        return m;
    }
    double thr = 0.0;
    if (cfg.kind == DetectorKind::otsu) {
        thr = otsu_threshold(v);
    } else {
        if (!(cfg.quantile > 0.0 && cfg.quantile < 1.0)) {
            throw ConfigError("detector quantile must lie in (0,1)");
        }
        std::sort(v.begin(), v.end());
        thr = v[static_cast<std::size_t>(cfg.quantile * static_cast<double>(v.size() - 1))];
    }
    std::size_t above = 0;
    for (double x : f.values()) above += x > thr ? 1 : 0;
    const bool mark_above = 2 * above <= f.size();
    for (std::size_t y = 0; y < f.height(); ++y)
        for (std::size_t x = 0; x < f.width(); ++x)
            m.set(y, x, (f(y, x) > thr) == mark_above);
    return m;
}

std::pair<MetricCurve, MetricCurve> reference_curves(const Sequence& seq, const Mask& defect, const Mask& ref,
                                                     const DetectorConfig& detector, bool background_filter,
                                                     std::size_t workers) {
    std::vector<double> snr_values(seq.n_frames()), tc_values(seq.n_frames());
    parallel_for(seq.n_frames(), workers, [&](std::size_t i) {
        Frame f = seq.frame(i);
        if (background_filter) {
            f = subtract_background(f, fit_quadratic_background(f));
        }
        snr_values[i] = snr(f, defect, ref).db;
        const auto detected = detect_threshold(f, detector);
        const auto c = confusion(detected, defect);
        tc_values[i] = c.n_rd + c.n_fd == 0 ? std::numeric_limits<double>::quiet_NaN() : tanimoto(detected, defect);
    });
    return {MetricCurve::make("SNR", seq.axis_values(), std::move(snr_values)),
            MetricCurve::make("TC", seq.axis_values(), std::move(tc_values))};
}

}  // namespace irt
