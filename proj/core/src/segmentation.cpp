#include "irt/segmentation.hpp"

#include "irt/errors.hpp"

#include <algorithm>
#include <cmath>

namespace irt {

namespace {

double within_ss(std::span<const double> v, std::size_t begin, std::size_t end, double center) {
    double ss = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double d = v[i] - center;
        ss += d * d;
    }
    return ss;
}

std::vector<PhaseLabel> label_by_thresholds(std::span<const double> values, const std::vector<double>& thresholds) {
    std::vector<PhaseLabel> labels(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        // number of thresholds strictly below the value; ties stay in the lower phase
        const auto it = std::lower_bound(thresholds.begin(), thresholds.end(), values[i]);
        labels[i] = static_cast<PhaseLabel>(it - thresholds.begin());
    }
    return labels;
}

}  // namespace

Mask SegmentedImage::phase_mask(PhaseLabel phase) const {
    Mask m(width, height);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            m.set(y, x, labels[y * width + x] == phase);
        }
    }
    return m;
}

SegmentationMethod parse_segmentation_method(std::string_view text) {
    if (text == "kmeans1d") return SegmentationMethod::kmeans1d;
    if (text == "equal_width") return SegmentationMethod::equal_width;
    throw ConfigError("unknown segmentation method '" + std::string(text) + "'");
}

KMeans1dResult kmeans1d(std::span<const double> sorted, std::size_t k, std::size_t max_iters) {
    if (sorted.empty() || k == 0) {
        throw ConfigError("kmeans1d needs data and k >= 1");
    }
    const std::size_t n = sorted.size();
    KMeans1dResult res;
    for (std::size_t j = 0; j < k; ++j) {
        const auto idx = std::min(n - 1, static_cast<std::size_t>((static_cast<double>(j) + 0.5) * static_cast<double>(n) /
                                                                  static_cast<double>(k)));
        if (res.centers.empty() || sorted[idx] > res.centers.back()) {
            res.centers.push_back(sorted[idx]);
        }
    }

    const std::size_t kc = res.centers.size();
    std::vector<std::size_t> bounds(kc + 1, 0);  // cluster j is [bounds[j], bounds[j+1])
    std::vector<std::size_t> previous;
    bounds[kc] = n;
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        res.thresholds.resize(kc - 1);
        for (std::size_t j = 0; j + 1 < kc; ++j) {
            res.thresholds[j] = 0.5 * (res.centers[j] + res.centers[j + 1]);
            bounds[j + 1] = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), res.thresholds[j]) -
                                                     sorted.begin());
        }
        if (bounds == previous) {
            break;
        }
        double objective = 0.0;
        for (std::size_t j = 0; j < kc; ++j) {
            const auto b = bounds[j], e = bounds[j + 1];
            if (e > b) {
                double sum = 0.0;
                for (std::size_t i = b; i < e; ++i) sum += sorted[i];
                res.centers[j] = sum / static_cast<double>(e - b);
            }
            objective += within_ss(sorted, b, e, res.centers[j]);
        }
        res.objective.push_back(objective);
        previous = bounds;
        ++res.iterations;
    }
    return res;
}

SegmentedImage segment(const Frame& f, std::size_t phi, SegmentationMethod method) {
    if (phi < 2) {
        throw ConfigError("phase count must be at least 2");
    }
    if (phi > 65535) {
        throw ConfigError("phase count too large");
    }
    SegmentedImage s;
    s.width = f.width();
    s.height = f.height();
    s.phi = phi;

    const auto values = f.values();
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it, hi = *hi_it;

    if (method == SegmentationMethod::kmeans1d) {
        std::vector<double> sorted(values.begin(), values.end());
        std::sort(sorted.begin(), sorted.end());
        auto km = kmeans1d(sorted, phi);
        s.thresholds = std::move(km.thresholds);
    } else if (hi > lo) {
        for (std::size_t j = 1; j < phi; ++j) {
            s.thresholds.push_back(lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(phi));
        }
    }
    // Phases that received no center stay empty: pad with cut points at the maximum.
    s.thresholds.resize(phi - 1, hi);
    s.labels = label_by_thresholds(values, s.thresholds);
    return s;
}

}  // namespace irt
