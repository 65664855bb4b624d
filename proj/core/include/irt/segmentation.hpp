#pragma once

#include "irt/core_model.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace irt {

using PhaseLabel = std::uint16_t;

/// Per-pixel intensity phase labels of one frame; phase 0 is the lowest-intensity cluster.
struct SegmentedImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t phi = 0;
    std::vector<PhaseLabel> labels;  // row-major
    std::vector<double> thresholds;  // phi - 1 cut points, non-decreasing

    PhaseLabel operator()(std::size_t y, std::size_t x) const noexcept { return labels[y * width + x]; }
    Mask phase_mask(PhaseLabel phase) const;
};

enum class SegmentationMethod { kmeans1d, equal_width };

SegmentationMethod parse_segmentation_method(std::string_view text);

/// Quantizes a frame into `phi` intensity phases. Values equal to a threshold go to the lower phase.
SegmentedImage segment(const Frame& f, std::size_t phi, SegmentationMethod method = SegmentationMethod::kmeans1d);

struct KMeans1dResult {
    std::vector<double> centers;       // ascending
    std::vector<double> thresholds;    // midpoints between consecutive centers
    std::vector<double> objective;     // within-cluster sum of squares after each Lloyd iteration
    std::size_t iterations = 0;
};

/// Lloyd's algorithm on sorted 1D data, seeded at the (j+0.5)/k quantiles.
/// Duplicate seeds collapse, so fewer than k centers are returned for data with < k distinct values.
KMeans1dResult kmeans1d(std::span<const double> sorted_values, std::size_t k, std::size_t max_iters = 500);

}  // namespace irt
