#pragma once

#include "irt/core_model.hpp"
#include "irt/curve_tools.hpp"

#include <cstddef>
#include <utility>

namespace irt {

struct RegionStats {
    double mean = 0.0;
    double stddev = 0.0;  ///< population
    std::size_t count = 0;
};

RegionStats region_stats(const Frame& f, const Mask& m);

/// z = c1*x^2 + c2*y^2 + c3 with x, y measured from the frame center.
struct FilterFit {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    double operator()(double x, double y) const noexcept { return c1 * x * x + c2 * y * y + c3; }
};

/// Pixel (y, x) sits at centered coordinates (x - (w-1)/2, y - (h-1)/2).
double centered_x(const Frame& f, std::size_t x) noexcept;
double centered_y(const Frame& f, std::size_t y) noexcept;

/// Least-squares quadratic background. Unidentifiable coefficients (a 1- or 2-pixel-wide
/// axis) resolve to the minimum-norm solution.
FilterFit fit_quadratic_background(const Frame& f);
Frame subtract_background(const Frame& f, const FilterFit& fit);

enum class SnrStatus { ok, no_contrast };

struct Snr {
    SnrStatus status = SnrStatus::ok;
    double db = 0.0;  ///< -infinity when status is no_contrast
};

/// 20*log10(|mean_def - mean_ref| / std_ref). Equal means yield the no_contrast sentinel;
/// a zero reference spread with nonzero contrast throws NumericError.
Snr snr(const Frame& f, const Mask& defect, const Mask& ref);

struct ConfusionCounts {
    std::size_t n_rd = 0;  ///< correctly detected defect pixels
    std::size_t n_fd = 0;  ///< falsely detected
    std::size_t n_md = 0;  ///< missed
};

ConfusionCounts confusion(const Mask& detected, const Mask& truth);

/// (n_rd - n_md) / (n_rd + n_fd); throws NumericError when nothing was detected.
double tanimoto(const Mask& detected, const Mask& truth);

enum class DetectorKind { otsu, quantile };

struct DetectorConfig {
    DetectorKind kind = DetectorKind::otsu;
    double quantile = 0.9;  ///< for DetectorKind::quantile
};

DetectorKind parse_detector(std::string_view text);

/// Threshold detector standing in for a contour search: splits the frame at an Otsu or
/// quantile threshold and marks the minority side.
Mask detect_threshold(const Frame& f, const DetectorConfig& cfg = {});

/// Per-frame SNR and Tanimoto curves after background subtraction. Frames without contrast
/// carry -infinity in the SNR curve; frames where nothing is detected carry NaN in the
/// Tanimoto curve.
std::pair<MetricCurve, MetricCurve> reference_curves(const Sequence& seq, const Mask& defect, const Mask& ref,
                                                     const DetectorConfig& detector = {}, bool background_filter = true,
                                                     std::size_t workers = 1);

}  // namespace irt
