#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace irt {

/// Scalar metric value per sequence index.
struct MetricCurve {
    std::string name;
    std::vector<std::size_t> indices;
    std::vector<double> axis_values;
    std::vector<double> values;
    bool filtered = false;
    bool normalized = false;

    std::size_t size() const noexcept { return values.size(); }

    /// Curve with indices 0..n-1 and the given axis.
    static MetricCurve make(std::string name, std::vector<double> axis_values, std::vector<double> values);
};

/// Min-max map onto [0,1]; a constant curve maps to zeros.
MetricCurve normalize01(const MetricCurve& c);

/// Second-order sections of a digital Butterworth low-pass, each with unit DC gain.
struct Biquad {
    double b0, b1, b2, a1, a2;  // a0 == 1
};
std::vector<Biquad> butterworth_design(int order, double cutoff_frac);

/// Zero-phase Butterworth low-pass (forward-backward), cutoff as a fraction of Nyquist.
/// Uses odd reflection padding of 6*order samples at both ends and steady-state initial conditions.
MetricCurve butterworth_lowpass(const MetricCurve& c, int order = 3, double cutoff_frac = 0.05);
std::vector<double> filtfilt(const std::vector<Biquad>& sections, const std::vector<double>& x, std::size_t padlen);

struct PeakRange {
    std::size_t first = 0;  ///< inclusive
    std::size_t last = 0;   ///< inclusive
    std::size_t peak = 0;
    double value = 0.0;
    double prominence = 0.0;
    bool is_global = false;
};

/// Local maxima whose prominence is at least prominence_frac * (max - min), strongest first.
/// Each range spans the contiguous indices around the peak with value >= peak - prominence / 2.
/// A constant curve has no peaks.
std::vector<PeakRange> find_max_ranges(const MetricCurve& c, double prominence_frac = 0.1, std::size_t top_k = 3);

bool ranges_overlap(const PeakRange& a, const PeakRange& b) noexcept;

/// CSV columns: index,axis_value,value_raw,value_filtered,value_normalized
void write_curve_csv(const std::filesystem::path& path, const MetricCurve& raw, const MetricCurve* filtered,
                     const MetricCurve* normalized);

struct CurveTable {
    std::string name;
    std::vector<std::size_t> indices;
    std::vector<double> axis_values;
    std::vector<double> raw;
    std::vector<double> filtered;    // empty when the column was blank
    std::vector<double> normalized;  // empty when the column was blank
};
CurveTable read_curve_csv(const std::filesystem::path& path);

struct SvgSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    std::string color;
    bool dashed = false;
    std::vector<PeakRange> bars;
};

/// Static line plot with peak-range bars drawn under the axis.
void write_svg_plot(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                    const std::vector<SvgSeries>& series);

const std::string& palette_color(std::size_t i);

}  // namespace irt
