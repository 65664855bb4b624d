#include "irt/curve_tools.hpp"

#include "irt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

namespace irt {

namespace {

void check_finite(const std::vector<double>& v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw DataError(std::string(what) + ": non-finite curve value");
        }
    }
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::vector<double> run_sections(const std::vector<Biquad>& sections, std::vector<double> x) {
    if (x.empty()) return x;
    const double x0 = x.front();
    for (const auto& s : sections) {
        // Direct form II transposed, started in the steady state for a constant input x0.
        double z2 = (s.b2 - s.a2) * x0;
        double z1 = (s.b1 - s.a1) * x0 + z2;
        for (auto& v : x) {
            const double in = v;
            const double y = s.b0 * in + z1;
            z1 = s.b1 * in - s.a1 * y + z2;
            z2 = s.b2 * in - s.a2 * y;
            v = y;
        }
    }
    return x;
}

}  // namespace

MetricCurve MetricCurve::make(std::string name, std::vector<double> axis_values, std::vector<double> values) {
    if (axis_values.size() != values.size()) {
        throw DataError("curve axis and values differ in length");
    }
    MetricCurve c;
    c.name = std::move(name);
    c.indices.resize(values.size());
    std::iota(c.indices.begin(), c.indices.end(), std::size_t{0});
    c.axis_values = std::move(axis_values);
    c.values = std::move(values);
    return c;
}

MetricCurve normalize01(const MetricCurve& c) {
    check_finite(c.values, "normalize01");
    MetricCurve out = c;
    out.normalized = true;
    if (c.values.empty()) return out;
    const auto [lo, hi] = std::minmax_element(c.values.begin(), c.values.end());
    const double low = *lo, span = *hi - *lo;
    for (auto& v : out.values) v = span > 0.0 ? (v - low) / span : 0.0;
    return out;
}

std::vector<Biquad> butterworth_design(int order, double cutoff_frac) {
    if (order < 1) {
        throw ConfigError("Butterworth order must be at least 1");
    }
    if (!(cutoff_frac > 0.0 && cutoff_frac < 1.0)) {
        throw ConfigError("Butterworth cutoff must lie in (0, 1) of Nyquist");
    }
    const double warped = 2.0 * std::tan(std::numbers::pi * cutoff_frac / 2.0);
    std::vector<Biquad> sections;
    auto to_z = [](std::complex<double> p) { return (1.0 + p / 2.0) / (1.0 - p / 2.0); };
    for (int k = 0; k < order / 2; ++k) {
        const double theta = std::numbers::pi * static_cast<double>(2 * k + order + 1) / (2.0 * order);
        const auto z = to_z(warped * std::polar(1.0, theta));
        const double a1 = -2.0 * z.real(), a2 = std::norm(z);
        const double g = (1.0 + a1 + a2) / 4.0;
        sections.push_back({g, 2.0 * g, g, a1, a2});
    }
    if (order % 2 == 1) {
        const double zr = to_z(std::complex<double>(-warped, 0.0)).real();
        const double g = (1.0 - zr) / 2.0;
        sections.push_back({g, g, 0.0, -zr, 0.0});
    }
    return sections;
}

std::vector<double> filtfilt(const std::vector<Biquad>& sections, const std::vector<double>& x, std::size_t padlen) {
    const std::size_t n = x.size();
    if (n <= padlen) {
        throw ConfigError("curve too short for the filter padding");
    }
    std::vector<double> ext;
    ext.reserve(n + 2 * padlen);
    for (std::size_t i = padlen; i >= 1; --i) ext.push_back(2.0 * x.front() - x[i]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (std::size_t i = 1; i <= padlen; ++i) ext.push_back(2.0 * x.back() - x[n - 1 - i]);

    auto y = run_sections(sections, std::move(ext));
    std::reverse(y.begin(), y.end());
    y = run_sections(sections, std::move(y));
    std::reverse(y.begin(), y.end());
    return {y.begin() + static_cast<std::ptrdiff_t>(padlen), y.begin() + static_cast<std::ptrdiff_t>(padlen + n)};
}

MetricCurve butterworth_lowpass(const MetricCurve& c, int order, double cutoff_frac) {
    const auto sections = butterworth_design(order, cutoff_frac);
    check_finite(c.values, "butterworth_lowpass");
    const auto padlen = static_cast<std::size_t>(6 * order);
    if (c.values.size() <= padlen) {
        throw ConfigError("curve of length " + std::to_string(c.values.size()) + " too short for order " +
                          std::to_string(order) + " filtering");
    }
    MetricCurve out = c;
    out.values = filtfilt(sections, c.values, padlen);
    out.filtered = true;
    return out;
}

std::vector<PeakRange> find_max_ranges(const MetricCurve& c, double prominence_frac, std::size_t top_k) {
    const auto& v = c.values;
    const std::size_t n = v.size();
    if (n == 0) {
        throw DataError("empty curve");
    }
    check_finite(v, "find_max_ranges");
    const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
    const double span = *hi_it - *lo_it;
    std::vector<PeakRange> peaks;
    if (span <= 0.0) {
        return peaks;
    }

    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && v[j + 1] == v[i]) ++j;
        const bool left_ok = i == 0 || v[i - 1] < v[i];
        const bool right_ok = j == n - 1 || v[j + 1] < v[i];
        if (left_ok && right_ok) {
            const std::size_t peak = (i + j) / 2;
            const double pv = v[peak];
            // base on each side: lowest point before reaching a strictly higher value
            double left_base = pv, right_base = pv;
            bool has_left = i > 0, has_right = j < n - 1;
            for (std::size_t l = i; l-- > 0;) {
                if (v[l] > pv) break;
                left_base = std::min(left_base, v[l]);
            }
            for (std::size_t r = j + 1; r < n; ++r) {
                if (v[r] > pv) break;
                right_base = std::min(right_base, v[r]);
            }
            double base = 0.0;
            if (has_left && has_right) base = std::max(left_base, right_base);
            else base = has_left ? left_base : right_base;
            const double prominence = pv - base;
            if (prominence > 0.0 && prominence >= prominence_frac * span) {
                PeakRange pr;
                pr.peak = peak;
                pr.value = pv;
                pr.prominence = prominence;
                const double floor = pv - prominence / 2.0;
                pr.first = peak;
                while (pr.first > 0 && v[pr.first - 1] >= floor) --pr.first;
                pr.last = peak;
                while (pr.last + 1 < n && v[pr.last + 1] >= floor) ++pr.last;
                peaks.push_back(pr);
            }
        }
        i = j + 1;
    }
    std::stable_sort(peaks.begin(), peaks.end(), [](const PeakRange& a, const PeakRange& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.peak < b.peak;
    });
    if (!peaks.empty()) peaks.front().is_global = true;
    if (top_k > 0 && peaks.size() > top_k) peaks.resize(top_k);
    return peaks;
}

bool ranges_overlap(const PeakRange& a, const PeakRange& b) noexcept {
    return a.first <= b.last && b.first <= a.last;
}

void write_curve_csv(const std::filesystem::path& path, const MetricCurve& raw, const MetricCurve* filtered,
                     const MetricCurve* normalized) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    out << "index,axis_value,value_raw,value_filtered,value_normalized\n";
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out << raw.indices[i] << ',' << fmt_double(raw.axis_values[i]) << ',' << fmt_double(raw.values[i]) << ',';
        if (filtered) out << fmt_double(filtered->values[i]);
        out << ',';
        if (normalized) out << fmt_double(normalized->values[i]);
        out << '\n';
    }
}

CurveTable read_curve_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    std::string line;
    std::getline(in, line);
    if (line.rfind("index,axis_value,value_raw,value_filtered,value_normalized", 0) != 0) {
        throw DataError(path.string() + ": not a metric curve CSV");
    }
    CurveTable t;
    t.name = path.stem().string();
    bool has_filtered = true, has_normalized = true;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (cells.size() != 5) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected 5 columns");
        }
        try {
            t.indices.push_back(std::stoul(cells[0]));
            t.axis_values.push_back(std::strtod(cells[1].c_str(), nullptr));
            t.raw.push_back(std::strtod(cells[2].c_str(), nullptr));
        } catch (const std::exception&) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": malformed number");
        }
        if (cells[3].empty()) has_filtered = false;
        else t.filtered.push_back(std::strtod(cells[3].c_str(), nullptr));
        if (cells[4].empty()) has_normalized = false;
        else t.normalized.push_back(std::strtod(cells[4].c_str(), nullptr));
    }
    if (!has_filtered) t.filtered.clear();
    if (!has_normalized) t.normalized.clear();
    if (t.raw.empty()) {
        throw DataError(path.string() + ": no data rows");
    }
    return t;
}

const std::string& palette_color(std::size_t i) {
    static const std::vector<std::string> colors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    return colors[i % colors.size()];
}

void write_svg_plot(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                    const std::vector<SvgSeries>& series) {
    constexpr double width = 900, height = 520, left = 70, right = 170, top = 40;
    const double bar_rows = static_cast<double>(series.size());
    const double bottom = 60 + 10 * bar_rows;
    const double pw = width - left - right, ph = height - top - bottom;

    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << left << "\" y=\"24\" font-size=\"15\">" << title << "</text>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double fx = xmin + (xmax - xmin) * t / 4.0, fy = ymin + (ymax - ymin) * t / 4.0;
        out << "<text x=\"" << sx(fx) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">" << fmt_short(fx)
            << "</text>\n";
        out << "<text x=\"" << left - 6 << "\" y=\"" << sy(fy) + 4 << "\" text-anchor=\"end\">" << fmt_short(fy)
            << "</text>\n";
    }
    out << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 8 << "\" text-anchor=\"middle\">" << x_label
        << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.3\""
            << (s.dashed ? " stroke-dasharray=\"4 3\"" : "") << " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            out << sx(s.x[i]) << ',' << sy(s.y[i]) << ' ';
        }
        out << "\"/>\n";
        const double bar_y = top + ph + 26 + 10 * static_cast<double>(k);
        for (const auto& b : s.bars) {
            if (b.last >= s.x.size()) continue;
            const double x0 = sx(s.x[b.first]), x1 = sx(s.x[b.last]);
            out << "<rect x=\"" << x0 << "\" y=\"" << bar_y << "\" width=\"" << std::max(2.0, x1 - x0)
                << "\" height=\"6\" fill=\"" << s.color << "\" fill-opacity=\"" << (b.is_global ? 1.0 : 0.45)
                << "\"/>\n";
        }
        out << "<line x1=\"" << width - right + 12 << "\" y1=\"" << top + 14 + 18 * k << "\" x2=\""
            << width - right + 36 << "\" y2=\"" << top + 14 + 18 * k << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"4 3\"" : "") << "/>\n";
        out << "<text x=\"" << width - right + 42 << "\" y=\"" << top + 18 + 18 * k << "\">" << s.name << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace irt
