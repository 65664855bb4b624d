#include "irt/minkowski.hpp"

#include "irt/errors.hpp"

#include <numbers>

namespace irt {

MinkowskiNormalization parse_normalization(std::string_view text) {
    if (text == "raw") return MinkowskiNormalization::raw;
    if (text == "paper") return MinkowskiNormalization::paper;
    throw ConfigError("unknown Minkowski normalization '" + std::string(text) + "'");
}

std::string_view to_string(MinkowskiNormalization n) {
    return n == MinkowskiNormalization::raw ? "raw" : "paper";
}

MinkowskiTriple scale(const RawFunctionals& raw, MinkowskiNormalization normalization) {
    MinkowskiTriple t;
    t.normalization = normalization;
    t.m0 = static_cast<double>(raw.area);
    if (normalization == MinkowskiNormalization::raw) {
        t.m1 = static_cast<double>(raw.boundary);
        t.m2 = static_cast<double>(raw.euler);
    } else {
        t.m1 = static_cast<double>(raw.boundary) / (2.0 * std::numbers::pi);
        t.m2 = static_cast<double>(raw.euler) / std::numbers::pi;
    }
    return t;
}

RawFunctionals raw_functionals(const Mask& m, Connectivity conn) {
    const auto w = static_cast<std::ptrdiff_t>(m.width());
    const auto h = static_cast<std::ptrdiff_t>(m.height());
    auto at = [&](std::ptrdiff_t y, std::ptrdiff_t x) -> int {
        return (y >= 0 && x >= 0 && y < h && x < w) ? static_cast<int>(m(static_cast<std::size_t>(y), static_cast<std::size_t>(x))) : 0;
    };

    RawFunctionals r;
    std::int64_t q1 = 0, q3 = 0, qd = 0;
    // Every lattice vertex, including the padded border, owns one 2x2 quad.
    for (std::ptrdiff_t vy = 0; vy <= h; ++vy) {
        for (std::ptrdiff_t vx = 0; vx <= w; ++vx) {
            const int a = at(vy - 1, vx - 1), b = at(vy - 1, vx), c = at(vy, vx - 1), d = at(vy, vx);
            const int n = a + b + c + d;
            if (n == 1) ++q1;
            else if (n == 3) ++q3;
            else if (n == 2 && a == d) ++qd;
        }
    }
    for (std::ptrdiff_t y = 0; y < h; ++y) {
        for (std::ptrdiff_t x = 0; x < w; ++x) {
            if (!at(y, x)) continue;
            ++r.area;
            r.boundary += (1 - at(y - 1, x)) + (1 - at(y + 1, x)) + (1 - at(y, x - 1)) + (1 - at(y, x + 1));
        }
    }
    const auto twice_qd = conn == Connectivity::eight ? -2 * qd : 2 * qd;
    r.euler = (q1 - q3 + twice_qd) / 4;
    return r;
}

MinkowskiTriple functionals(const Mask& m, MinkowskiNormalization normalization, Connectivity conn) {
    return scale(raw_functionals(m, conn), normalization);
}

void WindowedFunctionals::Table::build(std::size_t r, std::size_t c, const std::vector<std::int32_t>& cells) {
    rows = r;
    cols = c;
    data.assign((r + 1) * (c + 1), 0);
    for (std::size_t y = 0; y < r; ++y) {
        std::int32_t row_sum = 0;
        for (std::size_t x = 0; x < c; ++x) {
            row_sum += cells[y * c + x];
            data[(y + 1) * (c + 1) + x + 1] = data[y * (c + 1) + x + 1] + row_sum;
        }
    }
}

std::int64_t WindowedFunctionals::Table::sum(std::ptrdiff_t r0, std::ptrdiff_t c0, std::ptrdiff_t r1,
                                             std::ptrdiff_t c1) const noexcept {
    if (r1 < r0 || c1 < c0) return 0;
    const auto stride = static_cast<std::ptrdiff_t>(cols + 1);
    const auto* d = data.data();
    return static_cast<std::int64_t>(d[(r1 + 1) * stride + c1 + 1]) - d[r0 * stride + c1 + 1] -
           d[(r1 + 1) * stride + c0] + d[r0 * stride + c0];
}

WindowedFunctionals::WindowedFunctionals(const Mask& m) : width_(m.width()), height_(m.height()) {
    build(std::vector<std::uint8_t>(m.bits().begin(), m.bits().end()));
}

WindowedFunctionals::WindowedFunctionals(const SegmentedImage& s, PhaseLabel phase)
    : width_(s.width), height_(s.height) {
    std::vector<std::uint8_t> fg(s.labels.size());
    for (std::size_t i = 0; i < fg.size(); ++i) {
        fg[i] = s.labels[i] == phase ? 1 : 0;
    }
    build(fg);
}

void WindowedFunctionals::build(const std::vector<std::uint8_t>& fg) {
    const std::size_t w = width_, h = height_;
    auto p = [&](std::size_t y, std::size_t x) -> std::int32_t { return fg[y * w + x]; };

    std::vector<std::int32_t> cells(w * h);
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = fg[i];
    pixel_.build(h, w, cells);

    const std::size_t wm = w > 0 ? w - 1 : 0;
    const std::size_t hm = h > 0 ? h - 1 : 0;

    cells.assign(h * wm, 0);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < wm; ++x) cells[y * wm + x] = p(y, x) ^ p(y, x + 1);
    hxor_.build(h, wm, cells);

    cells.assign(hm * w, 0);
    for (std::size_t y = 0; y < hm; ++y)
        for (std::size_t x = 0; x < w; ++x) cells[y * w + x] = p(y, x) ^ p(y + 1, x);
    vxor_.build(hm, w, cells);

    std::vector<std::int32_t> diag(hm * wm, 0);
    cells.assign(hm * wm, 0);
    for (std::size_t y = 0; y < hm; ++y) {
        for (std::size_t x = 0; x < wm; ++x) {
            const int a = p(y, x), b = p(y, x + 1), c = p(y + 1, x), d = p(y + 1, x + 1);
            const int n = a + b + c + d;
            cells[y * wm + x] = n == 1 ? 1 : (n == 3 ? -1 : 0);
            diag[y * wm + x] = (n == 2 && a == d) ? 1 : 0;
        }
    }
    quad13_.build(hm, wm, cells);
    diagonal_.build(hm, wm, diag);
}

RawFunctionals WindowedFunctionals::raw(const Window& win, Connectivity conn) const {
    if (win.n == 0 || win.x + win.n > width_ || win.y + win.n > height_) {
        throw ConfigError("window outside image bounds");
    }
    const auto x0 = static_cast<std::ptrdiff_t>(win.x), y0 = static_cast<std::ptrdiff_t>(win.y);
    const auto x1 = x0 + static_cast<std::ptrdiff_t>(win.n) - 1;
    const auto y1 = y0 + static_cast<std::ptrdiff_t>(win.n) - 1;

    RawFunctionals r;
    r.area = pixel_.sum(y0, x0, y1, x1);
    if (r.area == 0) {
        return r;
    }

    const auto border_pixels = pixel_.sum(y0, x0, y0, x1) + pixel_.sum(y1, x0, y1, x1) + pixel_.sum(y0, x0, y1, x0) +
                               pixel_.sum(y0, x1, y1, x1);
    r.boundary = hxor_.sum(y0, x0, y1, x1 - 1) + vxor_.sum(y0, x0, y1 - 1, x1) + border_pixels;

    // Quads straddling the window edge see the outside as background: an edge quad
    // holds one foreground pixel iff its inside pair differs, a corner quad iff its pixel is set.
    const auto edge_quads = hxor_.sum(y0, x0, y0, x1 - 1) + hxor_.sum(y1, x0, y1, x1 - 1) +
                            vxor_.sum(y0, x0, y1 - 1, x0) + vxor_.sum(y0, x1, y1 - 1, x1);
    const auto corner_quads =
        pixel_.sum(y0, x0, y0, x0) + pixel_.sum(y0, x1, y0, x1) + pixel_.sum(y1, x0, y1, x0) + pixel_.sum(y1, x1, y1, x1);
    const auto inner = quad13_.sum(y0, x0, y1 - 1, x1 - 1);
    const auto diag = diagonal_.sum(y0, x0, y1 - 1, x1 - 1);
    const auto twice_qd = conn == Connectivity::eight ? -2 * diag : 2 * diag;
    r.euler = (inner + edge_quads + corner_quads + twice_qd) / 4;
    return r;
}

MinkowskiTriple functionals_window(const SegmentedImage& s, const Window& w, PhaseLabel phase,
                                   MinkowskiNormalization normalization, Connectivity conn) {
    if (phase >= s.phi) {
        throw ConfigError("phase label out of range");
    }
    if (w.n == 0 || w.x + w.n > s.width || w.y + w.n > s.height) {
        throw ConfigError("window outside image bounds");
    }
    return scale(WindowedFunctionals(s, phase).raw(w, conn), normalization);
}

}  // namespace irt
