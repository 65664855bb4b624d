#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace irt {

/// One 2D intensity image, row-major, indexed (y, x).
class Frame {
public:
    Frame() = default;
    Frame(std::size_t width, std::size_t height, double fill = 0.0);
    Frame(std::size_t width, std::size_t height, std::vector<double> values);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return values_.size(); }

    double operator()(std::size_t y, std::size_t x) const noexcept { return values_[y * width_ + x]; }
    double& operator()(std::size_t y, std::size_t x) noexcept { return values_[y * width_ + x]; }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    bool operator==(const Frame&) const = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<double> values_;
};

enum class AxisKind { time, frequency, coefficient };

std::string_view to_string(AxisKind kind);
AxisKind parse_axis_kind(std::string_view text);

/// Ordered stack of equally sized frames with a strictly increasing axis.
class Sequence {
public:
    Sequence() = default;
    Sequence(std::vector<Frame> frames, AxisKind kind, std::vector<double> axis_values);

    std::size_t n_frames() const noexcept { return frames_.size(); }
    std::size_t width() const noexcept { return frames_.front().width(); }
    std::size_t height() const noexcept { return frames_.front().height(); }

    const Frame& frame(std::size_t i) const { return frames_.at(i); }
    const std::vector<Frame>& frames() const noexcept { return frames_; }
    AxisKind axis_kind() const noexcept { return kind_; }
    const std::vector<double>& axis_values() const noexcept { return axis_; }

    bool operator==(const Sequence&) const = default;

private:
    std::vector<Frame> frames_;
    AxisKind kind_ = AxisKind::coefficient;
    std::vector<double> axis_;
};

struct Rect {
    std::size_t x0 = 0;
    std::size_t y0 = 0;
    std::size_t w = 0;
    std::size_t h = 0;

    bool fits(std::size_t width, std::size_t height) const noexcept {
        return w >= 1 && h >= 1 && x0 + w <= width && y0 + h <= height;
    }
    bool operator==(const Rect&) const = default;
};

/// Parses "x0,y0,w,h".
Rect parse_rect(std::string_view text);

class Mask {
public:
    Mask() = default;
    Mask(std::size_t width, std::size_t height, bool fill = false);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    bool operator()(std::size_t y, std::size_t x) const noexcept { return bits_[y * width_ + x] != 0; }
    void set(std::size_t y, std::size_t x, bool v) noexcept { bits_[y * width_ + x] = v ? 1 : 0; }
    std::size_t count() const noexcept;
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    static Mask from_rect(std::size_t width, std::size_t height, const Rect& r);

    bool operator==(const Mask&) const = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Inclusive frame index range [first, last].
struct IndexRange {
    std::size_t first = 0;
    std::size_t last = 0;
    bool operator==(const IndexRange&) const = default;
};

/// Parses "a:b[,c:d]" with inclusive bounds.
std::vector<IndexRange> parse_index_ranges(std::string_view text);

// Stack directory I/O: header.json + data.raw (f32le, frame-major, row-major).
Sequence load_sequence(const std::filesystem::path& dir);
void save_sequence(const Sequence& seq, const std::filesystem::path& dir);

// 8-bit binary PGM (P5); nonzero pixels are true.
Mask load_mask_pgm(const std::filesystem::path& path);
void save_mask_pgm(const Mask& mask, const std::filesystem::path& path);

Sequence crop_roi(const Sequence& seq, const Rect& r);
Frame crop_frame(const Frame& f, const Rect& r);
Mask crop_mask(const Mask& m, const Rect& r);

/// Keeps the union of the given ranges, in index order.
Sequence exclude_frames(const Sequence& seq, std::span<const IndexRange> keep);

/// Min-max map onto [0,1]. A constant frame maps to all zeros.
Frame normalize01_frame(const Frame& f);

}  // namespace irt
