#include "irt/core_model.hpp"

#include "irt/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace irt {

namespace {

void check_finite(std::span<const double> values, std::string_view what) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw DataError(std::string(what) + ": non-finite value");
        }
    }
}

std::size_t parse_size(std::string_view text, std::string_view what) {
    std::size_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ConfigError(std::string("cannot parse ") + std::string(what) + " from '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

static_assert(std::endian::native == std::endian::little, "stack I/O assumes a little-endian host");

}  // namespace

Frame::Frame(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height), values_(width * height, fill) {
    if (width == 0 || height == 0) {
        throw DataError("frame dimensions must be positive");
    }
}

Frame::Frame(std::size_t width, std::size_t height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
    if (width == 0 || height == 0) {
        throw DataError("frame dimensions must be positive");
    }
    if (values_.size() != width * height) {
        throw DataError("frame value count does not match width*height");
    }
}

std::string_view to_string(AxisKind kind) {
    switch (kind) {
        case AxisKind::time: return "time";
        case AxisKind::frequency: return "frequency";
        case AxisKind::coefficient: return "coefficient";
    }
    return "coefficient";
}

AxisKind parse_axis_kind(std::string_view text) {
    if (text == "time") return AxisKind::time;
    if (text == "frequency") return AxisKind::frequency;
    if (text == "coefficient") return AxisKind::coefficient;
    throw DataError("unknown axis_kind '" + std::string(text) + "'");
}

Sequence::Sequence(std::vector<Frame> frames, AxisKind kind, std::vector<double> axis_values)
    : frames_(std::move(frames)), kind_(kind), axis_(std::move(axis_values)) {
    if (frames_.empty()) {
        throw DataError("sequence must contain at least one frame");
    }
    if (axis_.size() != frames_.size()) {
        throw DataError("axis length does not match frame count");
    }
    for (const auto& f : frames_) {
        if (f.width() != frames_.front().width() || f.height() != frames_.front().height()) {
            throw DataError("all frames of a sequence must share dimensions");
        }
    }
    for (std::size_t i = 1; i < axis_.size(); ++i) {
        if (!(axis_[i] > axis_[i - 1])) {
            throw DataError("axis values must be strictly increasing (index " + std::to_string(i) + ")");
        }
    }
}

Rect parse_rect(std::string_view text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) {
        throw ConfigError("ROI must be x0,y0,w,h; got '" + std::string(text) + "'");
    }
    return Rect{parse_size(parts[0], "x0"), parse_size(parts[1], "y0"), parse_size(parts[2], "w"),
                parse_size(parts[3], "h")};
}

Mask::Mask(std::size_t width, std::size_t height, bool fill)
    : width_(width), height_(height), bits_(width * height, fill ? 1 : 0) {}

std::size_t Mask::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Mask Mask::from_rect(std::size_t width, std::size_t height, const Rect& r) {
    if (!r.fits(width, height)) {
        throw ConfigError("rectangle outside mask bounds");
    }
    Mask m(width, height);
    for (std::size_t y = r.y0; y < r.y0 + r.h; ++y) {
        for (std::size_t x = r.x0; x < r.x0 + r.w; ++x) {
            m.set(y, x, true);
        }
    }
    return m;
}

std::vector<IndexRange> parse_index_ranges(std::string_view text) {
    std::vector<IndexRange> ranges;
    for (auto part : split(text, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string_view::npos) {
            throw ConfigError("frame range must be a:b; got '" + std::string(part) + "'");
        }
        IndexRange r{parse_size(part.substr(0, colon), "range start"), parse_size(part.substr(colon + 1), "range end")};
        if (r.last < r.first) {
            throw ConfigError("frame range end precedes start: '" + std::string(part) + "'");
        }
        ranges.push_back(r);
    }
    return ranges;
}

Sequence load_sequence(const std::filesystem::path& dir) {
    const auto header_path = dir / "header.json";
    const auto data_path = dir / "data.raw";
    std::ifstream header_in(header_path);
    if (!header_in) {
        throw DataError("missing stack header: " + header_path.string());
    }
    nlohmann::json header;
    try {
        header_in >> header;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed " + header_path.string() + ": " + e.what());
    }

    std::size_t width = 0, height = 0, n_frames = 0;
    AxisKind kind{};
    std::vector<double> axis;
    try {
        width = header.at("width").get<std::size_t>();
        height = header.at("height").get<std::size_t>();
        n_frames = header.at("n_frames").get<std::size_t>();
        kind = parse_axis_kind(header.at("axis_kind").get<std::string>());
        axis = header.at("axis_values").get<std::vector<double>>();
        if (header.at("dtype").get<std::string>() != "f32le") {
            throw DataError("unsupported dtype (expected f32le)");
        }
        if (header.at("layout").get<std::string>() != "frame_major_row_major") {
            throw DataError("unsupported layout (expected frame_major_row_major)");
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError("invalid stack header " + header_path.string() + ": " + e.what());
    }
    if (width == 0 || height == 0 || n_frames == 0) {
        throw DataError("stack dimensions must be positive");
    }
    if (axis.size() != n_frames) {
        throw DataError("axis_values length does not match n_frames");
    }

    std::ifstream data_in(data_path, std::ios::binary);
    if (!data_in) {
        throw DataError("missing stack data: " + data_path.string());
    }
    const auto expected = width * height * n_frames * sizeof(float);
    const auto actual = std::filesystem::file_size(data_path);
    if (actual != expected) {
        throw DataError("data.raw holds " + std::to_string(actual) + " bytes, expected " + std::to_string(expected));
    }

    std::vector<float> buffer(width * height);
    std::vector<Frame> frames;
    frames.reserve(n_frames);
    for (std::size_t i = 0; i < n_frames; ++i) {
        data_in.read(reinterpret_cast<char*>(buffer.data()), static_cast<std::streamsize>(buffer.size() * sizeof(float)));
        if (!data_in) {
            throw DataError("short read in " + data_path.string());
        }
        std::vector<double> values(buffer.begin(), buffer.end());
        check_finite(values, data_path.string());
        frames.emplace_back(width, height, std::move(values));
    }
    return Sequence(std::move(frames), kind, std::move(axis));
}

void save_sequence(const Sequence& seq, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    nlohmann::json header;
    header["width"] = seq.width();
    header["height"] = seq.height();
    header["n_frames"] = seq.n_frames();
    header["axis_kind"] = std::string(to_string(seq.axis_kind()));
    header["axis_values"] = seq.axis_values();
    header["dtype"] = "f32le";
    header["layout"] = "frame_major_row_major";
    {
        std::ofstream out(dir / "header.json");
        if (!out) {
            throw DataError("cannot write " + (dir / "header.json").string());
        }
        out << header.dump(2) << '\n';
    }
    std::ofstream out(dir / "data.raw", std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + (dir / "data.raw").string());
    }
    std::vector<float> buffer;
    for (const auto& f : seq.frames()) {
        buffer.assign(f.values().begin(), f.values().end());
        out.write(reinterpret_cast<const char*>(buffer.data()), static_cast<std::streamsize>(buffer.size() * sizeof(float)));
    }
    if (!out) {
        throw DataError("write failed for " + (dir / "data.raw").string());
    }
}

Mask load_mask_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open mask " + path.string());
    }
    // Header tokens may be separated by whitespace and '#' comments.
    auto next_token = [&]() {
        std::string token;
        char c = 0;
        while (in.get(c)) {
            if (c == '#') {
                std::string ignored;
                std::getline(in, ignored);
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                if (!token.empty()) break;
                continue;
            }
            token.push_back(c);
        }
        return token;
    };
    if (next_token() != "P5") {
        throw DataError(path.string() + ": not a binary PGM (P5)");
    }
    std::size_t width = 0, height = 0, maxval = 0;
    try {
        width = std::stoul(next_token());
        height = std::stoul(next_token());
        maxval = std::stoul(next_token());
    } catch (const std::exception&) {
        throw DataError(path.string() + ": malformed PGM header");
    }
    if (width == 0 || height == 0 || maxval == 0 || maxval > 255) {
        throw DataError(path.string() + ": only 8-bit PGM masks are supported");
    }
    std::vector<unsigned char> pixels(width * height);
    in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    if (!in) {
        throw DataError(path.string() + ": truncated pixel data");
    }
    Mask m(width, height);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            m.set(y, x, pixels[y * width + x] != 0);
        }
    }
    return m;
}

void save_mask_pgm(const Mask& mask, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write mask " + path.string());
    }
    out << "P5\n" << mask.width() << ' ' << mask.height() << "\n255\n";
    for (auto b : mask.bits()) {
        out.put(b ? static_cast<char>(255) : 0);
    }
}

Frame crop_frame(const Frame& f, const Rect& r) {
    if (!r.fits(f.width(), f.height())) {
        throw ConfigError("ROI outside frame bounds");
    }
    std::vector<double> values;
    values.reserve(r.w * r.h);
    for (std::size_t y = r.y0; y < r.y0 + r.h; ++y) {
        for (std::size_t x = r.x0; x < r.x0 + r.w; ++x) {
            values.push_back(f(y, x));
        }
    }
    return Frame(r.w, r.h, std::move(values));
}

Mask crop_mask(const Mask& m, const Rect& r) {
    if (!r.fits(m.width(), m.height())) {
        throw ConfigError("ROI outside mask bounds");
    }
    Mask out(r.w, r.h);
    for (std::size_t y = 0; y < r.h; ++y) {
        for (std::size_t x = 0; x < r.w; ++x) {
            out.set(y, x, m(r.y0 + y, r.x0 + x));
        }
    }
    return out;
}

Sequence crop_roi(const Sequence& seq, const Rect& r) {
    if (!r.fits(seq.width(), seq.height())) {
        throw ConfigError("ROI outside frame bounds");
    }
    std::vector<Frame> frames;
    frames.reserve(seq.n_frames());
    for (const auto& f : seq.frames()) {
        frames.push_back(crop_frame(f, r));
    }
    return Sequence(std::move(frames), seq.axis_kind(), seq.axis_values());
}

Sequence exclude_frames(const Sequence& seq, std::span<const IndexRange> keep) {
    std::vector<bool> selected(seq.n_frames(), false);
    for (const auto& r : keep) {
        if (r.last < r.first || r.last >= seq.n_frames()) {
            throw ConfigError("frame range " + std::to_string(r.first) + ":" + std::to_string(r.last) +
                              " outside [0, " + std::to_string(seq.n_frames()) + ")");
        }
        std::fill(selected.begin() + static_cast<std::ptrdiff_t>(r.first),
                  selected.begin() + static_cast<std::ptrdiff_t>(r.last) + 1, true);
    }
    std::vector<Frame> frames;
    std::vector<double> axis;
    for (std::size_t i = 0; i < seq.n_frames(); ++i) {
        if (selected[i]) {
            frames.push_back(seq.frame(i));
            axis.push_back(seq.axis_values()[i]);
        }
    }
    if (frames.empty()) {
        throw ConfigError("frame exclusion leaves no frames");
    }
    return Sequence(std::move(frames), seq.axis_kind(), std::move(axis));
}

Frame normalize01_frame(const Frame& f) {
    check_finite(f.values(), "normalize01_frame");
    const auto [lo_it, hi_it] = std::minmax_element(f.values().begin(), f.values().end());
    const double lo = *lo_it;
    const double span = *hi_it - lo;
    Frame out(f.width(), f.height(), 0.0);
    if (span > 0.0) {
        auto dst = out.values();
        auto src = f.values();
        for (std::size_t i = 0; i < src.size(); ++i) {
            dst[i] = (src[i] - lo) / span;
        }
    }
    return out;
}

}  // namespace irt
