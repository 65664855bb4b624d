#pragma once

#include "irt/core_model.hpp"
#include "irt/segmentation.hpp"
#include "irt/window_sampling.hpp"

#include <cstdint>
#include <vector>

namespace irt {

enum class MinkowskiNormalization { raw, paper };
enum class Connectivity { four = 4, eight = 8 };

MinkowskiNormalization parse_normalization(std::string_view text);
std::string_view to_string(MinkowskiNormalization n);

/// Integer counts on the cubical complex of foreground pixels.
struct RawFunctionals {
    std::int64_t area = 0;      ///< foreground pixels
    std::int64_t boundary = 0;  ///< unit edges between foreground and background or border
    std::int64_t euler = 0;     ///< components minus holes under the chosen foreground connectivity
    bool operator==(const RawFunctionals&) const = default;
};

struct MinkowskiTriple {
    double m0 = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    MinkowskiNormalization normalization = MinkowskiNormalization::raw;
};

/// raw: (area, boundary, euler); paper: (area, boundary / 2pi, euler / pi).
MinkowskiTriple scale(const RawFunctionals& raw, MinkowskiNormalization normalization);

RawFunctionals raw_functionals(const Mask& m, Connectivity conn = Connectivity::eight);

MinkowskiTriple functionals(const Mask& m, MinkowskiNormalization normalization = MinkowskiNormalization::raw,
                            Connectivity conn = Connectivity::eight);

/// Constant-time Minkowski functionals of any square window of one binary phase.
/// The window border counts as background.
class WindowedFunctionals {
public:
    explicit WindowedFunctionals(const Mask& m);
    WindowedFunctionals(const SegmentedImage& s, PhaseLabel phase);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }

    RawFunctionals raw(const Window& w, Connectivity conn = Connectivity::eight) const;

private:
    // (rows + 1) x (cols + 1) inclusive prefix sums.
    struct Table {
        std::size_t rows = 0;
        std::size_t cols = 0;
        std::vector<std::int32_t> data;
        void build(std::size_t r, std::size_t c, const std::vector<std::int32_t>& cells);
        // Sum over rows [r0, r1] and cols [c0, c1], inclusive; empty ranges sum to 0.
        std::int64_t sum(std::ptrdiff_t r0, std::ptrdiff_t c0, std::ptrdiff_t r1, std::ptrdiff_t c1) const noexcept;
    };

    void build(const std::vector<std::uint8_t>& fg);

    std::size_t width_ = 0;
    std::size_t height_ = 0;
    Table pixel_;      // foreground indicator
    Table hxor_;       // P(y,x) xor P(y,x+1)
    Table vxor_;       // P(y,x) xor P(y+1,x)
    Table quad13_;     // [1 foreground in quad] - [3 foreground in quad]
    Table diagonal_;   // quad holds exactly a diagonal pair
};

MinkowskiTriple functionals_window(const SegmentedImage& s, const Window& w, PhaseLabel phase,
                                   MinkowskiNormalization normalization = MinkowskiNormalization::raw,
                                   Connectivity conn = Connectivity::eight);

}  // namespace irt
