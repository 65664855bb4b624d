#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace irt {

/// Square window of side n with top-left pixel (x, y).
struct Window {
    std::size_t x = 0;
    std::size_t y = 0;
    std::size_t n = 0;
    bool operator==(const Window&) const = default;
    auto operator<=>(const Window&) const = default;
};

enum class SamplingStrategy { static_grid, random };

SamplingStrategy parse_sampling_strategy(std::string_view text);
std::string_view to_string(SamplingStrategy s);

/// Window count used for random sampling when not overridden; derived from
/// sample-size planning for a coefficient of variation of 0.5, confidence
/// interval width 0.125 and assurance 0.99.
inline constexpr std::size_t kDefaultNos = 439;

struct SamplingPlan {
    SamplingStrategy strategy = SamplingStrategy::random;
    std::size_t nos_set = kDefaultNos;
    std::uint64_t seed = 0;
    std::vector<std::size_t> sizes;
};

std::size_t min_window_size(std::size_t phi);
std::size_t max_window_size(std::size_t width, std::size_t height);

/// Window sizes n_min, n_min + stride, ... <= n_max with n_min = max(2, ceil(sqrt(phi))) and
/// n_max = floor(min(width, height) / 2).
std::vector<std::size_t> size_schedule(std::size_t width, std::size_t height, std::size_t phi, std::size_t stride = 1);

/// Window placements of side n. Random placements are distinct and drawn from a
/// generator seeded with derive_seed(plan.seed, n); all placements are returned when
/// there are no more than plan.nos_set of them.
std::vector<Window> sample_windows(std::size_t width, std::size_t height, std::size_t n, const SamplingPlan& plan);

}  // namespace irt
