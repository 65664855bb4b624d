#include "irt/window_sampling.hpp"

#include "irt/errors.hpp"
#include "irt/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>

namespace irt {

namespace {

// Unbiased draw in [0, bound) that does not depend on the standard library's distributions.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
        const std::uint64_t r = rng();
        if (r >= threshold) {
            return r % bound;
        }
    }
}

}  // namespace

SamplingStrategy parse_sampling_strategy(std::string_view text) {
    if (text == "random") return SamplingStrategy::random;
    if (text == "static_grid" || text == "static") return SamplingStrategy::static_grid;
    throw ConfigError("unknown sampling strategy '" + std::string(text) + "'");
}

std::string_view to_string(SamplingStrategy s) {
    return s == SamplingStrategy::random ? "random" : "static_grid";
}

std::size_t min_window_size(std::size_t phi) {
    const auto root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(phi)) - 1e-12));
    return std::max<std::size_t>(2, root);
}

std::size_t max_window_size(std::size_t width, std::size_t height) {
    return std::min(width, height) / 2;
}

std::vector<std::size_t> size_schedule(std::size_t width, std::size_t height, std::size_t phi, std::size_t stride) {
    if (stride == 0) {
        throw ConfigError("window size stride must be positive");
    }
    const auto n_min = min_window_size(phi);
    const auto n_max = max_window_size(width, height);
    if (n_max < n_min) {
        throw ConfigError("image " + std::to_string(width) + "x" + std::to_string(height) +
                          " too small for minimum window size " + std::to_string(n_min));
    }
    std::vector<std::size_t> sizes;
    for (auto n = n_min; n <= n_max; n += stride) {
        sizes.push_back(n);
    }
    return sizes;
}

std::vector<Window> sample_windows(std::size_t width, std::size_t height, std::size_t n, const SamplingPlan& plan) {
    if (n == 0 || n > std::min(width, height)) {
        throw ConfigError("window size " + std::to_string(n) + " out of range for " + std::to_string(width) + "x" +
                          std::to_string(height));
    }
    std::vector<Window> out;
    if (plan.strategy == SamplingStrategy::static_grid) {
        for (std::size_t j = 0; j < height / n; ++j) {
            for (std::size_t i = 0; i < width / n; ++i) {
                out.push_back({i * n, j * n, n});
            }
        }
        return out;
    }

    if (plan.nos_set == 0) {
        throw ConfigError("NOS must be at least 1");
    }
    const std::size_t nx = width - n + 1;
    const std::size_t total = nx * (height - n + 1);
    auto to_window = [&](std::size_t idx) { return Window{idx % nx, idx / nx, n}; };

    if (total <= plan.nos_set) {
        out.reserve(total);
        for (std::size_t idx = 0; idx < total; ++idx) out.push_back(to_window(idx));
        return out;
    }

    std::mt19937_64 rng(derive_seed(plan.seed, n));
    const std::size_t k = plan.nos_set;
    out.reserve(k);
    if (total <= 8 * k) {
        // partial Fisher-Yates over the position index space
        std::vector<std::size_t> idx(total);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        for (std::size_t i = 0; i < k; ++i) {
            const auto j = i + static_cast<std::size_t>(uniform_below(rng, total - i));
            std::swap(idx[i], idx[j]);
            out.push_back(to_window(idx[i]));
        }
    } else {
        std::unordered_set<std::size_t> seen;
        seen.reserve(2 * k);
        while (out.size() < k) {
            const auto idx = static_cast<std::size_t>(uniform_below(rng, total));
            if (seen.insert(idx).second) {
                out.push_back(to_window(idx));
            }
        }
    }
    return out;
}

}  // namespace irt
