#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace irt {

/// Runs body(i) for i in [0, n) on up to `workers` threads (0 = hardware concurrency).
/// Each index is visited exactly once; the first exception thrown is rethrown.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& body);

/// Stateless 64-bit mix used to derive independent sub-seeds from (seed, index) pairs.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace irt
