#pragma once

#include "irt/core_model.hpp"
#include "irt/curve_tools.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace irt {

enum class HIMode { static_grid, dynamic };

HIMode parse_hi_mode(std::string_view text);
std::string_view to_string(HIMode m);

struct HIConfig {
    std::optional<std::size_t> bins;       ///< nullopt: bin_count(pixels)
    std::optional<std::size_t> cell_size;  ///< nullopt: smallest M with M*M >= 4k
    HIMode mode = HIMode::static_grid;
    std::uint64_t seed = 0;
    double conv_rel_tol = 1e-3;
    std::size_t conv_window = 10;
    std::size_t max_iters = 1000;
};

struct HIResult {
    double hi = 0.0;
    std::vector<double> per_bin_sigma;
    std::vector<double> global_probs;
    std::size_t n_cells = 0;
    std::size_t bins = 0;
    std::size_t cell_size = 0;
    bool converged = true;  ///< dynamic mode only
};

/// sqrt rule below 1000 observations, 10*log10 rule at and above.
std::size_t bin_count(std::size_t n_obs);
std::size_t auto_cell_size(std::size_t bins);

/// Reference probabilities over k equal-width bins of [0,1]; 1.0 falls in the last bin.
std::vector<double> global_hist(const Frame& normalized, std::size_t k);

/// Homogeneity index of mixture: sum over bins of the across-cell standard deviation
/// of cell bin probabilities around the whole-frame probabilities. The frame is min-max
/// normalized first.
HIResult hi(const Frame& f, const HIConfig& cfg);

/// HI per frame. Dynamic mode seeds frame i with derive_seed(cfg.seed, i).
MetricCurve hi_curve(const Sequence& seq, const HIConfig& cfg, std::size_t workers = 1);

}  // namespace irt
