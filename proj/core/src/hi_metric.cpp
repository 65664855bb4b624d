#include "irt/hi_metric.hpp"

#include "irt/errors.hpp"
#include "irt/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace irt {

namespace {

std::vector<std::uint32_t> bin_indices(const Frame& normalized, std::size_t k) {
    std::vector<std::uint32_t> bins(normalized.size());
    const auto v = normalized.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] >= 0.0 && v[i] <= 1.0)) {
            throw DataError("histogram input must lie in [0,1]");
        }
        bins[i] = static_cast<std::uint32_t>(std::min<double>(static_cast<double>(k - 1), std::floor(v[i] * static_cast<double>(k))));
    }
    return bins;
}

// Accumulates squared deviations of per-cell bin probabilities from the reference.
class CellAccumulator {
public:
    CellAccumulator(const std::vector<double>& ref, std::size_t cell_pixels)
        : ref_(ref), sq_(ref.size(), 0.0), counts_(ref.size(), 0), inv_pixels_(1.0 / static_cast<double>(cell_pixels)) {}

    void add_cell(const std::vector<std::uint32_t>& bins, std::size_t width, std::size_t x0, std::size_t y0, std::size_t m) {
        std::fill(counts_.begin(), counts_.end(), 0u);
        for (std::size_t y = y0; y < y0 + m; ++y) {
            const auto* row = bins.data() + y * width;
            for (std::size_t x = x0; x < x0 + m; ++x) ++counts_[row[x]];
        }
        for (std::size_t i = 0; i < ref_.size(); ++i) {
            const double d = static_cast<double>(counts_[i]) * inv_pixels_ - ref_[i];
            sq_[i] += d * d;
        }
        ++n_cells_;
    }

    std::size_t n_cells() const noexcept { return n_cells_; }

    double hi(std::vector<double>* sigma = nullptr) const {
        double total = 0.0;
        if (sigma) sigma->assign(ref_.size(), 0.0);
        for (std::size_t i = 0; i < ref_.size(); ++i) {
            const double s = std::sqrt(sq_[i] / static_cast<double>(n_cells_));
            if (sigma) (*sigma)[i] = s;
            total += s;
        }
        return total;
    }

private:
    const std::vector<double>& ref_;
    std::vector<double> sq_;
    std::vector<std::uint32_t> counts_;
    double inv_pixels_;
    std::size_t n_cells_ = 0;
};

}  // namespace

HIMode parse_hi_mode(std::string_view text) {
    if (text == "static" || text == "static_grid") return HIMode::static_grid;
    if (text == "dynamic") return HIMode::dynamic;
    throw ConfigError("unknown HI mode '" + std::string(text) + "'");
}

std::string_view to_string(HIMode m) {
    return m == HIMode::static_grid ? "static" : "dynamic";
}

std::size_t bin_count(std::size_t n_obs) {
    if (n_obs < 4) {
        throw ConfigError("at least 4 observations are needed to choose a bin count");
    }
    const double n = static_cast<double>(n_obs);
    const double k = n_obs < 1000 ? std::sqrt(n) : 10.0 * std::log10(n);
    return static_cast<std::size_t>(std::lround(k));
}

std::size_t auto_cell_size(std::size_t bins) {
    std::size_t m = 1;
    while (m * m < 4 * bins) ++m;
    return m;
}

std::vector<double> global_hist(const Frame& normalized, std::size_t k) {
    if (k < 2) {
        throw ConfigError("histogram needs at least 2 bins");
    }
    if (normalized.size() == 0) {
        throw DataError("empty frame");
    }
    const auto bins = bin_indices(normalized, k);
    std::vector<double> p(k, 0.0);
    for (auto b : bins) p[b] += 1.0;
    for (auto& v : p) v /= static_cast<double>(bins.size());
    return p;
}

HIResult hi(const Frame& f, const HIConfig& cfg) {
    HIResult res;
    res.bins = cfg.bins.value_or(bin_count(f.size()));
    if (res.bins < 2) {
        throw ConfigError("HI needs at least 2 bins");
    }
    res.cell_size = cfg.cell_size.value_or(auto_cell_size(res.bins));
    const std::size_t m = res.cell_size;
    if (m == 0 || m * m < res.bins) {
        throw ConfigError("HI cell of " + std::to_string(m) + "x" + std::to_string(m) + " pixels holds fewer pixels than " +
                          std::to_string(res.bins) + " bins");
    }
    if (f.width() < m || f.height() < m) {
        throw ConfigError("frame smaller than one HI cell");
    }

    const Frame normalized = normalize01_frame(f);
    const auto bins = bin_indices(normalized, res.bins);
    res.global_probs.assign(res.bins, 0.0);
    for (auto b : bins) res.global_probs[b] += 1.0;
    for (auto& v : res.global_probs) v /= static_cast<double>(bins.size());

    CellAccumulator acc(res.global_probs, m * m);
    if (cfg.mode == HIMode::static_grid) {
        for (std::size_t y = 0; y + m <= f.height(); y += m) {
            for (std::size_t x = 0; x + m <= f.width(); x += m) {
                acc.add_cell(bins, f.width(), x, y, m);
            }
        }
        res.hi = acc.hi(&res.per_bin_sigma);
    } else {
        if (cfg.max_iters == 0 || cfg.conv_window == 0) {
            throw ConfigError("dynamic HI needs max_iters and conv_window >= 1");
        }
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<std::size_t> dx(0, f.width() - m), dy(0, f.height() - m);
        std::vector<double> history;
        history.reserve(cfg.max_iters);
        res.converged = false;
        for (std::size_t it = 0; it < cfg.max_iters; ++it) {
            const auto x = dx(rng);
            const auto y = dy(rng);
            acc.add_cell(bins, f.width(), x, y, m);
            history.push_back(acc.hi());
            if (history.size() > cfg.conv_window) {
                const double now = history.back();
                const double diff = std::abs(now - history[history.size() - 1 - cfg.conv_window]);
                if (diff < cfg.conv_rel_tol * now || (diff == 0.0 && now == 0.0)) {
                    res.converged = true;
                    break;
                }
            }
        }
        res.hi = acc.hi(&res.per_bin_sigma);
    }
    res.n_cells = acc.n_cells();
    return res;
}

MetricCurve hi_curve(const Sequence& seq, const HIConfig& cfg, std::size_t workers) {
    std::vector<double> values(seq.n_frames(), 0.0);
    parallel_for(seq.n_frames(), workers, [&](std::size_t i) {
        HIConfig local = cfg;
        local.seed = derive_seed(cfg.seed, i);
        values[i] = hi(seq.frame(i), local).hi;
    });
    return MetricCurve::make("HI", seq.axis_values(), std::move(values));
}

}  // namespace irt
