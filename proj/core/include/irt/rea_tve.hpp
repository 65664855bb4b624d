#pragma once

#include "irt/core_model.hpp"
#include "irt/curve_tools.hpp"
#include "irt/minkowski.hpp"
#include "irt/segmentation.hpp"
#include "irt/window_sampling.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace irt {

/// Guard for the coefficient of variation when the mean vanishes.
struct CvGuard {
    double eps = 1e-12;
    double cv_max = 1e6;
};

/// Statistics of one Minkowski functional over the windows of one size.
struct CvNorm {
    double mean = 0.0;
    double stddev = 0.0;  ///< population standard deviation
    double cv_norm = 0.0; ///< (stddev / |mean|) / sqrt(k)
    bool saturated = false;
};

/// Normalized coefficient of variation from frozen moments. stddev == 0 gives 0;
/// a zero mean with nonzero spread saturates at guard.cv_max / sqrt(k).
CvNorm cv_norm_from_moments(double mean, double stddev, std::size_t k, double mean_abs, const CvGuard& guard = {});

/// Moments and normalized CV of a sample.
CvNorm cv_norm_of(std::span<const double> values, const CvGuard& guard = {});

struct FunctionalStats {
    PhaseLabel phase = 0;
    std::size_t n = 0;  ///< window side
    std::size_t k = 0;  ///< windows evaluated
    std::array<CvNorm, 3> functional{};  ///< m0, m1, m2

    double tgi() const noexcept { return functional[0].cv_norm + functional[1].cv_norm + functional[2].cv_norm; }
};

struct TGICurve {
    PhaseLabel phase = 0;
    std::vector<std::size_t> sizes;
    std::vector<double> tgi;
    std::vector<double> dtgi;  ///< forward difference divided by the size step, length sizes-1
};

struct PhaseRea {
    std::size_t rea = 0;
    bool converged = false;
    std::size_t onset = 0;  ///< AIC split index into dtgi (0 when not evaluated)
};

struct ReaTveResult {
    double tve = 0.0;
    std::size_t rea = 0;
    std::vector<PhaseRea> phases;
};

struct ReaTveConfig {
    std::size_t phi = 4;
    SegmentationMethod method = SegmentationMethod::kmeans1d;
    SamplingPlan plan;  ///< empty plan.sizes: size_schedule(width, height, phi, stride)
    std::size_t stride = 1;
    MinkowskiNormalization normalization = MinkowskiNormalization::raw;
    Connectivity connectivity = Connectivity::eight;
    double tail_tol = 0.05;
    CvGuard guard;
};

/// Per (phase, size) statistics. Windows are drawn once per size and shared by all phases.
std::vector<FunctionalStats> stage1(const SegmentedImage& s, const SamplingPlan& plan,
                                    MinkowskiNormalization normalization = MinkowskiNormalization::raw,
                                    Connectivity conn = Connectivity::eight, const CvGuard& guard = {});

/// TGI and its derivative per phase; stats may come in any order.
std::vector<TGICurve> stage2(std::span<const FunctionalStats> stats);

/// Sum over phases and sizes of squared TGI derivatives.
double tve(std::span<const TGICurve> curves);

/// Split t in [2, N-2] minimizing t*ln(var(x[0,t)) + 1e-20) + (N-t-1)*ln(var(x[t,N)) + 1e-20).
/// Ties resolve to the smallest t. The returned value is the first index of the second segment.
std::size_t aic_onset(std::span<const double> series);

/// Phase-wise REA via AIC onset of the TGI derivative, falling back to n_max when the
/// tail after the onset has not settled; the overall REA is the maximum over phases.
ReaTveResult rea(std::span<const TGICurve> curves, std::size_t n_max, double tail_tol = 0.05);

/// Segmentation, stage 1, stage 2, TVE and REA for one frame.
ReaTveResult evaluate_frame(const Frame& f, const ReaTveConfig& cfg);

/// TVE and REA curves; frame i uses plan seed derive_seed(cfg.plan.seed, i).
std::pair<MetricCurve, MetricCurve> rea_tve_curve(const Sequence& seq, const ReaTveConfig& cfg,
                                                  std::size_t workers = 1);

}  // namespace irt
