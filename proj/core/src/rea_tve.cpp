#include "irt/rea_tve.hpp"

#include "irt/errors.hpp"
#include "irt/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace irt {

namespace {

double population_var(std::span<const double> x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(x.size());
}

}  // namespace

CvNorm cv_norm_from_moments(double mean, double stddev, std::size_t k, double mean_abs, const CvGuard& guard) {
    if (k == 0) {
        throw ConfigError("CV needs at least one sample");
    }
    CvNorm out{mean, stddev, 0.0, false};
    if (stddev == 0.0) {
        return out;
    }
    double cv = 0.0;
    // A mean that is zero up to rounding of the sample sum counts as zero.
    if (std::abs(mean) <= 1e-9 * mean_abs) {
        cv = std::min(stddev / (std::abs(mean) + guard.eps), guard.cv_max);
        out.saturated = true;
    } else {
        cv = stddev / std::abs(mean);
        if (cv > guard.cv_max) {
            cv = guard.cv_max;
            out.saturated = true;
        }
    }
    out.cv_norm = cv / std::sqrt(static_cast<double>(k));
    return out;
}

CvNorm cv_norm_of(std::span<const double> values, const CvGuard& guard) {
    if (values.empty()) {
        throw ConfigError("CV needs at least one sample");
    }
    double mean = 0.0, mean_abs = 0.0;
    for (double v : values) {
        mean += v;
        mean_abs += std::abs(v);
    }
    mean /= static_cast<double>(values.size());
    mean_abs /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double stddev = std::sqrt(ss / static_cast<double>(values.size()));
    return cv_norm_from_moments(mean, stddev, values.size(), mean_abs, guard);
}

std::vector<FunctionalStats> stage1(const SegmentedImage& s, const SamplingPlan& plan,
                                    MinkowskiNormalization normalization, Connectivity conn, const CvGuard& guard) {
    if (s.phi < 2) {
        throw ConfigError("stage 1 needs at least 2 phases");
    }
    if (plan.sizes.empty()) {
        throw ConfigError("no valid window sizes");
    }
    std::vector<WindowedFunctionals> phases;
    phases.reserve(s.phi);
    for (std::size_t p = 0; p < s.phi; ++p) {
        phases.emplace_back(s, static_cast<PhaseLabel>(p));
    }

    std::vector<FunctionalStats> out;
    out.reserve(s.phi * plan.sizes.size());
    std::array<std::vector<double>, 3> samples;
    for (const auto n : plan.sizes) {
        const auto windows = sample_windows(s.width, s.height, n, plan);
        for (std::size_t p = 0; p < s.phi; ++p) {
            for (auto& v : samples) v.clear();
            for (const auto& w : windows) {
                const auto t = scale(phases[p].raw(w, conn), normalization);
                samples[0].push_back(t.m0);
                samples[1].push_back(t.m1);
                samples[2].push_back(t.m2);
            }
            FunctionalStats st;
            st.phase = static_cast<PhaseLabel>(p);
            st.n = n;
            st.k = windows.size();
            for (std::size_t f = 0; f < 3; ++f) {
                st.functional[f] = cv_norm_of(samples[f], guard);
            }
            out.push_back(st);
        }
    }
    return out;
}

std::vector<TGICurve> stage2(std::span<const FunctionalStats> stats) {
    std::map<PhaseLabel, std::vector<const FunctionalStats*>> by_phase;
    for (const auto& s : stats) by_phase[s.phase].push_back(&s);

    std::vector<TGICurve> curves;
    for (auto& [phase, list] : by_phase) {
        std::sort(list.begin(), list.end(), [](auto* a, auto* b) { return a->n < b->n; });
        if (list.size() < 2) {
            throw ConfigError("TGI derivative needs at least 2 window sizes");
        }
        TGICurve c;
        c.phase = phase;
        for (const auto* s : list) {
            c.sizes.push_back(s->n);
            c.tgi.push_back(s->tgi());
        }
        for (std::size_t j = 0; j + 1 < c.sizes.size(); ++j) {
            if (c.sizes[j + 1] <= c.sizes[j]) {
                throw ConfigError("window sizes must be strictly increasing per phase");
            }
            c.dtgi.push_back((c.tgi[j + 1] - c.tgi[j]) / static_cast<double>(c.sizes[j + 1] - c.sizes[j]));
        }
        curves.push_back(std::move(c));
    }
    return curves;
}

double tve(std::span<const TGICurve> curves) {
    double e = 0.0;
    for (const auto& c : curves) {
        for (double d : c.dtgi) e += d * d;
    }
    return e;
}

std::size_t aic_onset(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 5) {
        throw ConfigError("AIC onset needs at least 5 samples");
    }
    constexpr double eps_v = 1e-20;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_t = 2;
    for (std::size_t t = 2; t <= n - 2; ++t) {
        const double aic = static_cast<double>(t) * std::log(population_var(x.subspan(0, t)) + eps_v) +
                           static_cast<double>(n - t - 1) * std::log(population_var(x.subspan(t)) + eps_v);
        if (aic < best) {
            best = aic;
            best_t = t;
        }
    }
    return best_t;
}

ReaTveResult rea(std::span<const TGICurve> curves, std::size_t n_max, double tail_tol) {
    if (curves.empty()) {
        throw ConfigError("REA needs at least one phase curve");
    }
    ReaTveResult res;
    res.tve = tve(curves);
    for (const auto& c : curves) {
        PhaseRea pr{n_max, false, 0};
        if (c.dtgi.size() >= 5) {
            const auto onset = aic_onset(c.dtgi);
            const auto [lo, hi] = std::minmax_element(c.dtgi.begin(), c.dtgi.end());
            const double range = *hi - *lo;
            const double tail_std = std::sqrt(population_var(std::span(c.dtgi).subspan(onset)));
            pr.onset = onset;
            if (range == 0.0 || tail_std < tail_tol * range) {
                pr.converged = true;
                pr.rea = c.sizes[onset + 1];
            }
        }
        res.rea = std::max(res.rea, pr.rea);
        res.phases.push_back(pr);
    }
    return res;
}

ReaTveResult evaluate_frame(const Frame& f, const ReaTveConfig& cfg) {
    const auto seg = segment(f, cfg.phi, cfg.method);
    SamplingPlan plan = cfg.plan;
    if (plan.sizes.empty()) {
        plan.sizes = size_schedule(f.width(), f.height(), cfg.phi, cfg.stride);
    }
    const auto stats = stage1(seg, plan, cfg.normalization, cfg.connectivity, cfg.guard);
    const auto curves = stage2(stats);
    return rea(curves, max_window_size(f.width(), f.height()), cfg.tail_tol);
}

std::pair<MetricCurve, MetricCurve> rea_tve_curve(const Sequence& seq, const ReaTveConfig& cfg, std::size_t workers) {
    std::vector<double> tve_values(seq.n_frames()), rea_values(seq.n_frames());
    parallel_for(seq.n_frames(), workers, [&](std::size_t i) {
        ReaTveConfig local = cfg;
        local.plan.seed = derive_seed(cfg.plan.seed, i);
        const auto r = evaluate_frame(seq.frame(i), local);
        tve_values[i] = r.tve;
        rea_values[i] = static_cast<double>(r.rea);
    });
    return {MetricCurve::make("TVE", seq.axis_values(), std::move(tve_values)),
            MetricCurve::make("REA", seq.axis_values(), std::move(rea_values))};
}

}  // namespace irt
