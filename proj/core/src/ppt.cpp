#include "irt/ppt.hpp"

#include "irt/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

namespace irt {

namespace {

// fftw's planner is not thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

std::vector<std::complex<double>> direct_half(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n / 2 + 1);
    for (std::size_t u = 0; u < out.size(); ++u) {
        double re = 0.0, im = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            // reduce u*k modulo n before scaling to keep the angle exact-ish for long series
            const double angle = -2.0 * std::numbers::pi * static_cast<double>((u * k) % n) / static_cast<double>(n);
            re += x[k] * std::cos(angle);
            im += x[k] * std::sin(angle);
        }
        out[u] = {re / static_cast<double>(n), im / static_cast<double>(n)};
    }
    return out;
}

bool small_factors_only(std::size_t n) {
    for (std::size_t p : {2u, 3u, 5u, 7u}) {
        while (n % p == 0) n /= p;
    }
    return n == 1;
}

}  // namespace

double phase_of(std::complex<double> c) noexcept {
    if (c.real() == 0.0 && c.imag() == 0.0) {
        return 0.0;
    }
    const double p = std::atan2(c.imag(), c.real());
    return p <= -std::numbers::pi ? std::numbers::pi : p;
}

std::vector<std::complex<double>> dft_direct_full(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t u = 0; u < n; ++u) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>((u * k) % n) / static_cast<double>(n);
            acc += x[k] * std::polar(1.0, angle);
        }
        out[u] = acc / static_cast<double>(n);
    }
    return out;
}

std::vector<std::complex<double>> dft_real(std::span<const double> x, DftMethod method) {
    const std::size_t n = x.size();
    if (n < 2) {
        throw ConfigError("DFT needs at least 2 samples");
    }
    if (method == DftMethod::direct || (method == DftMethod::automatic && !small_factors_only(n) && n < 64)) {
        return direct_half(x);
    }
    std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
    std::unique_ptr<fftw_complex, FftwFree> out(
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1))));
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    std::copy(x.begin(), x.end(), in.get());
    fftw_execute(plan.get());
    std::vector<std::complex<double>> res(n / 2 + 1);
    for (std::size_t u = 0; u < res.size(); ++u) {
        res[u] = {out.get()[u][0] / static_cast<double>(n), out.get()[u][1] / static_cast<double>(n)};
    }
    return res;
}

SpectralPair ppt_transform(const Sequence& seq, DftMethod method) {
    if (seq.axis_kind() != AxisKind::time) {
        throw ConfigError("pulse phase transform needs a time-indexed sequence");
    }
    const std::size_t n = seq.n_frames();
    if (n < 2) {
        throw ConfigError("pulse phase transform needs at least 2 frames");
    }
    const auto& t = seq.axis_values();
    const double dt = (t.back() - t.front()) / static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs((t[i] - t[i - 1]) - dt) > 1e-6 * dt) {
            throw DataError("time axis is not uniformly sampled (step " + std::to_string(i) + ")");
        }
    }

    const std::size_t w = seq.width(), h = seq.height(), pixels = w * h, bins = n / 2 + 1;
    std::vector<std::vector<double>> amp(bins, std::vector<double>(pixels)), ph(bins, std::vector<double>(pixels));

    const bool use_fft = method == DftMethod::fft || (method == DftMethod::automatic && (small_factors_only(n) || n >= 64));
    if (use_fft) {
        // one batched plan over all pixels: input is pixel-major time series
        std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * n * pixels)));
        std::unique_ptr<fftw_complex, FftwFree> out(
            static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins * pixels)));
        Plan plan;
        {
            std::lock_guard lock(planner_mutex());
            const int len = static_cast<int>(n);
            plan.reset(fftw_plan_many_dft_r2c(1, &len, static_cast<int>(pixels), in.get(), nullptr, 1, len, out.get(),
                                              nullptr, 1, static_cast<int>(bins), FFTW_ESTIMATE));
        }
        for (std::size_t k = 0; k < n; ++k) {
            const auto v = seq.frame(k).values();
            for (std::size_t p = 0; p < pixels; ++p) in.get()[p * n + k] = v[p];
        }
        fftw_execute(plan.get());
        const double inv_n = 1.0 / static_cast<double>(n);
        for (std::size_t p = 0; p < pixels; ++p) {
            for (std::size_t u = 0; u < bins; ++u) {
                const auto& c = out.get()[p * bins + u];
                const std::complex<double> z{c[0] * inv_n, c[1] * inv_n};
                amp[u][p] = std::abs(z);
                ph[u][p] = phase_of(z);
            }
        }
    } else {
        std::vector<double> series(n);
        for (std::size_t p = 0; p < pixels; ++p) {
            for (std::size_t k = 0; k < n; ++k) series[k] = seq.frame(k).values()[p];
            const auto spec = direct_half(series);
            for (std::size_t u = 0; u < bins; ++u) {
                amp[u][p] = std::abs(spec[u]);
                ph[u][p] = phase_of(spec[u]);
            }
        }
    }

    SpectralPair out;
    const double frame_rate = 1.0 / dt;
    for (std::size_t u = 0; u < bins; ++u) {
        out.frequencies.push_back(static_cast<double>(u) * frame_rate / static_cast<double>(n));
    }
    std::vector<Frame> amp_frames, phase_frames;
    for (std::size_t u = 0; u < bins; ++u) {
        amp_frames.emplace_back(w, h, std::move(amp[u]));
        phase_frames.emplace_back(w, h, std::move(ph[u]));
    }
    out.amplitude = Sequence(std::move(amp_frames), AxisKind::frequency, out.frequencies);
    out.phase = Sequence(std::move(phase_frames), AxisKind::frequency, out.frequencies);
    return out;
}

}  // namespace irt
