#include "irt/phantom.hpp"

#include "irt/errors.hpp"
#include "irt/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace irt {

double LayerSpec::effusivity() const noexcept { return std::sqrt(conductivity * density * specific_heat); }

namespace materials {

LayerSpec cfrp(double thickness) { return {thickness, 1602.0, 930.0, 0.35}; }
LayerSpec fep(double thickness) { return {thickness, 2200.0, 1145.0, 0.23}; }
LayerSpec air(double thickness) { return {thickness, 1.204, 1006.0, 0.026}; }

LayerSpec by_name(const std::string& name, double thickness) {
    if (name == "cfrp") return cfrp(thickness);
    if (name == "fep") return fep(thickness);
    if (name == "air") return air(thickness);
    throw ConfigError("unknown material '" + name + "' (expected cfrp, fep or air)");
}

}  // namespace materials

namespace {

void check_layer(const LayerSpec& l) {
    auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!ok(l.thickness) || !ok(l.density) || !ok(l.specific_heat) || !ok(l.conductivity))
        throw ConfigError("layer properties must be positive and finite");
}

double total_thickness(const std::vector<LayerSpec>& layers) {
    double s = 0.0;
    for (const auto& l : layers) s += l.thickness;
    return s;
}

// Solves a tridiagonal system in place (Thomas). lower[0] and upper[n-1] are unused.
template <class T>
void thomas(std::vector<T>& lower, std::vector<T>& diag, std::vector<T>& upper, std::vector<T>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const T m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

// Quadratic profile through cells 0 and 1 (same width) whose slope at the face matches the
// inflowing flux; `flux_term` is 3 q h / (8 lambda).
template <class T>
T surface_value(const std::vector<T>& temp, T flux_term = T{}) {
    return temp[0] - (temp[1] - temp[0]) / 8.0 + flux_term;
}

}  // namespace

double common_cell_size(std::span<const std::vector<LayerSpec>> stacks, double earliest_time, const SolverOptions& opts) {
    if (stacks.empty() || stacks.front().empty()) throw ConfigError("layer stack is empty");
    if (!(earliest_time > 0.0)) throw ConfigError("earliest time must be positive");
    double h = opts.max_cell_size > 0.0 ? opts.max_cell_size
                                        : std::sqrt(stacks.front().front().diffusivity() * earliest_time) / 8.0;
    for (const auto& st : stacks)
        for (const auto& l : st) {
            check_layer(l);
            h = std::min(h, l.thickness / static_cast<double>(std::max<std::size_t>(opts.cells_per_thinnest_layer, 1)));
        }
    return h;
}

double common_time_step(std::span<const std::vector<LayerSpec>> stacks, const SolverOptions& opts) {
    if (stacks.empty() || stacks.front().empty()) throw ConfigError("layer stack is empty");
    double tau = std::numeric_limits<double>::infinity();
    for (const auto& st : stacks)
        for (const auto& l : st) {
            check_layer(l);
            tau = std::min(tau, l.diffusion_time());
        }
    if (opts.dt_max > 0.0) {
        if (opts.dt_max > 0.1 * tau) throw ConfigError("dt_max exceeds 0.1 x the shortest layer diffusion time");
        return opts.dt_max;
    }
    return 0.1 * tau;
}

std::vector<LayerSpec> insert_defect(const std::vector<LayerSpec>& plate, double depth, const LayerSpec& material,
                                     double thickness) {
    for (const auto& l : plate) check_layer(l);
    if (plate.empty()) throw ConfigError("plate has no layers");
    if (!(depth > 0.0) || !(thickness > 0.0)) throw ConfigError("defect depth and thickness must be positive");
    if (depth + thickness >= total_thickness(plate))
        throw ConfigError("defect depth + thickness must be less than the plate thickness");

    std::vector<LayerSpec> out;
    const double top = depth, bottom = depth + thickness;
    double z = 0.0;
    bool inserted = false;
    for (const auto& l : plate) {
        const double a = z, b = z + l.thickness;
        z = b;
        if (b <= top || a >= bottom) {
            if (a >= bottom && !inserted) {
                LayerSpec d = material;
                d.thickness = thickness;
                out.push_back(d);
                inserted = true;
            }
            out.push_back(l);
            continue;
        }
        if (a < top) {
            LayerSpec part = l;
            part.thickness = top - a;
            out.push_back(part);
        }
        if (!inserted) {
            LayerSpec d = material;
            d.thickness = thickness;
            out.push_back(d);
            inserted = true;
        }
        if (b > bottom) {
            LayerSpec part = l;
            part.thickness = b - bottom;
            out.push_back(part);
        }
    }
    return out;
}

HeatSolver1D::HeatSolver1D(std::vector<LayerSpec> layers, const SolverOptions& opts, double earliest_time)
    : layers_(std::move(layers)), opts_(opts) {
    if (layers_.empty()) throw ConfigError("layer stack is empty");
    for (const auto& l : layers_) check_layer(l);
    if (opts_.cells_per_thinnest_layer < 20) throw ConfigError("at least 20 cells per layer are required");
    if (!(opts_.relative_step > 0.0) || opts_.steps_per_period < 16)
        throw ConfigError("relative_step must be positive and steps_per_period at least 16");
    if (!(earliest_time > 0.0)) throw ConfigError("earliest time must be positive");

    double thinnest = layers_.front().thickness, min_tau = layers_.front().diffusion_time();
    for (const auto& l : layers_) {
        thinnest = std::min(thinnest, l.thickness);
        min_tau = std::min(min_tau, l.diffusion_time());
    }
    dt_limit_ = 0.1 * min_tau;
    if (opts_.dt_max > 0.0) {
        if (opts_.dt_max > dt_limit_)
            throw ConfigError("dt_max exceeds 0.1 x the shortest layer diffusion time");
        dt_limit_ = opts_.dt_max;
    }

    // The top-layer thermal front at the earliest time must span several cells.
    double h = thinnest / static_cast<double>(opts_.cells_per_thinnest_layer);
    const double h_early = std::sqrt(layers_.front().diffusivity() * earliest_time) / 8.0;
    h = std::min(h, opts_.max_cell_size > 0.0 ? opts_.max_cell_size : h_early);

    std::vector<double> size, lambda;
    for (const auto& l : layers_) {
        const auto n = std::max<std::size_t>(opts_.cells_per_thinnest_layer,
                                             static_cast<std::size_t>(std::ceil(l.thickness / h - 1e-9)));
        const double hl = l.thickness / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            size.push_back(hl);
            lambda.push_back(l.conductivity);
            heat_.push_back(l.volumetric_heat() * hl);
        }
    }
    cond_.resize(heat_.size() - 1);
    for (std::size_t i = 0; i + 1 < heat_.size(); ++i)
        cond_[i] = 1.0 / (size[i] / (2.0 * lambda[i]) + size[i + 1] / (2.0 * lambda[i + 1]));
    first_cell_time_ = heat_[0] / cond_[0];
    surface_resistance_ = 3.0 * size[0] / (8.0 * lambda[0]);

    double s = 0.0;
    for (const auto& l : layers_) s += std::sqrt(l.diffusion_time());
    settle_time_ = s * s / (std::numbers::pi * std::numbers::pi);
}

template <class Observer>
void HeatSolver1D::march_pulse(double fluence, std::span<const double> times, Observer&& observe) const {
    if (!std::isfinite(fluence)) throw ConfigError("fluence must be finite");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0) || (i > 0 && !(times[i] > times[i - 1])))
            throw ConfigError("output times must be positive and strictly increasing");
    }
    const std::size_t n = heat_.size();
    std::vector<double> temp(n, 0.0), lo(n), di(n), up(n), rhs(n);
    temp[0] = fluence / heat_[0];

    const double dt0 = 0.5 * first_cell_time_;
    double t = 0.0;
    std::size_t step = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        while (t < times[k]) {
            double dt = std::min({dt_limit_, std::max(dt0, opts_.relative_step * t), times[k] - t});
            if (times[k] - t - dt < 1e-3 * dt) dt = times[k] - t;
            // Two implicit Euler steps damp the stiff modes of the concentrated initial state.
            const double theta = step < 2 ? 1.0 : 0.5;
            for (std::size_t i = 0; i < n; ++i) {
                const double gl = i > 0 ? cond_[i - 1] : 0.0;
                const double gr = i + 1 < n ? cond_[i] : 0.0;
                const double c = heat_[i] / dt;
                lo[i] = -theta * gl;
                up[i] = -theta * gr;
                di[i] = c + theta * (gl + gr);
                double flow = 0.0;
                if (i > 0) flow += gl * (temp[i - 1] - temp[i]);
                if (i + 1 < n) flow += gr * (temp[i + 1] - temp[i]);
                rhs[i] = c * temp[i] + (1.0 - theta) * flow;
            }
            thomas(lo, di, up, rhs);
            temp.swap(rhs);
            t = (dt == times[k] - t) ? times[k] : t + dt;
            ++step;
        }
        observe(k, temp);
    }
}

std::vector<double> HeatSolver1D::pulse_response(double fluence, std::span<const double> times) const {
    std::vector<double> out(times.size());
    march_pulse(fluence, times, [&](std::size_t k, const std::vector<double>& temp) { out[k] = surface_value(temp); });
    return out;
}

std::vector<double> HeatSolver1D::pulse_energy(double fluence, std::span<const double> times) const {
    std::vector<double> out(times.size());
    march_pulse(fluence, times, [&](std::size_t k, const std::vector<double>& temp) {
        double e = 0.0;
        for (std::size_t i = 0; i < temp.size(); ++i) e += heat_[i] * temp[i];
        out[k] = e;
    });
    return out;
}

std::complex<double> HeatSolver1D::periodic_response(double q0, double frequency) const {
    if (!(frequency > 0.0) || !std::isfinite(frequency)) throw ConfigError("frequency must be positive");
    const double period = 1.0 / frequency;
    const std::size_t spp = opts_.steps_per_period;
    const double dt = period / static_cast<double>(spp);
    const double omega = 2.0 * std::numbers::pi * frequency;
    constexpr std::size_t demod_periods = 2;
    const auto settle = static_cast<std::size_t>(std::ceil(10.0 * settle_time_ / period));
    const std::size_t periods = std::max<std::size_t>(4, settle + demod_periods);
    const std::size_t total = periods * spp, demod_from = total - demod_periods * spp;

    const std::size_t n = heat_.size();
    std::vector<double> temp(n, 0.0), lo(n), di(n), up(n), rhs(n);
    double a = 0.0, b = 0.0;
    for (std::size_t s = 0; s < total; ++s) {
        const double t0 = static_cast<double>(s) * dt, t1 = static_cast<double>(s + 1) * dt;
        const double q = 0.5 * q0 * (std::sin(omega * t0) + std::sin(omega * t1));
        for (std::size_t i = 0; i < n; ++i) {
            const double gl = i > 0 ? cond_[i - 1] : 0.0;
            const double gr = i + 1 < n ? cond_[i] : 0.0;
            const double c = heat_[i] / dt;
            lo[i] = -0.5 * gl;
            up[i] = -0.5 * gr;
            di[i] = c + 0.5 * (gl + gr);
            double flow = 0.0;
            if (i > 0) flow += gl * (temp[i - 1] - temp[i]);
            if (i + 1 < n) flow += gr * (temp[i + 1] - temp[i]);
            rhs[i] = c * temp[i] + 0.5 * flow;
        }
        rhs[0] += q;
        thomas(lo, di, up, rhs);
        temp.swap(rhs);
        if (s + 1 > demod_from) {
            const double ts = surface_value(temp, surface_resistance_ * q0 * std::sin(omega * t1));
            a += ts * std::sin(omega * t1);
            b += ts * std::cos(omega * t1);
        }
    }
    const double norm = 2.0 / static_cast<double>(demod_periods * spp);
    return {a * norm, b * norm};
}

std::complex<double> HeatSolver1D::harmonic_response(double q0, double frequency) const {
    if (!(frequency > 0.0) || !std::isfinite(frequency)) throw ConfigError("frequency must be positive");
    using cd = std::complex<double>;
    const double omega = 2.0 * std::numbers::pi * frequency;
    const std::size_t n = heat_.size();
    std::vector<cd> lo(n), di(n), up(n), rhs(n, cd{});
    for (std::size_t i = 0; i < n; ++i) {
        const double gl = i > 0 ? cond_[i - 1] : 0.0;
        const double gr = i + 1 < n ? cond_[i] : 0.0;
        lo[i] = -gl;
        up[i] = -gr;
        di[i] = cd{gl + gr, omega * heat_[i]};
    }
    rhs[0] = q0;
    thomas(lo, di, up, rhs);
    return surface_value(rhs, cd{surface_resistance_ * q0, 0.0});
}

std::vector<double> fd_solve(const std::vector<LayerSpec>& layers, double fluence, std::span<const double> times,
                             const SolverOptions& opts) {
    if (times.empty()) return {};
    return HeatSolver1D(layers, opts, times.front()).pulse_response(fluence, times);
}

double grid_refinement_change(const std::vector<LayerSpec>& layers, double fluence, std::span<const double> times,
                              const SolverOptions& opts) {
    if (times.empty()) return 0.0;
    const HeatSolver1D coarse(layers, opts, times.front());
    SolverOptions fine_opts = opts;
    fine_opts.cells_per_thinnest_layer *= 2;
    fine_opts.relative_step /= 2.0;
    fine_opts.dt_max = coarse.dt_limit() / 2.0;
    const double h_early = std::sqrt(layers.front().diffusivity() * times.front()) / 8.0;
    fine_opts.max_cell_size = (opts.max_cell_size > 0.0 ? opts.max_cell_size : h_early) / 2.0;
    const HeatSolver1D fine(layers, fine_opts, times.front());

    const auto a = coarse.pulse_response(fluence, times);
    const auto b = fine.pulse_response(fluence, times);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]) / std::abs(b[i]));
    return worst;
}

double diffusion_length(double diffusivity, double frequency) {
    if (!(frequency > 0.0)) throw ConfigError("frequency must be positive");
    if (!(diffusivity > 0.0)) throw ConfigError("diffusivity must be positive");
    return std::sqrt(diffusivity / (std::numbers::pi * frequency));
}

MetricCurve contrast_curve(const std::vector<LayerSpec>& reference, const std::vector<LayerSpec>& defect,
                           std::span<const double> frequencies, const SolverOptions& opts) {
    if (frequencies.empty()) throw ConfigError("no frequencies given");
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        if (!(frequencies[i] > 0.0) || (i > 0 && !(frequencies[i] > frequencies[i - 1])))
            throw ConfigError("frequencies must be positive and strictly increasing");
    }
    if (reference.empty() || defect.empty()) throw ConfigError("layer stack is empty");
    // The shortest period sets the spatial resolution near the surface.
    const double earliest = 1.0 / (std::numbers::pi * frequencies.back());
    const std::vector<LayerSpec> both[] = {reference, defect};
    SolverOptions shared = opts;
    shared.max_cell_size = common_cell_size(both, earliest, opts);
    const HeatSolver1D ref_solver(reference, shared, earliest);
    const HeatSolver1D def_solver(defect, shared, earliest);
    const double alpha = reference.front().diffusivity();

    std::vector<double> values(frequencies.size());
    parallel_for(frequencies.size(), 0, [&](std::size_t i) {
        const double f = frequencies[i];
        const double lag_ref = -std::arg(ref_solver.periodic_response(1.0, f));
        const double lag_def = -std::arg(def_solver.periodic_response(1.0, f));
        values[i] = diffusion_length(alpha, f) * (lag_def - lag_ref) / std::numbers::pi;
    });
    return MetricCurve::make("contrast", {frequencies.begin(), frequencies.end()}, std::move(values));
}

std::size_t PhantomSpec::n_frames() const {
    return static_cast<std::size_t>(std::llround(duration * frame_rate));
}

std::vector<double> PhantomSpec::frame_times() const {
    std::vector<double> t(n_frames());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i + 1) / frame_rate;
    return t;
}

void validate(const PhantomSpec& spec) {
    if (spec.width == 0 || spec.height == 0) throw ConfigError("phantom width and height must be positive");
    if (spec.plate.empty()) throw ConfigError("phantom plate has no layers");
    for (const auto& l : spec.plate) check_layer(l);
    if (!(spec.frame_rate > 0.0) || !(spec.duration > 0.0)) throw ConfigError("frame_rate and duration must be positive");
    if (spec.n_frames() < 2) throw ConfigError("phantom needs at least 2 frames");
    if (!(spec.pixel_pitch > 0.0)) throw ConfigError("pixel_pitch must be positive");
    if (!std::isfinite(spec.fluence) || !(spec.fluence > 0.0)) throw ConfigError("fluence must be positive");
    if (!std::isfinite(spec.a1) || !std::isfinite(spec.a2)) throw ConfigError("a1 and a2 must be finite");
    if (!(spec.noise_std >= 0.0)) throw ConfigError("noise_std must be non-negative");
    if (!(spec.lateral_blur_px >= 0.0)) throw ConfigError("lateral_blur_px must be non-negative");
    const double plate = total_thickness(spec.plate);
    for (std::size_t i = 0; i < spec.defects.size(); ++i) {
        const auto& d = spec.defects[i];
        if (!d.rect.fits(spec.width, spec.height)) throw ConfigError("defect rectangle outside the frame");
        if (!(d.depth > 0.0) || !(d.thickness > 0.0)) throw ConfigError("defect depth and thickness must be positive");
        if (d.depth + d.thickness >= plate)
            throw ConfigError("defect depth + thickness must be less than the plate thickness");
        LayerSpec m = d.material;
        m.thickness = d.thickness;
        check_layer(m);
        for (std::size_t j = 0; j < i; ++j) {
            const auto& r = spec.defects[j].rect;
            const bool apart = d.rect.x0 + d.rect.w <= r.x0 || r.x0 + r.w <= d.rect.x0 ||
                               d.rect.y0 + d.rect.h <= r.y0 || r.y0 + r.h <= d.rect.y0;
            if (!apart) throw ConfigError("defect rectangles overlap");
        }
    }
}

Mask reference_mask(std::size_t width, std::size_t height, std::span<const Rect> defects, std::size_t gap) {
    Mask m(width, height, true);
    const auto g = static_cast<long long>(gap);
    for (const auto& r : defects) {
        const long long x0 = static_cast<long long>(r.x0) - g + 1, x1 = static_cast<long long>(r.x0 + r.w) + g - 1;
        const long long y0 = static_cast<long long>(r.y0) - g + 1, y1 = static_cast<long long>(r.y0 + r.h) + g - 1;
        for (long long y = std::max(0LL, y0); y < std::min<long long>(static_cast<long long>(height), y1); ++y)
            for (long long x = std::max(0LL, x0); x < std::min<long long>(static_cast<long long>(width), x1); ++x)
                m.set(static_cast<std::size_t>(y), static_cast<std::size_t>(x), false);
    }
    // gap == 0 still has to leave the defects themselves out.
    for (const auto& r : defects)
        for (std::size_t y = r.y0; y < r.y0 + r.h && y < height; ++y)
            for (std::size_t x = r.x0; x < r.x0 + r.w && x < width; ++x) m.set(y, x, false);
    return m;
}

namespace {

std::vector<double> gaussian_kernel(double sigma) {
    const auto radius = static_cast<std::size_t>(std::ceil(3.0 * sigma));
    std::vector<double> k(2 * radius + 1);
    double s = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        const double d = static_cast<double>(i) - static_cast<double>(radius);
        k[i] = std::exp(-0.5 * d * d / (sigma * sigma));
        s += k[i];
    }
    for (auto& v : k) v /= s;
    return k;
}

void blur(Frame& f, const std::vector<double>& k) {
    const auto r = static_cast<long long>(k.size() / 2);
    const auto w = static_cast<long long>(f.width()), h = static_cast<long long>(f.height());
    Frame tmp(f.width(), f.height());
    for (long long y = 0; y < h; ++y)
        for (long long x = 0; x < w; ++x) {
            double s = 0.0;
            for (long long j = -r; j <= r; ++j)
                s += k[static_cast<std::size_t>(j + r)] *
                     f(static_cast<std::size_t>(y), static_cast<std::size_t>(std::clamp(x + j, 0LL, w - 1)));
            tmp(static_cast<std::size_t>(y), static_cast<std::size_t>(x)) = s;
        }
    for (long long y = 0; y < h; ++y)
        for (long long x = 0; x < w; ++x) {
            double s = 0.0;
            for (long long j = -r; j <= r; ++j)
                s += k[static_cast<std::size_t>(j + r)] *
                     tmp(static_cast<std::size_t>(std::clamp(y + j, 0LL, h - 1)), static_cast<std::size_t>(x));
            f(static_cast<std::size_t>(y), static_cast<std::size_t>(x)) = s;
        }
}

}  // namespace

Phantom generate_phantom(const PhantomSpec& spec) {
    validate(spec);
    const auto times = spec.frame_times();
    const std::size_t w = spec.width, h = spec.height, nf = times.size();

    // One solve per distinct stack on a shared grid: index 0 is the plate, i+1 the i-th defect.
    std::vector<std::vector<LayerSpec>> stacks{spec.plate};
    for (const auto& d : spec.defects) stacks.push_back(insert_defect(spec.plate, d.depth, d.material, d.thickness));
    SolverOptions shared = spec.solver;
    shared.max_cell_size = common_cell_size(stacks, times.front(), spec.solver);
    // Same steps too, so that stacks differ only by their layers.
    shared.dt_max = common_time_step(stacks, spec.solver);
    std::vector<std::vector<double>> responses(stacks.size());
    parallel_for(stacks.size(), 0, [&](std::size_t s) { responses[s] = fd_solve(stacks[s], 1.0, times, shared); });

    std::vector<std::uint16_t> stack(w * h, 0);
    std::vector<Rect> rects;
    Mask defect(w, h, false);
    for (std::size_t i = 0; i < spec.defects.size(); ++i) {
        const auto& r = spec.defects[i].rect;
        rects.push_back(r);
        for (std::size_t y = r.y0; y < r.y0 + r.h; ++y)
            for (std::size_t x = r.x0; x < r.x0 + r.w; ++x) {
                stack[y * w + x] = static_cast<std::uint16_t>(i + 1);
                defect.set(y, x, true);
            }
    }

    std::vector<double> gain(w * h);
    const double cx = 0.5 * static_cast<double>(w - 1), cy = 0.5 * static_cast<double>(h - 1);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) {
            const double dx = static_cast<double>(x) - cx, dy = static_cast<double>(y) - cy;
            gain[y * w + x] = spec.fluence * (1.0 + spec.a1 * dx * dx + spec.a2 * dy * dy);
        }

    const auto kernel = spec.lateral_blur_px > 0.0 ? gaussian_kernel(spec.lateral_blur_px) : std::vector<double>{};
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> noise(0.0, spec.noise_std > 0.0 ? spec.noise_std : 1.0);
    std::vector<Frame> frames;
    frames.reserve(nf);
    for (std::size_t k = 0; k < nf; ++k) {
        Frame f(w, h);
        auto v = f.values();
        for (std::size_t p = 0; p < w * h; ++p) v[p] = gain[p] * responses[stack[p]][k];
        if (!kernel.empty()) blur(f, kernel);
        if (spec.noise_std > 0.0)
            for (auto& x : v) x += noise(rng);
        frames.push_back(std::move(f));
    }

    Phantom out;
    out.sequence = Sequence(std::move(frames), AxisKind::time, times);
    out.defect = std::move(defect);
    out.reference = reference_mask(w, h, rects, spec.reference_gap);
    for (auto& r : responses) for (auto& v : r) v *= spec.fluence;
    out.reference_response = responses[0];
    out.defect_responses.assign(responses.begin() + 1, responses.end());
    return out;
}

}  // namespace irt
