#pragma once

#include "irt/core_model.hpp"
#include "irt/curve_tools.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace irt {

struct LayerSpec {
    double thickness = 0.0;      ///< m
    double density = 0.0;        ///< kg/m^3
    double specific_heat = 0.0;  ///< J/(kg K)
    double conductivity = 0.0;   ///< W/(m K)

    double volumetric_heat() const noexcept { return density * specific_heat; }
    double diffusivity() const noexcept { return conductivity / volumetric_heat(); }
    double effusivity() const noexcept;
    double diffusion_time() const noexcept { return thickness * thickness / diffusivity(); }
};

namespace materials {
// Measured CFRP (out-of-plane conductivity), FEP foil, and ambient air.
LayerSpec cfrp(double thickness);
LayerSpec fep(double thickness);
LayerSpec air(double thickness);
LayerSpec by_name(const std::string& name, double thickness);
}  // namespace materials

/// Replaces [depth, depth + thickness) of the stack with the defect material.
std::vector<LayerSpec> insert_defect(const std::vector<LayerSpec>& plate, double depth, const LayerSpec& material,
                                     double thickness);

struct SolverOptions {
    std::size_t cells_per_thinnest_layer = 20;
    double max_cell_size = 0.0;  ///< m; 0 derives it from the earliest requested time
    double dt_max = 0.0;         ///< s; 0 selects 0.1 x the shortest layer diffusion time
    double relative_step = 0.02; ///< dt <= relative_step * t
    std::size_t steps_per_period = 200;
};

/// Finite-volume 1D transient conduction through a layer stack with adiabatic faces,
/// Crank-Nicolson in time, harmonic-mean interface conductances.
class HeatSolver1D {
public:
    HeatSolver1D(std::vector<LayerSpec> layers, const SolverOptions& opts, double earliest_time);

    std::size_t cells() const noexcept { return heat_.size(); }
    double dt_limit() const noexcept { return dt_limit_; }

    /// Surface temperature rise after an instantaneous surface deposit of Q J/m^2.
    /// times must be positive and increasing.
    std::vector<double> pulse_response(double fluence, std::span<const double> times) const;

    /// Stored energy sum(rho c_p T dx) at each time for the same pulse problem.
    std::vector<double> pulse_energy(double fluence, std::span<const double> times) const;

    /// Lock-in emulation: time-march a q0*sin(2 pi f t) surface flux to steady state and
    /// demodulate the surface temperature over whole periods. Returns the temperature phasor
    /// relative to the flux (arg < 0 is a lag).
    std::complex<double> periodic_response(double q0, double frequency) const;

    /// Exact periodic steady state of the same spatial discretization (complex solve).
    std::complex<double> harmonic_response(double q0, double frequency) const;

private:
    template <class Observer>
    void march_pulse(double fluence, std::span<const double> times, Observer&& observe) const;

    std::vector<LayerSpec> layers_;
    SolverOptions opts_;
    std::vector<double> heat_;   // rho c_p h per cell (J/(m^2 K))
    std::vector<double> cond_;   // conductance between cell i and i+1 (W/(m^2 K))
    double dt_limit_ = 0.0;
    double first_cell_time_ = 0.0;
    double surface_resistance_ = 0.0;  // 3 h / (8 lambda) of the first cell
    double settle_time_ = 0.0;
};

/// Largest cell size that puts every layer of every stack at the required resolution, so that
/// responses of different stacks are sampled at the same surface position.
double common_cell_size(std::span<const std::vector<LayerSpec>> stacks, double earliest_time,
                        const SolverOptions& opts = {});

/// Time step cap shared by several stacks: the smallest of their own caps, or opts.dt_max when set.
double common_time_step(std::span<const std::vector<LayerSpec>> stacks, const SolverOptions& opts = {});
/// Surface temperature rise of a stack after a pulse.
std::vector<double> fd_solve(const std::vector<LayerSpec>& layers, double fluence, std::span<const double> times,
                             const SolverOptions& opts = {});

/// Largest relative change of the surface response when the grid and time step are refined 2x.
double grid_refinement_change(const std::vector<LayerSpec>& layers, double fluence, std::span<const double> times,
                              const SolverOptions& opts = {});

/// Thermal diffusion length sqrt(alpha / (pi f)).
double diffusion_length(double diffusivity, double frequency);

/// Per frequency: (mu / pi) * (lag_defect - lag_reference), where lag is the periodic surface
/// temperature phase lag and mu the diffusion length of the top reference layer.
MetricCurve contrast_curve(const std::vector<LayerSpec>& reference, const std::vector<LayerSpec>& defect,
                           std::span<const double> frequencies, const SolverOptions& opts = {});

struct PhantomDefect {
    Rect rect;
    double depth = 0.0;      ///< m below the surface
    LayerSpec material;      ///< thickness field ignored
    double thickness = 0.0;  ///< m
};

struct PhantomSpec {
    std::size_t width = 64;
    std::size_t height = 64;
    std::vector<LayerSpec> plate;
    std::vector<PhantomDefect> defects;
    double pixel_pitch = 0.3e-3;  ///< m
    double frame_rate = 60.0;     ///< Hz
    double duration = 10.0;       ///< s
    double fluence = 8000.0;      ///< J/m^2
    double a1 = 0.0;              ///< heating nonuniformity, 1/pixel^2
    double a2 = 0.0;
    double noise_std = 0.020;     ///< K
    double lateral_blur_px = 0.0; ///< Gaussian sigma applied to the clean frames; 0 disables
    std::size_t reference_gap = 5;///< px between defect rectangles and the reference region
    std::uint64_t seed = 0;
    SolverOptions solver;

    std::size_t n_frames() const;
    std::vector<double> frame_times() const;
};

struct Phantom {
    Sequence sequence;
    Mask defect;
    Mask reference;
    std::vector<double> reference_response;               ///< clean reference surface rise per frame
    std::vector<std::vector<double>> defect_responses;    ///< per defect
};

void validate(const PhantomSpec& spec);

Phantom generate_phantom(const PhantomSpec& spec);

/// Pixels at Chebyshev distance >= gap from every rectangle.
Mask reference_mask(std::size_t width, std::size_t height, std::span<const Rect> defects, std::size_t gap);

}  // namespace irt
