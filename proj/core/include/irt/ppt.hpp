#pragma once

#include "irt/core_model.hpp"

#include <complex>
#include <span>
#include <vector>

namespace irt {

struct SpectralPair {
    Sequence amplitude;         ///< |F(u)|, axis_kind frequency
    Sequence phase;             ///< atan2(Im, Re) in (-pi, pi]; 0 where F(u) == 0
    std::vector<double> frequencies;  ///< u * frame_rate / N, u = 0 .. N/2
    bool includes_dc = true;    ///< index 0 is u = 0, whose phase is degenerate
};

enum class DftMethod { automatic, fft, direct };

/// Forward DFT with 1/N normalization of every pixel's time series; bins 0..N/2 are kept.
SpectralPair ppt_transform(const Sequence& seq, DftMethod method = DftMethod::automatic);

/// One-sided 1/N-normalized spectrum of a real series (bins 0..N/2).
std::vector<std::complex<double>> dft_real(std::span<const double> x, DftMethod method = DftMethod::automatic);

/// Full two-sided spectrum by direct summation; reference path for tests.
std::vector<std::complex<double>> dft_direct_full(std::span<const double> x);

/// Phase with the (-pi, pi] convention and 0 for a zero coefficient.
double phase_of(std::complex<double> c) noexcept;

}  // namespace irt
