#pragma once

#include <cstdint>

#include "nlslab/grid.hpp"

namespace nlslab {

/// Stock initial data used across experiments and tests.

/// amplitude * exp(-(x/width)^2)
ComplexField gaussian_profile(const GridSpec& grid, double amplitude = 1.0, double width = 1.0);

/// amplitude * indicator of [lo, hi)
ComplexField box_profile(const GridSpec& grid, double lo, double hi, double amplitude = 1.0);

/// amplitude * (1 + x^2)^{-beta/2}; tails ~ |x|^{-beta}
ComplexField heavy_tail_profile(const GridSpec& grid, double beta, double amplitude = 1.0);

/// amplitude * |x|^{-beta} on [-support, support], origin cell replaced by
/// its cell average so the sample stays finite.  Requires 0 < beta < 1.
ComplexField singular_profile(const GridSpec& grid, double beta, double amplitude = 1.0,
                              double support = 1.0);

/// Band-limited complex noise: iid complex Gaussians low-passed to
/// |xi| <= band_fraction * Nyquist and rescaled to the requested L^2 norm.
ComplexField random_profile(const GridSpec& grid, std::uint64_t seed, double l2_norm = 1.0,
                            double band_fraction = 0.25);

/// amplitude * sech(x); the cubic-soliton datum.
ComplexField sech_profile(const GridSpec& grid, double amplitude = 1.0);

}  // namespace nlslab
