#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nlslab {

using Complex = std::complex<double>;

/// Periodic spatial grid standing in for the real line: n points (a power of
/// two) on [-L, L) with spacing dx = 2L/n and frequency lattice
/// xi_k = pi*k/L, k in [-n/2, n/2).
struct GridSpec {
  GridSpec(std::size_t n_points, double half_width);

  std::size_t n = 0;
  double half_width = 0.0;
  double dx = 0.0;

  double point(std::size_t j) const { return -half_width + static_cast<double>(j) * dx; }

  /// Physical frequency of FFT bin m (wrapped ordering: m >= n/2 is negative).
  double frequency(std::size_t m) const;

  double nyquist() const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.n == b.n && a.half_width == b.half_width;
  }
};

/// Complex samples on a GridSpec; the discrete stand-in for u(t,.) or the
/// datum phi.  Construction rejects NaN/Inf samples.
struct ComplexField {
  ComplexField(GridSpec grid_in, std::vector<Complex> values_in);

  GridSpec grid;
  std::vector<Complex> values;
};

/// Throws std::invalid_argument unless both fields share one grid.
void require_same_grid(const ComplexField& a, const ComplexField& b, const char* what);

}  // namespace nlslab
