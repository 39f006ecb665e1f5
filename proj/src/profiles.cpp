#include "nlslab/profiles.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "nlslab/spectral.hpp"

namespace nlslab {

ComplexField gaussian_profile(const GridSpec& grid, double amplitude, double width) {
  std::vector<Complex> v(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double x = grid.point(j) / width;
    v[j] = amplitude * std::exp(-x * x);
  }
  return ComplexField(grid, std::move(v));
}

ComplexField box_profile(const GridSpec& grid, double lo, double hi, double amplitude) {
  if (!(lo < hi)) throw std::invalid_argument("box_profile: needs lo < hi");
  std::vector<Complex> v(grid.n, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double x = grid.point(j);
    if (x >= lo && x < hi) v[j] = amplitude;
  }
  return ComplexField(grid, std::move(v));
}

ComplexField heavy_tail_profile(const GridSpec& grid, double beta, double amplitude) {
  std::vector<Complex> v(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double x = grid.point(j);
    v[j] = amplitude * std::pow(1.0 + x * x, -0.5 * beta);
  }
  return ComplexField(grid, std::move(v));
}

ComplexField singular_profile(const GridSpec& grid, double beta, double amplitude,
                              double support) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("singular_profile: requires 0 < beta < 1");
  if (!(support > grid.dx)) throw std::invalid_argument("singular_profile: support under-resolved");
  std::vector<Complex> v(grid.n, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double x = grid.point(j);
    if (std::abs(x) > support) continue;
    if (x == 0.0) {
      // Cell average of |x|^{-beta} over [-dx/2, dx/2].
      const double half = 0.5 * grid.dx;
      v[j] = amplitude * 2.0 * std::pow(half, 1.0 - beta) / ((1.0 - beta) * grid.dx);
    } else {
      v[j] = amplitude * std::pow(std::abs(x), -beta);
    }
  }
  return ComplexField(grid, std::move(v));
}

ComplexField random_profile(const GridSpec& grid, std::uint64_t seed, double l2_norm,
                            double band_fraction) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> v(grid.n);
  for (Complex& c : v) c = Complex(normal(rng), normal(rng));

  Spectrum s = spectrum(ComplexField(grid, std::move(v)));
  const double cutoff = band_fraction * grid.nyquist();
  for (std::size_t m = 0; m < grid.n; ++m)
    if (std::abs(grid.frequency(m)) > cutoff) s.values[m] = 0.0;
  ComplexField out = from_spectrum(s);

  const double norm = lp_norm(out, Rational(2));
  if (norm > 0.0) {
    const double scale = l2_norm / norm;
    for (Complex& c : out.values) c *= scale;
  }
  return out;
}

ComplexField sech_profile(const GridSpec& grid, double amplitude) {
  std::vector<Complex> v(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) v[j] = amplitude / std::cosh(grid.point(j));
  return ComplexField(grid, std::move(v));
}

}  // namespace nlslab
