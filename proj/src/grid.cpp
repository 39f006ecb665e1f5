#include "nlslab/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlslab {

GridSpec::GridSpec(std::size_t n_points, double half_width_in)
    : n(n_points), half_width(half_width_in) {
  if (n < 2 || (n & (n - 1)) != 0)
    throw std::invalid_argument("GridSpec: n_points must be a power of two >= 2");
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw std::invalid_argument("GridSpec: half_width must be positive and finite");
  dx = 2.0 * half_width / static_cast<double>(n);
}

double GridSpec::frequency(std::size_t m) const {
  const auto half = static_cast<long long>(n / 2);
  long long k = static_cast<long long>(m);
  if (k >= half) k -= static_cast<long long>(n);
  return std::numbers::pi * static_cast<double>(k) / half_width;
}

double GridSpec::nyquist() const { return std::numbers::pi / dx; }

ComplexField::ComplexField(GridSpec grid_in, std::vector<Complex> values_in)
    : grid(grid_in), values(std::move(values_in)) {
  if (values.size() != grid.n)
    throw std::invalid_argument("ComplexField: sample count does not match grid");
  for (const Complex& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("ComplexField: non-finite sample");
}

void require_same_grid(const ComplexField& a, const ComplexField& b, const char* what) {
  if (!(a.grid == b.grid))
    throw std::invalid_argument(std::string(what) + ": fields live on different grids");
}

}  // namespace nlslab
