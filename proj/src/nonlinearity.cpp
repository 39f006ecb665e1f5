#include "nlslab/nonlinearity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlslab {

const char* kind_name(NonlinearityKind kind) {
  switch (kind) {
    case NonlinearityKind::gauge: return "gauge";
    case NonlinearityKind::conjugate: return "conjugate";
    case NonlinearityKind::modulus: return "modulus";
  }
  throw std::logic_error("kind_name: unknown kind");
}

NonlinearityKind kind_from_name(const std::string& name) {
  if (name == "gauge") return NonlinearityKind::gauge;
  if (name == "conjugate") return NonlinearityKind::conjugate;
  if (name == "modulus") return NonlinearityKind::modulus;
  throw std::invalid_argument("unknown nonlinearity kind: " + name);
}

double amplitude_power(double magnitude, double alpha_minus_one) {
  if (magnitude == 0.0) return 0.0;
  if (alpha_minus_one == 2.0) return magnitude * magnitude;
  if (alpha_minus_one == 1.0) return magnitude;
  return std::exp(alpha_minus_one * std::log(magnitude));
}

ComplexField apply(const NonlinearitySpec& spec, const ComplexField& f) {
  if (!(spec.alpha > Rational(1))) throw std::domain_error("apply: requires alpha > 1");
  const double am1 = (spec.alpha - Rational(1)).to_double();
  std::vector<Complex> v(f.grid.n);
  switch (spec.kind) {
    case NonlinearityKind::gauge:
      for (std::size_t j = 0; j < f.grid.n; ++j)
        v[j] = spec.lambda * amplitude_power(std::abs(f.values[j]), am1) * f.values[j];
      break;
    case NonlinearityKind::conjugate:
      for (std::size_t j = 0; j < f.grid.n; ++j)
        v[j] = spec.lambda * amplitude_power(std::abs(f.values[j]), am1) *
               std::conj(f.values[j]);
      break;
    case NonlinearityKind::modulus:
      for (std::size_t j = 0; j < f.grid.n; ++j) {
        const double a = std::abs(f.values[j]);
        v[j] = spec.lambda * amplitude_power(a, am1) * a;
      }
      break;
  }
  return ComplexField(f.grid, std::move(v));
}

double lipschitz_probe(const NonlinearitySpec& spec, const ComplexField& u,
                       const ComplexField& v) {
  require_same_grid(u, v, "lipschitz_probe");
  NonlinearitySpec unit = spec;
  unit.lambda = 1.0;
  const ComplexField nu = apply(unit, u);
  const ComplexField nv = apply(unit, v);
  const double am1 = (spec.alpha - Rational(1)).to_double();
  double worst = 0.0;
  for (std::size_t j = 0; j < u.grid.n; ++j) {
    const double diff = std::abs(nu.values[j] - nv.values[j]);
    const double scale = (amplitude_power(std::abs(u.values[j]), am1) +
                          amplitude_power(std::abs(v.values[j]), am1)) *
                         std::abs(u.values[j] - v.values[j]);
    if (scale == 0.0) continue;  // 0/0 counts as 0
    worst = std::max(worst, diff / scale);
  }
  return worst;
}

ComplexField g_kernel(const NonlinearitySpec& spec, const ComplexField& v,
                      const ComplexField& w1, const ComplexField& w2) {
  if (spec.kind != NonlinearityKind::gauge)
    throw std::invalid_argument("g_kernel: splitting kernel is defined for the gauge kind only");
  require_same_grid(v, w1, "g_kernel");
  require_same_grid(v, w2, "g_kernel");
  std::vector<Complex> a(v.grid.n), b(v.grid.n);
  for (std::size_t j = 0; j < v.grid.n; ++j) {
    a[j] = v.values[j] + w1.values[j];
    b[j] = v.values[j] + w2.values[j];
  }
  const ComplexField na = apply(spec, ComplexField(v.grid, std::move(a)));
  const ComplexField nb = apply(spec, ComplexField(v.grid, std::move(b)));
  std::vector<Complex> out(v.grid.n);
  for (std::size_t j = 0; j < v.grid.n; ++j) out[j] = na.values[j] - nb.values[j];
  return ComplexField(v.grid, std::move(out));
}

}  // namespace nlslab
