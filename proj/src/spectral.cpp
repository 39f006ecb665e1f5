#include "nlslab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nlslab/exponents.hpp"

namespace nlslab {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW's planner is not thread-safe; plan creation is serialized and the
// plans themselves are cached per thread with their work buffer.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanSet {
  explicit PlanSet(std::size_t n_in) : n(n_in) {
    buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!buf) throw std::bad_alloc();
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~PlanSet() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
  PlanSet(const PlanSet&) = delete;
  PlanSet& operator=(const PlanSet&) = delete;

  std::size_t n;
  fftw_complex* buf;
  fftw_plan fwd;
  fftw_plan bwd;
};

PlanSet& plans_for(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<PlanSet>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<PlanSet>(n);
  return *slot;
}

void load(PlanSet& ps, const std::vector<Complex>& x) {
  for (std::size_t j = 0; j < ps.n; ++j) {
    ps.buf[j][0] = x[j].real();
    ps.buf[j][1] = x[j].imag();
  }
}

std::vector<Complex> unload(const PlanSet& ps) {
  std::vector<Complex> out(ps.n);
  for (std::size_t j = 0; j < ps.n; ++j) out[j] = Complex(ps.buf[j][0], ps.buf[j][1]);
  return out;
}

// Raw unnormalized DFT: X_m = sum_j x_j e^{-2 pi i jm/n}.
std::vector<Complex> fft_forward_raw(std::size_t n, const std::vector<Complex>& x) {
  PlanSet& ps = plans_for(n);
  load(ps, x);
  fftw_execute(ps.fwd);
  return unload(ps);
}

std::vector<Complex> fft_backward_raw(std::size_t n, const std::vector<Complex>& x) {
  PlanSet& ps = plans_for(n);
  load(ps, x);
  fftw_execute(ps.bwd);
  return unload(ps);
}

double power_of_abs(double a, double p) {
  if (a == 0.0) return 0.0;
  return std::pow(a, p);
}

}  // namespace

Spectrum spectrum(const ComplexField& f) {
  const std::size_t n = f.grid.n;
  std::vector<Complex> v = fft_forward_raw(n, f.values);
  // F(xi_m) = dx * (-1)^m * X_m on the x_j = -L + j dx lattice (n even).
  for (std::size_t m = 0; m < n; ++m) {
    const double sign = (m & 1) ? -f.grid.dx : f.grid.dx;
    v[m] *= sign;
  }
  return Spectrum{f.grid, std::move(v)};
}

ComplexField from_spectrum(const Spectrum& s) {
  const std::size_t n = s.grid.n;
  if (s.values.size() != n) throw std::invalid_argument("from_spectrum: size mismatch");
  std::vector<Complex> v(n);
  for (std::size_t m = 0; m < n; ++m) v[m] = (m & 1) ? -s.values[m] : s.values[m];
  v = fft_backward_raw(n, v);
  const double scale = 1.0 / (static_cast<double>(n) * s.grid.dx);
  for (Complex& c : v) c *= scale;
  return ComplexField(s.grid, std::move(v));
}

double lp_norm(const ComplexField& f, const LpExponent& p) {
  if (p.infinite()) {
    double m = 0.0;
    for (const Complex& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  const Rational& pr = p.finite();
  if (pr < Rational(1)) throw std::invalid_argument("lp_norm: requires p >= 1");
  const double pd = pr.to_double();
  double acc = 0.0;
  for (const Complex& v : f.values) acc += power_of_abs(std::abs(v), pd);
  return std::pow(acc * f.grid.dx, 1.0 / pd);
}

double hat_lp_norm(const ComplexField& f, const Rational& p) {
  if (p < Rational(1)) throw std::invalid_argument("hat_lp_norm: requires p >= 1");
  const Spectrum s = spectrum(f);
  const double dxi = kPi / f.grid.half_width;
  if (p == Rational(1)) {
    double m = 0.0;
    for (const Complex& v : s.values) m = std::max(m, std::abs(v));
    return m;
  }
  const double pd = conjugate_exponent(p).to_double();
  double acc = 0.0;
  for (const Complex& v : s.values) acc += power_of_abs(std::abs(v), pd);
  return std::pow(acc * dxi, 1.0 / pd);
}

ComplexField free_propagate(const ComplexField& f, double t, bool dealias_two_thirds) {
  const std::size_t n = f.grid.n;
  std::vector<Complex> v = fft_forward_raw(n, f.values);
  const double cutoff = 2.0 / 3.0 * f.grid.nyquist();
  for (std::size_t m = 0; m < n; ++m) {
    const double xi = f.grid.frequency(m);
    if (dealias_two_thirds && std::abs(xi) > cutoff) {
      v[m] = 0.0;
      continue;
    }
    const double phase = -xi * xi * t;
    v[m] *= Complex(std::cos(phase), std::sin(phase));
  }
  v = fft_backward_raw(n, v);
  const double scale = 1.0 / static_cast<double>(n);
  for (Complex& c : v) c *= scale;
  return ComplexField(f.grid, std::move(v));
}

ComplexField modulate(const ComplexField& f, double chirp_rate) {
  std::vector<Complex> v(f.grid.n);
  for (std::size_t j = 0; j < f.grid.n; ++j) {
    const double x = f.grid.point(j);
    const double phase = chirp_rate * x * x;
    v[j] = f.values[j] * Complex(std::cos(phase), std::sin(phase));
  }
  return ComplexField(f.grid, std::move(v));
}

double chirp_time_floor(const GridSpec& grid) { return grid.half_width * grid.dx / kPi; }

ComplexField factorized_propagate_inverse(const ComplexField& f, double t, double leakage_limit) {
  if (t == 0.0) throw std::domain_error("factorized_propagate_inverse: t must be nonzero");
  if (std::abs(t) < chirp_time_floor(f.grid)) {
    std::ostringstream msg;
    msg << "factorized_propagate_inverse: |t| = " << std::abs(t)
        << " below the chirp resolution floor " << chirp_time_floor(f.grid);
    throw std::domain_error(msg.str());
  }
  if (leakage_fraction(f) > leakage_limit)
    throw std::invalid_argument(
        "factorized_propagate_inverse: datum not supported inside the grid (leakage above limit)");

  const std::size_t n = f.grid.n;
  const double dx = f.grid.dx;
  // Inner modulation M_t^{-1}.
  const ComplexField g = modulate(f, -1.0 / (4.0 * t));

  // Continuum inverse transform of g, evaluated on the dilated lattice
  // y_j = x_j / (2t).  The direct sum is the trigonometric interpolant of g,
  // i.e. band-limited interpolation.  The inner phase advances by a constant
  // rotation per sample.
  std::vector<Complex> h(n, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    const double y = f.grid.point(j) / (2.0 * t);
    const Complex step(std::cos(y * dx), std::sin(y * dx));
    const double phase0 = y * f.grid.point(0);
    Complex rot(std::cos(phase0), std::sin(phase0));
    Complex acc(0.0, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
      acc += g.values[m] * rot;
      rot *= step;
    }
    h[j] = acc * (dx / (2.0 * kPi));
  }

  // Inverse dilation prefactor 2 pi (-4 pi i t)^{-1/2}, principal branch.
  const Complex pref = 2.0 * kPi * std::pow(Complex(0.0, -4.0 * kPi * t), -0.5);
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = f.grid.point(j);
    const double phase = -x * x / (4.0 * t);
    out[j] = pref * h[j] * Complex(std::cos(phase), std::sin(phase));
  }
  return ComplexField(f.grid, std::move(out));
}

ConjugationProbe conjugation_constant(const ComplexField& f, double s) {
  if (s == 0.0) throw std::domain_error("conjugation_constant: s must be nonzero");
  const std::size_t n = f.grid.n;
  const double dx = f.grid.dx;

  // Continuum F^{-1} and F on the grid's own lattice (direct sums; the
  // space and frequency lattices of the operator identity do not match the
  // FFT pairing for a general box size).
  auto direct_sum = [&](const ComplexField& u, double sign, double scale) {
    std::vector<Complex> v(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double x = sign * f.grid.point(j);
      const Complex step(std::cos(x * dx), std::sin(x * dx));
      Complex rot(std::cos(x * f.grid.point(0)), std::sin(x * f.grid.point(0)));
      Complex acc(0.0, 0.0);
      for (std::size_t m = 0; m < n; ++m) {
        acc += u.values[m] * rot;
        rot *= step;
      }
      v[j] = acc * scale;
    }
    return ComplexField(f.grid, std::move(v));
  };
  auto finv = [&](const ComplexField& u) { return direct_sum(u, 1.0, dx / (2.0 * kPi)); };
  auto ffwd = [&](const ComplexField& u) { return direct_sum(u, -1.0, dx); };

  const ComplexField lhs = ffwd(modulate(finv(f), 1.0 / (4.0 * s)));
  const ComplexField rhs = free_propagate(f, -1.0 / (4.0 * s));

  Complex dot(0.0, 0.0);
  double rhs_sq = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    dot += std::conj(rhs.values[j]) * lhs.values[j];
    rhs_sq += std::norm(rhs.values[j]);
  }
  if (rhs_sq == 0.0) return ConjugationProbe{Complex(0.0, 0.0), 0.0};
  const Complex c = dot / rhs_sq;

  double misfit = 0.0, lhs_sq = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    misfit += std::norm(lhs.values[j] - c * rhs.values[j]);
    lhs_sq += std::norm(lhs.values[j]);
  }
  return ConjugationProbe{c, lhs_sq > 0.0 ? std::sqrt(misfit / lhs_sq) : 0.0};
}

NormTimeSeries::NormTimeSeries(std::vector<double> times_in, Rational r_in,
                               std::vector<double> norms_in)
    : times(std::move(times_in)), r(r_in), norms(std::move(norms_in)) {
  if (times.size() != norms.size())
    throw std::invalid_argument("NormTimeSeries: times/norms size mismatch");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("NormTimeSeries: times must be strictly increasing");
  for (double v : norms)
    if (!(v >= 0.0)) throw std::invalid_argument("NormTimeSeries: norms must be nonnegative");
}

NormTimeSeries norm_series(const std::vector<TimeSample>& samples, const Rational& r) {
  std::vector<double> times, norms;
  times.reserve(samples.size());
  norms.reserve(samples.size());
  for (const auto& [t, field] : samples) {
    times.push_back(t);
    norms.push_back(lp_norm(field, r));
  }
  return NormTimeSeries(std::move(times), r, std::move(norms));
}

double spacetime_norm(const NormTimeSeries& series, const LpExponent& q) {
  if (series.times.empty()) throw std::invalid_argument("spacetime_norm: empty series");
  if (q.infinite()) return *std::max_element(series.norms.begin(), series.norms.end());
  if (series.times.size() < 2)
    throw std::invalid_argument("spacetime_norm: needs at least two time samples");
  const double qd = q.finite().to_double();
  if (qd < 1.0) throw std::invalid_argument("spacetime_norm: requires q >= 1");
  double acc = 0.0;
  for (std::size_t i = 1; i < series.times.size(); ++i) {
    const double dt = series.times[i] - series.times[i - 1];
    acc += 0.5 * dt * (power_of_abs(series.norms[i - 1], qd) + power_of_abs(series.norms[i], qd));
  }
  return std::pow(acc, 1.0 / qd);
}

double spacetime_norm(const std::vector<TimeSample>& samples, const LpExponent& q,
                      const Rational& r) {
  return spacetime_norm(norm_series(samples, r), q);
}

double leakage_fraction(const ComplexField& f) {
  const double band = 0.95 * f.grid.half_width;
  double total = 0.0, edge = 0.0;
  for (std::size_t j = 0; j < f.grid.n; ++j) {
    const double m = std::norm(f.values[j]);
    total += m;
    if (std::abs(f.grid.point(j)) >= band) edge += m;
  }
  return total > 0.0 ? edge / total : 0.0;
}

double energy_bandwidth(const ComplexField& f, double fraction) {
  const Spectrum s = spectrum(f);
  const std::size_t n = f.grid.n;
  std::vector<std::pair<double, double>> by_freq(n);  // (|xi|, energy)
  double total = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double e = std::norm(s.values[m]);
    by_freq[m] = {std::abs(f.grid.frequency(m)), e};
    total += e;
  }
  if (total == 0.0) return 0.0;
  std::sort(by_freq.begin(), by_freq.end());
  double acc = 0.0;
  for (const auto& [xi, e] : by_freq) {
    acc += e;
    if (acc >= fraction * total) return xi;
  }
  return f.grid.nyquist();
}

double wrap_time(const ComplexField& f, double fraction) {
  const double xi_b = energy_bandwidth(f, fraction);
  if (xi_b == 0.0) return std::numeric_limits<double>::infinity();
  return f.grid.half_width / (8.0 * xi_b);
}

double strichartz_ratio_probe(const ComplexField& phi, const Rational& p, const Rational& beta,
                              const Rational& kappa, double T, StrichartzVariant variant,
                              std::size_t n_time) {
  const PairClass pc = classify_pair(p, beta, kappa);
  const bool admissible = variant == StrichartzVariant::lp ? pc.in_S : pc.in_S_hat;
  if (!admissible) {
    const Rational ib = beta.reciprocal();
    const Rational ik = kappa.reciprocal();
    std::string violated;
    if (Rational(2) * ib + ik != p.reciprocal())
      violated = "2/beta + 1/kappa = 1/p";
    else if (!(ik < Rational(1, 2)))
      violated = "1/kappa < 1/2";
    else if (!(ib < Rational(1, 2) - ik))
      violated = "1/beta < 1/2 - 1/kappa";
    else
      violated = "1/beta < min(1/2 - 1/kappa, 1/4)";
    throw std::invalid_argument("strichartz_ratio_probe: pair (" + beta.str() + ", " + kappa.str() +
                                ") inadmissible, violates " + violated);
  }
  if (n_time < 2) throw std::invalid_argument("strichartz_ratio_probe: n_time >= 2 required");
  const double denom = variant == StrichartzVariant::lp ? lp_norm(phi, p) : hat_lp_norm(phi, p);
  if (denom == 0.0) return 0.0;

  std::vector<TimeSample> samples;
  samples.reserve(n_time + 1);
  for (std::size_t i = 0; i <= n_time; ++i) {
    const double t = T * static_cast<double>(i) / static_cast<double>(n_time);
    samples.emplace_back(t, free_propagate(phi, t));
  }
  return spacetime_norm(samples, LpExponent(beta), kappa) / denom;
}

}  // namespace nlslab
