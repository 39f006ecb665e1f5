#pragma once

#include <utility>
#include <vector>

#include "nlslab/grid.hpp"
#include "nlslab/rational.hpp"

namespace nlslab {

/// Discrete Fourier data in wrapped bin order.  values[m] approximates the
/// continuum transform F f(xi_m) under the convention
///   F f(xi) = integral e^{-i xi x} f(x) dx,
/// inverse carrying the 1/(2pi) factor so that F^{-1} F = id.  The Plancherel
/// constant under this normalization is sqrt(2 pi).
struct Spectrum {
  GridSpec grid;
  std::vector<Complex> values;
};

Spectrum spectrum(const ComplexField& f);
ComplexField from_spectrum(const Spectrum& s);

/// L^p norm (sum |f_j|^p dx)^{1/p}; sup norm for the infinity sentinel.
/// Rejects p < 1.
double lp_norm(const ComplexField& f, const LpExponent& p);

/// L^{p'} norm of the discrete Fourier transform with d(xi) weight.
/// Requires 1 <= p < infinity (p = 1 takes the sup of the spectrum).
double hat_lp_norm(const ComplexField& f, const Rational& p);

/// Free propagator U(t): multiplies the spectrum by e^{-i xi^2 t}.  Exactly
/// mass preserving.  With dealias set, bins above 2/3 Nyquist are zeroed.
ComplexField free_propagate(const ComplexField& f, double t, bool dealias_two_thirds = false);

/// Multiplies samples pointwise by the chirp e^{i c x^2}.
ComplexField modulate(const ComplexField& f, double chirp_rate);

/// U(-t) realized through the chirp factorization: modulation by
/// e^{-i x^2/(4t)}, continuum inverse transform, band-limited evaluation at
/// x/(2t) with the principal-branch prefactor, and a final modulation.
/// Throws std::domain_error when |t| is below the chirp-resolution floor
/// L*dx/pi and std::invalid_argument when the datum leaks into the boundary
/// band.
ComplexField factorized_propagate_inverse(const ComplexField& f, double t,
                                          double leakage_limit = 1e-6);

/// Smallest |t| at which the chirp e^{i x^2/(4t)} is resolvable on f's grid.
double chirp_time_floor(const GridSpec& grid);

struct ConjugationProbe {
  Complex c;        ///< scalar relating F M_s F^{-1} f to U(-1/(4s)) f
  double residual;  ///< relative L^2 misfit after removing c
};

/// Measures the constant in the conjugation identity F M_s F^{-1} = c U(-tau).
/// Under the e^{-i xi x} transform convention the matching time is
/// tau = 1/(4s); the probe measures c rather than asserting it.
ConjugationProbe conjugation_constant(const ComplexField& f, double s);

/// Time samples of a spatial norm, feeding space-time L^q(L^r) norms.
struct NormTimeSeries {
  NormTimeSeries(std::vector<double> times_in, Rational r_in, std::vector<double> norms_in);
  std::vector<double> times;
  Rational r;
  std::vector<double> norms;
};

using TimeSample = std::pair<double, ComplexField>;

/// Per-time L^r norms of a sampled trajectory.
NormTimeSeries norm_series(const std::vector<TimeSample>& samples, const Rational& r);

/// Composite-trapezoid quadrature of ||u(t)||_r^q over the recorded times,
/// then the q-th root; sup over samples when q is infinite.
double spacetime_norm(const NormTimeSeries& series, const LpExponent& q);
double spacetime_norm(const std::vector<TimeSample>& samples, const LpExponent& q,
                      const Rational& r);

/// Fraction of the L^2 mass inside the 5% boundary band |x| >= 0.95 L.
double leakage_fraction(const ComplexField& f);

/// Bandwidth xi_B holding the given fraction (default 99.99%) of the
/// spectral energy.
double energy_bandwidth(const ComplexField& f, double fraction = 0.9999);

/// Wrap-time bound t_wrap = L / (8 xi_B); dispersive-decay measurements are
/// only meaningful before it.
double wrap_time(const ComplexField& f, double fraction = 0.9999);

enum class StrichartzVariant { lp, hat_lp };

/// ||U(t) phi||_{L^beta([0,T]; L^kappa)} / ||phi|| with the denominator taken
/// in L^p or hat-L^p.  Rejects pairs outside S(p) (resp. S_hat(p)) naming the
/// violated inequality; returns 0 for zero data.
double strichartz_ratio_probe(const ComplexField& phi, const Rational& p, const Rational& beta,
                              const Rational& kappa, double T,
                              StrichartzVariant variant = StrichartzVariant::lp,
                              std::size_t n_time = 128);

}  // namespace nlslab
