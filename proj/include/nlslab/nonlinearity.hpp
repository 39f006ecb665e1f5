#pragma once

#include "nlslab/grid.hpp"
#include "nlslab/rational.hpp"

namespace nlslab {

enum class NonlinearityKind {
  gauge,      ///< |u|^{alpha-1} u  (phase covariant; conserves mass)
  conjugate,  ///< |u|^{alpha-1} conj(u)
  modulus,    ///< |u|^{alpha}
};

/// Power nonlinearity N(u) with coupling lambda; the equation integrated is
/// i u_t + u_xx + lambda N(u) = 0 (lambda = +1 is the paper's sign, and for
/// the gauge kind lambda < 0 is the defocusing branch).
struct NonlinearitySpec {
  NonlinearityKind kind = NonlinearityKind::gauge;
  Rational alpha{3};
  double lambda = 1.0;
};

const char* kind_name(NonlinearityKind kind);
NonlinearityKind kind_from_name(const std::string& name);

/// |z|^{alpha-1} with the removable singularity at z = 0 mapped to 0.
double amplitude_power(double magnitude, double alpha_minus_one);

/// Pointwise lambda * N(f).
ComplexField apply(const NonlinearitySpec& spec, const ComplexField& f);

/// max over the grid of |N(u)-N(v)| / ((|u|^{alpha-1}+|v|^{alpha-1})|u-v|),
/// 0/0 handled as 0.  Bounded by a constant independent of the fields.
double lipschitz_probe(const NonlinearitySpec& spec, const ComplexField& u,
                       const ComplexField& v);

/// Difference kernel of the splitting argument,
/// G(v,w1,w2) = N(v+w1) - N(v+w2); gauge kind only.
ComplexField g_kernel(const NonlinearitySpec& spec, const ComplexField& v,
                      const ComplexField& w1, const ComplexField& w2);

}  // namespace nlslab
