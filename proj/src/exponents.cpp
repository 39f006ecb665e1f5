#include "nlslab/exponents.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlslab {

namespace {

const Rational kOne(1);
const Rational kTwo(2);
const Rational kHalf(1, 2);

void require(bool cond, const char* msg) {
  if (!cond) throw std::domain_error(msg);
}

}  // namespace

Rational r_of_alpha(const Rational& alpha) {
  require(alpha > kOne && alpha < Rational(5), "r_of_alpha: alpha must lie in (1,5)");
  if (alpha <= Rational(3)) return alpha + kOne;
  return kTwo * (alpha - kOne);
}

Rational q_from_scaling(const Rational& p, const Rational& r) {
  const Rational gap = p.reciprocal() - r.reciprocal();
  if (!(gap > Rational(0)))
    throw std::domain_error("q_from_scaling: relation degenerate, needs 1/p > 1/r");
  return kTwo / gap;
}

Rational Q_p_of_r(const Rational& p, const Rational& r) { return q_from_scaling(p, r); }

Rational Q_p_of_r_inf(const Rational& p) { return kTwo * p; }

bool is_special_hat_pair(const Rational& beta, const Rational& kappa) {
  return beta == Rational(4) && kappa > Rational(4);
}

PairClass classify_pair(const Rational& p, const Rational& beta, const Rational& kappa) {
  require(p > Rational(0) && beta > Rational(0) && kappa > Rational(0),
          "classify_pair: exponents must be positive");
  PairClass out;
  out.beta = beta;
  out.kappa = kappa;
  const Rational ib = beta.reciprocal();
  const Rational ik = kappa.reciprocal();
  const bool scaling = kTwo * ib + ik == p.reciprocal();
  const bool kappa_ok = Rational(0) < ik && ik < kHalf;
  const bool beta_ok = Rational(0) < ib && ib < kHalf - ik;
  out.in_S = scaling && kappa_ok && beta_ok;
  const Rational quarter(1, 4);
  const bool hat_beta_ok = ib < std::min(kHalf - ik, quarter);
  out.in_S_hat = (out.in_S && hat_beta_ok) || is_special_hat_pair(beta, kappa);
  return out;
}

Rational lwp_p_lower_bound(const Rational& alpha) {
  require(alpha > kOne && alpha < Rational(5), "lwp_p_lower_bound: alpha must lie in (1,5)");
  const Rational a = (alpha - kOne) / kTwo;
  const Rational b = kTwo * (alpha - kOne) / alpha;
  const Rational c = (alpha + kOne) / alpha;
  return std::max({a, b, c});
}

Rational gwp_p_lower_bound(const Rational& alpha) {
  require(alpha >= Rational(3) && alpha < Rational(5),
          "gwp_p_lower_bound: alpha must lie in [3,5)");
  const Rational am1 = alpha - kOne;
  const Rational first = am1 * (alpha + Rational(3)) /
                         (kTwo * alpha * alpha + kTwo * alpha - Rational(4));
  const Rational second = am1 * (Rational(3) * alpha + Rational(5)) /
                          (kTwo * (alpha * alpha - kTwo * alpha + Rational(5)));
  return std::max(first, second);
}

Rational critical_p(const Rational& alpha) {
  require(alpha > kOne, "critical_p: alpha must exceed 1");
  return (alpha - kOne) / kTwo;
}

Rational lifespan_exponent(const Rational& alpha, const Rational& p) {
  const Rational denom = kTwo * p - alpha + kOne;
  if (denom == Rational(0))
    throw std::domain_error("lifespan_exponent: critical case 2p = alpha-1");
  require(denom > Rational(0), "lifespan_exponent: requires subcritical 2p > alpha-1");
  return -(kTwo * p * (alpha - kOne)) / denom;
}

Rational decay_exponent(const Rational& p) {
  require(p >= kOne && p <= kTwo, "decay_exponent: requires 1 <= p <= 2");
  return p.reciprocal() - kHalf;
}

Rational pdecomp_gamma(const Rational& p, const Rational& p0) {
  const Rational denom = p0.reciprocal() - p.reciprocal();
  if (!(denom > Rational(0))) throw std::domain_error("pdecomp_gamma: requires p0 < p");
  return (p.reciprocal() - kHalf) / denom;
}

Rational coupling_budget_exponent_v(const Rational& alpha, const Rational& p) {
  return kOne - (alpha - kOne) / Rational(4) - (p.reciprocal() - kHalf) / kTwo;
}

Rational coupling_budget_exponent_w(const Rational& alpha, const Rational& p) {
  return kOne - (alpha - kOne) / (kTwo * p) - (p.reciprocal() - kHalf) / kTwo;
}

double rational_pow(const Rational& base, const Rational& exponent) {
  if (!(base > Rational(0))) throw std::domain_error("rational_pow: base must be positive");
  if (exponent.is_integer()) {
    // Exact path when the result stays in 64-bit rationals.
    try {
      return base.pow_int(exponent.num()).to_double();
    } catch (const std::overflow_error&) {
      // fall through to MPFR
    }
  }
  mpfr_t b, e, out;
  mpfr_inits2(128, b, e, out, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_si(b, base.num(), MPFR_RNDN);
  mpfr_div_si(b, b, base.den(), MPFR_RNDN);
  mpfr_set_si(e, exponent.num(), MPFR_RNDN);
  mpfr_div_si(e, e, exponent.den(), MPFR_RNDN);
  mpfr_pow(out, b, e, MPFR_RNDN);
  const double result = mpfr_get_d(out, MPFR_RNDN);
  mpfr_clears(b, e, out, static_cast<mpfr_ptr>(nullptr));
  return result;
}

ContinuationSchedule continuation_schedule(const Rational& alpha, const Rational& p,
                                           const Rational& p0, const Rational& gamma,
                                           const Rational& M, const Rational& N) {
  require(alpha > kOne && alpha < Rational(5), "continuation_schedule: alpha must lie in (1,5)");
  require(p0 > kOne && p0 < p && p <= kTwo, "continuation_schedule: needs 1 < p0 < p <= 2");
  require(M > Rational(0) && N > kOne, "continuation_schedule: needs M > 0, N > 1");

  ContinuationSchedule out;
  const Rational five_minus_a = Rational(5) - alpha;
  out.delta_exponent = -(Rational(4) * (alpha - kOne) / five_minus_a) * gamma;
  const Rational base = M * N;

  if (out.delta_exponent.is_integer()) {
    try {
      out.delta_exact = base.pow_int(out.delta_exponent.num());
      out.delta = out.delta_exact->to_double();
    } catch (const std::overflow_error&) {
      out.delta = rational_pow(base, out.delta_exponent);
    }
  } else {
    out.delta = rational_pow(base, out.delta_exponent);
  }

  // k * N^{-1 + (2(alpha-1)/(5-alpha))(1/p - 1/2)} <= N^gamma with C = 1,
  // so k_max = floor(N^{gamma + 1 - (2(alpha-1)/(5-alpha))(1/p - 1/2)}).
  out.budget_exponent =
      gamma + kOne - (kTwo * (alpha - kOne) / five_minus_a) * (p.reciprocal() - kHalf);
  if (out.budget_exponent.is_integer()) {
    bool exact_done = false;
    try {
      const Rational v = N.pow_int(out.budget_exponent.num());
      out.k_max = v.num() / v.den();
      exact_done = true;
    } catch (const std::overflow_error&) {
    }
    if (!exact_done) out.k_max = static_cast<long long>(std::floor(rational_pow(N, out.budget_exponent)));
  } else {
    mpfr_t b, e, v;
    mpfr_inits2(128, b, e, v, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_si(b, N.num(), MPFR_RNDN);
    mpfr_div_si(b, b, N.den(), MPFR_RNDN);
    mpfr_set_si(e, out.budget_exponent.num(), MPFR_RNDN);
    mpfr_div_si(e, e, out.budget_exponent.den(), MPFR_RNDN);
    mpfr_pow(v, b, e, MPFR_RNDN);
    mpfr_floor(v, v);
    out.k_max = mpfr_get_si(v, MPFR_RNDN);
    mpfr_clears(b, e, v, static_cast<mpfr_ptr>(nullptr));
  }
  if (out.k_max < 0) out.k_max = 0;

  if (out.delta_exact) {
    out.t_exact = *out.delta_exact * Rational(out.k_max);
    out.t_total = out.t_exact->to_double();
  } else {
    out.t_total = static_cast<double>(out.k_max) * out.delta;
  }
  return out;
}

ExponentConfig exponent_config(const Rational& alpha, const Rational& p) {
  require(p > kOne && p <= kTwo, "exponent_config: requires 1 < p <= 2");
  ExponentConfig cfg;
  cfg.alpha = alpha;
  cfg.p = p;
  cfg.r = r_of_alpha(alpha);
  cfg.q = q_from_scaling(p, cfg.r);
  cfg.p_dual = conjugate_exponent(p);
  cfg.decay_exp = decay_exponent(p);
  if (kTwo * p > alpha - kOne) cfg.lifespan_exp = lifespan_exponent(alpha, p);
  return cfg;
}

TheoremApplicability theorem_applicability(const Rational& alpha, const Rational& p) {
  TheoremApplicability out;
  if (alpha > kOne && alpha < Rational(5)) {
    out.lwp_bound = lwp_p_lower_bound(alpha);
    out.lwp = *out.lwp_bound < p && p <= kTwo;
    out.critical_p = critical_p(alpha);
    out.small_data_gwp = alpha > Rational(4) && p == *out.critical_p;
  }
  if (alpha >= Rational(3) && alpha < Rational(5)) {
    out.gwp_bound = gwp_p_lower_bound(alpha);
    out.large_data_gwp = *out.gwp_bound < p && p <= kTwo;
  }
  if (alpha > kTwo) {
    const Rational cap = std::min(alpha + kOne, (Rational(3) * alpha + Rational(5)) / (kTwo * alpha));
    out.hat_upper_bound = cap;
    out.hat_lp_gwp = kTwo <= p && p < cap;
  }
  return out;
}

}  // namespace nlslab
