#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlslab/rational.hpp"

namespace nlslab {

/// Full exponent configuration derived from the nonlinearity power alpha and
/// the data integrability p.  Everything is exact: 2/q + 1/r = 1/p holds as a
/// rational identity, never as a float comparison.
struct ExponentConfig {
  Rational alpha;
  Rational p;
  Rational r;       ///< auxiliary spatial exponent r(alpha)
  Rational q;       ///< auxiliary temporal exponent from 2/q + 1/r = 1/p
  Rational p_dual;  ///< conjugate exponent p'
  Rational decay_exp;  ///< 1/p - 1/2
  /// -2p(alpha-1)/(2p-alpha+1); only set in the subcritical range 2p > alpha-1.
  std::optional<Rational> lifespan_exp;
};

/// Classification of an exponent pair (beta, kappa) against the admissible
/// sets S(p) and S_hat(p).
struct PairClass {
  Rational beta;
  Rational kappa;
  bool in_S = false;
  bool in_S_hat = false;
};

/// Which theorem hypotheses a given (alpha, p) satisfies, with the exact
/// bounds that were checked.
struct TheoremApplicability {
  bool lwp = false;         ///< subcritical local theory
  bool small_data_gwp = false;  ///< critical small-data global theory
  bool large_data_gwp = false;  ///< gauge-invariant large-data global theory
  bool hat_lp_gwp = false;      ///< hat-Lp global theory
  std::optional<Rational> lwp_bound;
  std::optional<Rational> gwp_bound;
  std::optional<Rational> critical_p;
  std::optional<Rational> hat_upper_bound;
};

/// Continuation schedule derived from the data-splitting argument: window
/// length delta_N, the number of windows the N-budget admits, and the total
/// horizon T_N = k_max * delta_N.
struct ContinuationSchedule {
  double delta = 0.0;
  std::optional<Rational> delta_exact;  ///< set when the power is exactly rational
  long long k_max = 0;
  double t_total = 0.0;
  std::optional<Rational> t_exact;
  Rational delta_exponent{0};   ///< exponent of (M*N) in delta_N
  Rational budget_exponent{0};  ///< exponent of N in the window-count bound
};

/// Auxiliary spatial exponent r(alpha): alpha+1 on (1,3], 2(alpha-1) on
/// [3,5); continuous at alpha = 3.  Throws std::domain_error outside (1,5).
Rational r_of_alpha(const Rational& alpha);

/// Solves 2/q + 1/r = 1/p for q.  Requires 1/p > 1/r.
Rational q_from_scaling(const Rational& p, const Rational& r);

/// Same relation in the notation Q_p(r); the overload without r is the
/// r -> infinity limit Q = 2p.
Rational Q_p_of_r(const Rational& p, const Rational& r);
Rational Q_p_of_r_inf(const Rational& p);

/// Membership of (beta, kappa) in S(p) and S_hat(p).  Pure predicate.
PairClass classify_pair(const Rational& p, const Rational& beta, const Rational& kappa);

/// The carve-out family (beta, kappa) = (4, r), r > 4, which belongs to
/// S_hat(p) without the strict 1/beta < 1/4 inequality.
bool is_special_hat_pair(const Rational& beta, const Rational& kappa);

/// Lower bounds on p in the local/global existence hypotheses.
Rational lwp_p_lower_bound(const Rational& alpha);
Rational gwp_p_lower_bound(const Rational& alpha);

/// Scaling-critical data integrability p = (alpha-1)/2.
Rational critical_p(const Rational& alpha);

/// Lifespan exponent -2p(alpha-1)/(2p-alpha+1); throws at criticality.
Rational lifespan_exponent(const Rational& alpha, const Rational& p);

/// Fixed-time decay exponent 1/p - 1/2 (one dimension).
Rational decay_exponent(const Rational& p);

/// gamma of the splitting lemma: (1/p - 1/2) / (1/p0 - 1/p).
Rational pdecomp_gamma(const Rational& p, const Rational& p0);

/// Time-power exponents of the coupled-evolution L^2 budget estimate: the
/// v-dominated term carries T^{1 - (alpha-1)/4 - (1/p-1/2)/2}, the w-power
/// term T^{1 - (alpha-1)/(2p) - (1/p-1/2)/2}.
Rational coupling_budget_exponent_v(const Rational& alpha, const Rational& p);
Rational coupling_budget_exponent_w(const Rational& alpha, const Rational& p);

/// delta_N = (M*N)^{-4(alpha-1)gamma/(5-alpha)} and the largest k with
/// k * N^{-1 + (2(alpha-1)/(5-alpha))(1/p - 1/2)} <= N^gamma (constants
/// normalized to 1).
ContinuationSchedule continuation_schedule(const Rational& alpha, const Rational& p,
                                           const Rational& p0, const Rational& gamma,
                                           const Rational& M, const Rational& N);

/// base^exponent for rational base > 0.  Integer exponents are evaluated
/// exactly; otherwise the value is computed in 128-bit MPFR arithmetic
/// (round-to-nearest at every step) and rounded once to double.
double rational_pow(const Rational& base, const Rational& exponent);

/// Builds the full ExponentConfig for (alpha, p).  Validates alpha in (1,5)
/// and 1 < p <= 2.
ExponentConfig exponent_config(const Rational& alpha, const Rational& p);

/// Hypothesis report for (alpha, p) against the four existence theorems.
TheoremApplicability theorem_applicability(const Rational& alpha, const Rational& p);

}  // namespace nlslab
