#include "nlslab/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlslab/fit.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab {

namespace {

double thresholded_l2(const ComplexField& phi, double lambda) {
  double acc = 0.0;
  for (const Complex& c : phi.values) {
    const double a = std::abs(c);
    if (a <= lambda) acc += a * a;
  }
  return std::sqrt(acc * phi.grid.dx);
}

}  // namespace

SplitDatum amplitude_split(const ComplexField& phi, const Rational& p, const Rational& p0,
                           double N) {
  if (!(Rational(1) < p0 && p0 < p && p <= Rational(2)))
    throw std::invalid_argument("amplitude_split: requires 1 < p0 < p <= 2");
  if (!(N > 1.0)) throw std::invalid_argument("amplitude_split: requires N > 1");

  double max_amp = 0.0;
  for (const Complex& c : phi.values) max_amp = std::max(max_amp, std::abs(c));
  if (max_amp == 0.0) throw std::invalid_argument("amplitude_split: phi must be nonzero");

  SplitDatum sd{phi, phi, phi, N, 0.0, pdecomp_gamma(p, p0), p, p0, false};
  const double target = std::pow(N, sd.gamma.to_double());

  double lambda = max_amp;
  if (thresholded_l2(phi, max_amp) <= target) {
    sd.degenerate = true;  // whole datum is below the budget; psi_N = 0
  } else {
    double lo = 0.0, hi = max_amp;
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * max_amp; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (thresholded_l2(phi, mid) >= target)
        hi = mid;
      else
        lo = mid;
    }
    lambda = hi;
  }
  sd.lambda_n = lambda;

  std::vector<Complex> small(phi.grid.n, Complex(0.0, 0.0));
  std::vector<Complex> tall(phi.grid.n, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < phi.grid.n; ++j) {
    if (std::abs(phi.values[j]) <= lambda)
      small[j] = phi.values[j];
    else
      tall[j] = phi.values[j];
  }
  sd.phi_n = ComplexField(phi.grid, std::move(small));
  sd.psi_n = ComplexField(phi.grid, std::move(tall));
  return sd;
}

SplitReport verify_split(const ComplexField& phi, const Rational& p, const Rational& p0,
                         const Rational& alpha, std::span<const double> n_sweep, double t_probe,
                         std::size_t n_time) {
  if (n_sweep.size() < 2) throw std::invalid_argument("verify_split: need an N sweep");
  SplitReport report;
  report.gamma_target = pdecomp_gamma(p, p0).to_double();
  const Rational r = alpha + Rational(1);
  const Rational q_psi = Q_p_of_r(p0, r);

  for (double N : n_sweep) {
    const SplitDatum sd = amplitude_split(phi, p, p0, N);
    report.any_degenerate = report.any_degenerate || sd.degenerate;
    report.n_values.push_back(N);
    report.l2_of_phi_n.push_back(lp_norm(sd.phi_n, Rational(2)));

    double strich = 0.0;
    if (lp_norm(sd.psi_n, Rational(2)) > 0.0) {
      std::vector<TimeSample> samples;
      samples.reserve(n_time + 1);
      for (std::size_t i = 0; i <= n_time; ++i) {
        const double t = t_probe * static_cast<double>(i) / static_cast<double>(n_time);
        samples.emplace_back(t, free_propagate(sd.psi_n, t));
      }
      strich = spacetime_norm(samples, LpExponent(q_psi), r);
    }
    report.strichartz_of_psi_n.push_back(strich);
  }

  report.fitted_gamma = fit_loglog(report.n_values, report.l2_of_phi_n).slope;
  bool all_positive = true;
  for (double s : report.strichartz_of_psi_n) all_positive = all_positive && s > 0.0;
  if (all_positive)
    report.fitted_decay_rate_of_psi =
        fit_loglog(report.n_values, report.strichartz_of_psi_n).slope;
  return report;
}

ContinuationRunReport coupled_continuation(const SplitDatum& sd, const NonlinearitySpec& spec,
                                           const ExponentConfig& cfg, double m_const,
                                           std::size_t max_windows, std::size_t steps_per_window,
                                           Dealias dealias) {
  if (spec.kind != NonlinearityKind::gauge)
    throw std::invalid_argument("coupled_continuation: gauge nonlinearity required");
  if (steps_per_window < 8 || steps_per_window % 8 != 0)
    throw std::invalid_argument("coupled_continuation: steps_per_window must be a multiple of 8");

  ContinuationRunReport report;
  report.schedule = continuation_schedule(cfg.alpha, sd.p, sd.p0, sd.gamma,
                                          Rational::from_double(m_const),
                                          Rational::from_double(sd.n_param));
  report.budget = std::pow(sd.n_param, sd.gamma.to_double());

  const double delta = report.schedule.delta;
  const auto n_windows = static_cast<std::size_t>(
      std::min<long long>(report.schedule.k_max, static_cast<long long>(max_windows)));
  report.windows_run = n_windows;
  if (n_windows == 0) return report;

  IntegratorConfig icfg;
  icfg.dt = delta / static_cast<double>(steps_per_window);
  icfg.t_end = delta * static_cast<double>(n_windows);
  icfg.dealias = dealias;
  icfg.record_every = 1;

  Trajectory u_traj, v_traj;
  try {
    v_traj = evolve(sd.phi_n, spec, icfg);
    u_traj = evolve(sd.phi, spec, icfg);
  } catch (const IntegrationBlowup&) {
    report.grid_breakdown = true;
    return report;
  }
  if (u_traj.leakage_flagged || v_traj.leakage_flagged) report.grid_breakdown = true;

  const GridSpec grid = sd.phi.grid;
  const Rational r = r_of_alpha(cfg.alpha);
  const Rational q2 = Q_p_of_r(Rational(2), r);
  const Rational qp = Q_p_of_r(sd.p, r);
  const double e_v = coupling_budget_exponent_v(cfg.alpha, sd.p).to_double();
  const double am1 = (cfg.alpha - Rational(1)).to_double();

  auto w_at = [&](std::size_t record) {
    std::vector<Complex> w(grid.n);
    for (std::size_t k = 0; k < grid.n; ++k)
      w[k] = u_traj.states[record].values[k] - v_traj.states[record].values[k];
    return ComplexField(grid, std::move(w));
  };
  auto window_stats = [&](std::size_t rec_from, std::size_t rec_to) {
    const double span = u_traj.times[rec_to] - u_traj.times[rec_from];
    const ComplexField transported = free_propagate(w_at(rec_from), span);
    const ComplexField w_end = w_at(rec_to);
    std::vector<Complex> diff(grid.n);
    for (std::size_t k = 0; k < grid.n; ++k)
      diff[k] = w_end.values[k] - transported.values[k];

    WindowGrowth wg;
    wg.t_start = u_traj.times[rec_from];
    wg.scale = span;
    wg.growth = lp_norm(ComplexField(grid, std::move(diff)), Rational(2));
    std::vector<TimeSample> v_win, w_win;
    for (std::size_t rec = rec_from; rec <= rec_to; ++rec) {
      v_win.emplace_back(u_traj.times[rec], v_traj.states[rec]);
      w_win.emplace_back(u_traj.times[rec], w_at(rec));
    }
    wg.v_strichartz = spacetime_norm(v_win, LpExponent(q2), r);
    wg.w_strichartz = spacetime_norm(w_win, LpExponent(qp), r);
    const double rhs = std::pow(span, e_v) * std::pow(wg.v_strichartz, am1) * wg.w_strichartz;
    wg.budget_ratio = rhs > 0.0 ? wg.growth / rhs : 0.0;
    return wg;
  };

  {
    const ComplexField w0 = w_at(0);
    report.w0_is_psi = true;
    for (std::size_t k = 0; k < grid.n; ++k)
      report.w0_is_psi = report.w0_is_psi && w0.values[k] == sd.psi_n.values[k];
  }

  bool within_budget = true;
  for (std::size_t k = 0; k < n_windows; ++k) {
    const std::size_t a = k * steps_per_window;
    const std::size_t b = (k + 1) * steps_per_window;
    if (b >= u_traj.states.size()) break;
    const WindowGrowth wg = window_stats(a, b);
    report.cumulative_growth += wg.growth;
    report.windows.push_back(wg);
    if (within_budget && report.cumulative_growth <= report.budget)
      ++report.windows_survived;
    else
      within_budget = false;
  }

  // First-window growth at dyadic sub-scales delta, delta/2, delta/4, delta/8.
  for (std::size_t div = 1; div <= 8; div *= 2)
    report.first_window.push_back(window_stats(0, steps_per_window / div));
  return report;
}

}  // namespace nlslab
