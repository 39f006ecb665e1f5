#include "nlslab/picard.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nlslab {

namespace {

// Cumulative trapezoid of the twisted Duhamel integrand: given the physical
// states u_j on the lattice, returns I_j = Int_0^{t_j} U(-s) N(u(s)) ds.
std::vector<ComplexField> duhamel_cumulative(const std::vector<double>& times,
                                             const std::vector<ComplexField>& u_states,
                                             const NonlinearitySpec& spec) {
  const std::size_t m = times.size();
  std::vector<ComplexField> integral;
  integral.reserve(m);
  const GridSpec grid = u_states.front().grid;
  std::vector<Complex> acc(grid.n, Complex(0.0, 0.0));
  ComplexField prev = free_propagate(apply(spec, u_states[0]), -times[0]);
  integral.emplace_back(grid, std::vector<Complex>(acc));
  for (std::size_t j = 1; j < m; ++j) {
    ComplexField cur = free_propagate(apply(spec, u_states[j]), -times[j]);
    const double h = 0.5 * (times[j] - times[j - 1]);
    for (std::size_t k = 0; k < grid.n; ++k)
      acc[k] += h * (prev.values[k] + cur.values[k]);
    integral.emplace_back(grid, std::vector<Complex>(acc));
    prev = std::move(cur);
  }
  return integral;
}

double sup_lp_over_lattice(const std::vector<ComplexField>& fields, const Rational& p) {
  double sup = 0.0;
  for (const ComplexField& f : fields) sup = std::max(sup, lp_norm(f, p));
  return sup;
}

double lqlr_over_lattice(const std::vector<double>& times, const std::vector<ComplexField>& fields,
                         const Rational& q, const Rational& r) {
  std::vector<TimeSample> samples;
  samples.reserve(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) samples.emplace_back(times[j], fields[j]);
  return spacetime_norm(samples, LpExponent(q), r);
}

struct IterationState {
  std::vector<ComplexField> v;
  std::vector<ComplexField> u;
};

// X_T distance between two iterates: max of the twisted sup-norm gap and the
// L^q(L^r) gap of the physical states.
double xt_distance(const std::vector<double>& times, const IterationState& a,
                   const IterationState& b, const Rational& p, const Rational& q,
                   const Rational& r) {
  const GridSpec grid = a.v.front().grid;
  double sup = 0.0;
  std::vector<ComplexField> u_diff;
  u_diff.reserve(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) {
    std::vector<Complex> dv(grid.n), du(grid.n);
    for (std::size_t k = 0; k < grid.n; ++k) {
      dv[k] = a.v[j].values[k] - b.v[j].values[k];
      du[k] = a.u[j].values[k] - b.u[j].values[k];
    }
    sup = std::max(sup, lp_norm(ComplexField(grid, std::move(dv)), p));
    u_diff.emplace_back(grid, std::move(du));
  }
  return std::max(sup, lqlr_over_lattice(times, u_diff, q, r));
}

PicardResult picard_solve_impl(const ComplexField& phi, const NonlinearitySpec& spec,
                               const ExponentConfig& cfg, const PicardOptions& opts,
                               bool allow_quadrature_check);

}  // namespace

ComplexField TwistedTrajectory::u_state(std::size_t i) const {
  return free_propagate(v_states.at(i), times.at(i));
}

TwistedTrajectory TwistedTrajectory::from_physical(const Trajectory& traj) {
  TwistedTrajectory out;
  out.times = traj.times;
  out.v_states.reserve(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i)
    out.v_states.push_back(free_propagate(traj.states[i], -traj.times[i]));
  return out;
}

namespace {

PicardResult picard_solve_impl(const ComplexField& phi, const NonlinearitySpec& spec,
                               const ExponentConfig& cfg, const PicardOptions& opts,
                               bool allow_quadrature_check) {
  if (!(opts.T > 0.0)) throw std::invalid_argument("picard_solve: T must be positive");
  if (opts.n_time < 16) throw std::invalid_argument("picard_solve: n_time >= 16 required");

  XTNormReport report;
  const TheoremApplicability thm = theorem_applicability(cfg.alpha, cfg.p);
  if (!thm.lwp) {
    const std::string msg = "(alpha, p) = (" + cfg.alpha.str() + ", " + cfg.p.str() +
                            ") outside the local-theory hypothesis";
    if (opts.enforce_hypotheses) throw std::domain_error("picard_solve: " + msg);
    report.warnings.push_back(msg);
  }

  const std::size_t m = opts.n_time + 1;
  std::vector<double> times(m);
  for (std::size_t j = 0; j < m; ++j)
    times[j] = opts.T * static_cast<double>(j) / static_cast<double>(opts.n_time);

  IterationState cur;
  cur.v.assign(m, phi);
  cur.u.reserve(m);
  for (std::size_t j = 0; j < m; ++j) cur.u.push_back(free_propagate(phi, times[j]));

  const Complex unit_i(0.0, 1.0);
  double prev_distance = -1.0;
  std::size_t rising = 0;

  for (std::size_t iter = 1; iter <= opts.max_iter; ++iter) {
    const std::vector<ComplexField> duhamel = duhamel_cumulative(times, cur.u, spec);
    IterationState next;
    next.v.reserve(m);
    next.u.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Complex> vj(phi.grid.n);
      for (std::size_t k = 0; k < phi.grid.n; ++k)
        vj[k] = phi.values[k] + unit_i * duhamel[j].values[k];
      next.v.emplace_back(phi.grid, std::move(vj));
      next.u.push_back(free_propagate(next.v.back(), times[j]));
    }

    const double d = xt_distance(times, next, cur, cfg.p, cfg.q, cfg.r);
    report.iterations = iter;
    report.distances.push_back(d);
    if (prev_distance > 0.0) {
      report.contraction_factors.push_back(d / prev_distance);
      rising = d > prev_distance ? rising + 1 : 0;
    }
    cur = std::move(next);

    if (!std::isfinite(d) || rising >= 3) {
      report.status = PicardStatus::non_contraction;
      break;
    }
    if (d <= opts.tol) {
      report.converged = true;
      report.status = PicardStatus::converged;
      break;
    }
    prev_distance = d;
  }

  report.sup_twisted_lp = sup_lp_over_lattice(cur.v, cfg.p);
  report.lqlr = lqlr_over_lattice(times, cur.u, cfg.q, cfg.r);
  report.xt = std::max(report.sup_twisted_lp, report.lqlr);

  if (report.converged && opts.check_quadrature && allow_quadrature_check && opts.n_time >= 32) {
    PicardOptions coarse = opts;
    coarse.n_time = opts.n_time / 2;
    const PicardResult ref = picard_solve_impl(phi, spec, cfg, coarse, false);
    if (ref.report.converged && std::abs(ref.report.xt - report.xt) > 10.0 * opts.tol) {
      report.status = PicardStatus::quadrature_unresolved;
      report.converged = false;
      report.warnings.push_back("halving n_time shifted the X_T norm by more than 10*tol");
    }
  }

  PicardResult out{TwistedTrajectory{std::move(times), std::move(cur.v)}, std::move(report)};
  return out;
}

}  // namespace

PicardResult picard_solve(const ComplexField& phi, const NonlinearitySpec& spec,
                          const ExponentConfig& cfg, const PicardOptions& opts) {
  return picard_solve_impl(phi, spec, cfg, opts, true);
}

PersistenceScan twisted_persistence_scan(const TwistedTrajectory& traj, const Rational& p) {
  if (traj.times.empty()) throw std::invalid_argument("twisted_persistence_scan: empty trajectory");
  std::vector<double> norms;
  norms.reserve(traj.times.size());
  for (const ComplexField& v : traj.v_states) norms.push_back(lp_norm(v, p));

  PersistenceScan scan{NormTimeSeries(traj.times, p, norms), 0.0, {}, {}};
  scan.sup_m = *std::max_element(norms.begin(), norms.end());
  const GridSpec grid = traj.v_states.front().grid;
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    std::vector<Complex> diff(grid.n);
    for (std::size_t k = 0; k < grid.n; ++k)
      diff[k] = traj.v_states[i].values[k] - traj.v_states[i - 1].values[k];
    scan.gap_times.push_back(0.5 * (traj.times[i] + traj.times[i - 1]));
    scan.gap_norms.push_back(lp_norm(ComplexField(grid, std::move(diff)), p));
  }
  return scan;
}

DuhamelProbe bilinear_duhamel_probe(const TwistedTrajectory& traj, const NonlinearitySpec& spec,
                                    const ExponentConfig& cfg) {
  if (!(cfg.p > Rational(4, 3)))
    throw std::domain_error("bilinear_duhamel_probe: requires p > 4/3");
  if (traj.times.size() < 2)
    throw std::invalid_argument("bilinear_duhamel_probe: need at least two time samples");

  std::vector<ComplexField> u_states;
  u_states.reserve(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) u_states.push_back(traj.u_state(i));

  DuhamelProbe probe;
  const std::vector<ComplexField> duhamel = duhamel_cumulative(traj.times, u_states, spec);
  probe.lhs = sup_lp_over_lattice(duhamel, cfg.p);

  const double sup_v = sup_lp_over_lattice(traj.v_states, cfg.p);
  const double lqlr = lqlr_over_lattice(traj.times, u_states, cfg.q, cfg.r);
  const double am1 = (cfg.alpha - Rational(1)).to_double();
  const double denom = std::pow(lqlr, am1) * sup_v;
  probe.bilinear_ratio = denom > 0.0 ? probe.lhs / denom : 0.0;

  // Weighted variant: || s^{1/p-1/2} N(u) ||_{L^sigma L^rho} with
  // sigma = 4/3, rho = 2p/(3p-2).
  const Rational sigma(4, 3);
  const Rational rho = Rational(2) * cfg.p / (Rational(3) * cfg.p - Rational(2));
  const double w_exp = cfg.decay_exp.to_double();
  std::vector<double> wtimes;
  std::vector<double> wnorms;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double s = traj.times[i];
    const double weight = s > 0.0 ? std::pow(s, w_exp) : 0.0;
    wtimes.push_back(s);
    wnorms.push_back(weight * lp_norm(apply(spec, u_states[i]), rho));
  }
  const double weighted = spacetime_norm(NormTimeSeries(wtimes, rho, wnorms), LpExponent(sigma));
  probe.weighted_ratio = weighted > 0.0 ? probe.lhs / weighted : 0.0;
  return probe;
}

TmaxEstimate tmax_estimate(const ComplexField& phi, const NonlinearitySpec& spec,
                           const ExponentConfig& cfg, const WindowPolicy& policy) {
  TmaxEstimate est;
  if (!cfg.lifespan_exp)
    throw std::domain_error("tmax_estimate: lifespan exponent undefined at criticality");
  const double exp = cfg.lifespan_exp->to_double();

  ComplexField datum = phi;
  double t = 0.0;
  while (t < policy.t_end) {
    const double norm = lp_norm(datum, cfg.p);
    if (norm >= policy.norm_ceiling) {
      est.outcome = TmaxOutcome::norm_ceiling;
      break;
    }
    if (leakage_fraction(datum) > policy.leakage_threshold) {
      est.outcome = TmaxOutcome::grid_breakdown;
      break;
    }
    double window = norm > 0.0 ? policy.c_window * std::pow(norm, exp)
                               : policy.t_end - t;
    window = std::min(window, policy.t_end - t);

    PicardOptions opts;
    opts.T = window;
    opts.n_time = policy.n_time;
    opts.tol = policy.tol;
    opts.max_iter = policy.max_iter;
    const PicardResult res = picard_solve(datum, spec, cfg, opts);
    if (!res.report.converged) {
      est.outcome = TmaxOutcome::contraction_failed;
      break;
    }
    // Restart from the window's final physical state pulled back to its own
    // time origin: u(t + s) solves the equation with datum u(t).
    datum = res.trajectory.u_state(res.trajectory.times.size() - 1);
    t += window;
    est.window_sizes.push_back(window);
    est.outcome = TmaxOutcome::reached_t_end;
  }
  est.t_max = t;
  return est;
}

double contraction_horizon(const ComplexField& phi, const NonlinearitySpec& spec,
                           const ExponentConfig& cfg, const HorizonSearch& search) {
  auto contracts = [&](double T) {
    PicardOptions opts;
    opts.T = T;
    opts.n_time = search.n_time;
    opts.tol = search.tol;
    opts.max_iter = search.max_iter;
    const PicardResult res = picard_solve(phi, spec, cfg, opts);
    if (res.report.status == PicardStatus::non_contraction) return false;
    if (res.report.converged) return true;
    // Ran out of iterations: decide by the measured factors.
    const auto& f = res.report.contraction_factors;
    if (f.empty()) return false;
    const double last = f.back();
    return std::isfinite(last) && last < 0.98;
  };

  double hi = search.t_hi;
  while (hi > search.t_lo && !contracts(hi)) hi *= 0.5;
  if (hi <= search.t_lo) return search.t_lo;

  // hi contracts; the edge lies in (hi, 2 hi) unless hi was the cap.
  if (hi == search.t_hi) return hi;
  double lo = hi, bad = 2.0 * hi;
  for (int round = 0; round < search.bisection_rounds; ++round) {
    const double mid = 0.5 * (lo + bad);
    if (contracts(mid))
      lo = mid;
    else
      bad = mid;
  }
  return lo;
}

}  // namespace nlslab
