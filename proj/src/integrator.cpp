#include "nlslab/integrator.hpp"

#include <cmath>
#include <sstream>

#include "nlslab/spectral.hpp"

namespace nlslab {

namespace {

// Exact solution of i u_t + lambda N(u) = 0 over tau for the gauge kind:
// |u| is invariant, so u rotates by e^{i lambda |u|^{alpha-1} tau}.
void gauge_phase_rotation(std::vector<Complex>& v, double alpha_minus_one, double lambda,
                          double tau) {
  for (Complex& c : v) {
    const double a = std::abs(c);
    if (a == 0.0) continue;
    const double theta = lambda * amplitude_power(a, alpha_minus_one) * tau;
    c *= Complex(std::cos(theta), std::sin(theta));
  }
}

// Explicit midpoint for u_t = i lambda N(u), used for the non-gauge kinds.
std::vector<Complex> midpoint_substep(const GridSpec& grid, const std::vector<Complex>& v,
                                      const NonlinearitySpec& spec, double tau) {
  const ComplexField u0(grid, v);
  const ComplexField k1 = apply(spec, u0);
  std::vector<Complex> mid(v.size());
  const Complex ih(0.0, 0.5 * tau);
  for (std::size_t j = 0; j < v.size(); ++j) mid[j] = v[j] + ih * k1.values[j];
  const ComplexField k2 = apply(spec, ComplexField(grid, std::move(mid)));
  std::vector<Complex> out(v.size());
  const Complex it(0.0, tau);
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[j] + it * k2.values[j];
  return out;
}

}  // namespace

double mass(const ComplexField& f) {
  double acc = 0.0;
  for (const Complex& c : f.values) acc += std::norm(c);
  return acc * f.grid.dx;
}

ComplexField strang_step(const ComplexField& u, const NonlinearitySpec& spec, double dt,
                         Dealias dealias) {
  const double am1 = (spec.alpha - Rational(1)).to_double();
  std::vector<Complex> v = u.values;

  if (spec.kind == NonlinearityKind::gauge)
    gauge_phase_rotation(v, am1, spec.lambda, 0.5 * dt);
  else
    v = midpoint_substep(u.grid, v, spec, 0.5 * dt);

  ComplexField mid =
      free_propagate(ComplexField(u.grid, std::move(v)), dt, dealias == Dealias::two_thirds);

  v = std::move(mid.values);
  if (spec.kind == NonlinearityKind::gauge)
    gauge_phase_rotation(v, am1, spec.lambda, 0.5 * dt);
  else
    v = midpoint_substep(u.grid, v, spec, 0.5 * dt);

  return ComplexField(u.grid, std::move(v));
}

Trajectory evolve(const ComplexField& phi, const NonlinearitySpec& spec,
                  const IntegratorConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
  if (cfg.t_end < 0.0) throw std::invalid_argument("evolve: t_end must be nonnegative");
  if (cfg.record_every < 1) throw std::invalid_argument("evolve: record_every >= 1 required");

  const auto n_steps =
      cfg.t_end == 0.0 ? 0 : std::max<long long>(1, std::llround(cfg.t_end / cfg.dt));
  const double dt = cfg.t_end == 0.0 ? cfg.dt : cfg.t_end / static_cast<double>(n_steps);

  Trajectory traj;
  auto record = [&](double t, const ComplexField& state) {
    const double lk = leakage_fraction(state);
    traj.times.push_back(t);
    traj.states.push_back(state);
    traj.diagnostics.push_back(TrajectoryRecord{t, mass(state), lk});
    if (lk > cfg.leakage_threshold && !traj.leakage_flagged) {
      traj.leakage_flagged = true;
      traj.first_leakage_time = t;
    }
  };

  ComplexField u = phi;
  record(0.0, u);
  for (long long step = 1; step <= n_steps; ++step) {
    const double t = static_cast<double>(step) * dt;
    try {
      u = strang_step(u, spec, dt, cfg.dealias);
    } catch (const std::invalid_argument&) {
      // ComplexField construction rejects non-finite samples mid-step.
      std::ostringstream msg;
      msg << "evolve: solution lost finiteness at t = " << t;
      throw IntegrationBlowup(t, msg.str());
    }
    if (step % static_cast<long long>(cfg.record_every) == 0 || step == n_steps)
      record(t, u);
  }
  return traj;
}

}  // namespace nlslab
