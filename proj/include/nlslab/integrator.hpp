#pragma once

#include <vector>

#include "nlslab/grid.hpp"
#include "nlslab/nonlinearity.hpp"

namespace nlslab {

enum class Dealias { none, two_thirds };

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  Dealias dealias = Dealias::two_thirds;
  std::size_t record_every = 1;
  /// Trajectories whose boundary-band mass exceeds this are flagged.
  double leakage_threshold = 1e-3;
};

struct TrajectoryRecord {
  double time = 0.0;
  double mass = 0.0;
  double leakage = 0.0;
};

/// Recorded split-step evolution of i u_t + u_xx + lambda N(u) = 0.
struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexField> states;
  std::vector<TrajectoryRecord> diagnostics;
  bool leakage_flagged = false;
  double first_leakage_time = 0.0;

  const ComplexField& final_state() const { return states.back(); }
};

/// Thrown when the field stops being finite; carries the offending time.
struct IntegrationBlowup : std::runtime_error {
  IntegrationBlowup(double t, const std::string& msg) : std::runtime_error(msg), time(t) {}
  double time;
};

/// Squared L^2 norm.
double mass(const ComplexField& f);

/// One Strang step of length dt (dt may be negative).  The gauge nonlinear
/// substep is the exact pointwise phase rotation u <- u e^{i lambda
/// |u|^{alpha-1} dt/2}; non-gauge kinds take an explicit midpoint substep.
ComplexField strang_step(const ComplexField& u, const NonlinearitySpec& spec, double dt,
                         Dealias dealias);

/// Integrates to cfg.t_end recording every cfg.record_every steps (the
/// initial state is always recorded; dt is nudged so the steps tile t_end).
Trajectory evolve(const ComplexField& phi, const NonlinearitySpec& spec,
                  const IntegratorConfig& cfg);

}  // namespace nlslab
