#pragma once

#include <string>
#include <vector>

#include "nlslab/exponents.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/integrator.hpp"
#include "nlslab/nonlinearity.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab {

/// Solution trajectory in the twisted variable v(t) = U(-t) u(t) on a
/// uniform lattice over [0, T]; v(0) is the datum exactly.
struct TwistedTrajectory {
  std::vector<double> times;
  std::vector<ComplexField> v_states;

  ComplexField u_state(std::size_t i) const;  ///< U(t_i) v_i on demand
  static TwistedTrajectory from_physical(const Trajectory& traj);
};

enum class PicardStatus {
  converged,
  non_contraction,        ///< distance ratios stayed above 1; T beyond the contraction regime
  max_iterations,
  quadrature_unresolved,  ///< halving the time lattice moved the answer by > 10 tol
};

/// X_T bookkeeping of a Picard run: the two components of the norm, the
/// per-iteration distance ratios, and the convergence status.
struct XTNormReport {
  double sup_twisted_lp = 0.0;  ///< sup_t ||v(t)||_p over the lattice
  double lqlr = 0.0;            ///< ||u||_{L^q([0,T]; L^r)}
  double xt = 0.0;              ///< max of the two
  std::vector<double> distances;            ///< X_T distance between successive iterates
  std::vector<double> contraction_factors;  ///< d_{k+1} / d_k
  std::size_t iterations = 0;
  bool converged = false;
  PicardStatus status = PicardStatus::max_iterations;
  std::vector<std::string> warnings;
};

struct PicardOptions {
  double T = 0.5;
  std::size_t n_time = 128;
  double tol = 1e-10;
  std::size_t max_iter = 40;
  /// Re-solve on the halved lattice after convergence and compare.
  bool check_quadrature = false;
  /// Hypothesis violations throw instead of warn.
  bool enforce_hypotheses = false;
};

struct PicardResult {
  TwistedTrajectory trajectory;
  XTNormReport report;
};

/// Iterates v_{n+1}(t) = phi + i Int_0^t U(-s) N(U(s) v_n(s)) ds on the
/// lattice (composite trapezoid) until the X_T distance between iterates
/// falls below tol.
PicardResult picard_solve(const ComplexField& phi, const NonlinearitySpec& spec,
                          const ExponentConfig& cfg, const PicardOptions& opts);

/// Per-time twisted norms, their running sup, and adjacent-record
/// modulus-of-continuity samples.
struct PersistenceScan {
  NormTimeSeries twisted_norms;
  double sup_m = 0.0;  ///< sup_t ||U(-t)u(t)||_p over the records
  std::vector<double> gap_times;   ///< midpoints of adjacent records
  std::vector<double> gap_norms;   ///< ||v(t_{i+1}) - v(t_i)||_p
};

PersistenceScan twisted_persistence_scan(const TwistedTrajectory& traj, const Rational& p);

/// Duhamel-operator probes: the bilinear bound (LHS over the product of the
/// space-time and twisted-sup norms) and the weighted variant with
/// (sigma, rho) = (4/3, 2p/(3p-2)).
struct DuhamelProbe {
  double lhs = 0.0;  ///< sup_t ||Int_0^t U(-s)N(u(s)) ds||_p
  double bilinear_ratio = 0.0;
  double weighted_ratio = 0.0;
};

/// Requires p > 4/3; zero trajectories give zero ratios by convention.
DuhamelProbe bilinear_duhamel_probe(const TwistedTrajectory& traj, const NonlinearitySpec& spec,
                                    const ExponentConfig& cfg);

enum class TmaxOutcome { reached_t_end, contraction_failed, norm_ceiling, grid_breakdown };

struct WindowPolicy {
  double c_window = 0.25;  ///< window prefactor: T_k = c ||v||_p^{lifespan_exp}
  double t_end = 10.0;
  double norm_ceiling = 1e3;
  double leakage_threshold = 1e-2;
  std::size_t n_time = 64;
  double tol = 1e-8;
  std::size_t max_iter = 30;
};

struct TmaxEstimate {
  double t_max = 0.0;
  TmaxOutcome outcome = TmaxOutcome::reached_t_end;
  std::vector<double> window_sizes;
};

/// Greedy continuation: windows sized by the lifespan formula applied to the
/// current twisted norm, each solved by Picard iteration; stops where
/// contraction fails, the twisted norm passes the ceiling, or the grid
/// breaks down (reported distinctly).
TmaxEstimate tmax_estimate(const ComplexField& phi, const NonlinearitySpec& spec,
                           const ExponentConfig& cfg, const WindowPolicy& policy);

struct HorizonSearch {
  double t_hi = 4.0;
  double t_lo = 1e-7;
  std::size_t n_time = 48;
  double tol = 1e-9;
  std::size_t max_iter = 30;
  int bisection_rounds = 6;
};

/// Largest single-window T on which the Picard iteration still contracts,
/// located by halving from t_hi and refining by bisection.  This is the
/// operational lifespan proxy used by the amplitude-sweep experiments.
double contraction_horizon(const ComplexField& phi, const NonlinearitySpec& spec,
                           const ExponentConfig& cfg, const HorizonSearch& search);

}  // namespace nlslab
