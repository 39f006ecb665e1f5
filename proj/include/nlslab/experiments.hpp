#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlslab/decomposition.hpp"
#include "nlslab/exponents.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/integrator.hpp"
#include "nlslab/io.hpp"
#include "nlslab/nonlinearity.hpp"
#include "nlslab/picard.hpp"

namespace nlslab {

enum class Experiment {
  decay,
  lifespan,
  smoothing,
  persistence,
  scatter,
  hatlp,
  continuation,
  strichartz_sweep,
};

const char* experiment_name(Experiment e);
Experiment experiment_from_name(const std::string& name);

enum class DataFamily { gaussian, box, heavy_tail, singular, random };

const char* family_name(DataFamily f);
DataFamily family_from_name(const std::string& name);

/// One experiment's full parameterization.  Serializes to/from JSON; the
/// serialized form is hashed into the report provenance.
struct ExperimentConfig {
  Experiment experiment = Experiment::decay;
  Rational alpha{3};
  Rational p{2};
  std::optional<Rational> p0;

  std::size_t grid_n = 2048;
  double half_width = 128.0;

  IntegratorConfig integrator;

  NonlinearityKind kind = NonlinearityKind::gauge;
  double lambda = 1.0;

  DataFamily family = DataFamily::gaussian;
  double amplitude = 1.0;
  double width = 1.0;
  double beta = 0.5;
  std::uint64_t seed = 1;

  PicardOptions picard;

  double fit_t_min = 1.5;
  std::vector<double> sweep;  ///< amplitudes (lifespan), N values (continuation), dyadic times
  double m_const = 2.0;

  bool explore = false;
  std::map<std::string, double> tolerances;

  Json to_json() const;
  static ExperimentConfig from_json(const Json& j);
  NonlinearitySpec nonlinearity() const { return NonlinearitySpec{kind, alpha, lambda}; }
};

/// Defaults sized so each experiment runs at desk scale with valid wrap
/// windows.
ExperimentConfig default_config(Experiment e);

struct CheckRow {
  std::string name;
  double fitted = 0.0;
  double target = 0.0;
  double error = 0.0;  ///< relative where target != 0, absolute otherwise
  double tolerance = 0.0;
  bool ok = false;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<CheckRow> checks;
  std::map<std::string, double> values;  ///< additional measured quantities
  std::vector<std::string> notes;
  bool pass = false;
  bool outside_proven_range = false;
  std::string config_hash;
  std::string code_version;
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;

  Json to_json() const;
};

using OutDir = std::optional<std::filesystem::path>;

ExperimentReport run_decay(const ExperimentConfig& cfg, const OutDir& out = {});
ExperimentReport run_lifespan(const ExperimentConfig& cfg, const OutDir& out = {});
ExperimentReport run_smoothing(const ExperimentConfig& cfg, const OutDir& out = {});
ExperimentReport run_persistence(const ExperimentConfig& cfg, const OutDir& out = {});
ExperimentReport run_scatter(const ExperimentConfig& cfg, const OutDir& out = {});
ExperimentReport run_hatlp(const ExperimentConfig& cfg, const OutDir& out = {});
ExperimentReport run_continuation(const ExperimentConfig& cfg, const OutDir& out = {});
ExperimentReport run_strichartz_sweep(const ExperimentConfig& cfg, const OutDir& out = {});

ExperimentReport run_experiment(const ExperimentConfig& cfg, const OutDir& out = {});

/// Builds the configured initial datum on the configured grid.
ComplexField build_datum(const ExperimentConfig& cfg, const GridSpec& grid);

/// JSON views of library records used by the CLI.
Json exponent_config_to_json(const ExponentConfig& cfg);
Json applicability_to_json(const TheoremApplicability& thm);
Json xt_report_to_json(const XTNormReport& report);
Json split_report_to_json(const SplitReport& report);
Json continuation_run_to_json(const ContinuationRunReport& report);

}  // namespace nlslab
