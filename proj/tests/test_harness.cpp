#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "nlslab/experiments.hpp"

using namespace nlslab;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("nlslab_run_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config serialization round trips") {
  ExperimentConfig cfg = default_config(Experiment::decay);
  cfg.tolerances["slope"] = 0.07;
  cfg.sweep = {1.0, 3.0};
  const Json j = cfg.to_json();
  const ExperimentConfig back = ExperimentConfig::from_json(j);
  CHECK(back.to_json() == j);
  CHECK(back.alpha == cfg.alpha);
  CHECK(back.p == cfg.p);
  CHECK(back.tolerances.at("slope") == 0.07);
}

TEST_CASE("config hash is reproducible") {
  const ExperimentConfig cfg = default_config(Experiment::hatlp);
  const std::string h1 = fnv1a_hex(cfg.to_json().dump());
  const std::string h2 = fnv1a_hex(cfg.to_json().dump());
  CHECK(h1 == h2);
  ExperimentConfig other = cfg;
  other.amplitude *= 2.0;
  CHECK(fnv1a_hex(other.to_json().dump()) != h1);
}

TEST_CASE("hypothesis gate refuses and explore stamps") {
  ExperimentConfig cfg = default_config(Experiment::decay);
  cfg.alpha = Rational(3);  // outside 4 < alpha < 5
  cfg.p = Rational(2);
  CHECK_THROWS_AS(run_decay(cfg), std::domain_error);

  cfg.explore = true;
  cfg.integrator.t_end = 3.0;
  const ExperimentReport rep = run_decay(cfg);
  CHECK(rep.outside_proven_range);
  REQUIRE_FALSE(rep.notes.empty());
  CHECK(rep.notes.front().find("outside proven range") != std::string::npos);
}

TEST_CASE("linear decay run hits the exact rate") {
  ExperimentConfig cfg = default_config(Experiment::decay);
  cfg.lambda = 0.0;
  cfg.alpha = Rational(3);
  cfg.p = Rational(3, 2);
  cfg.family = DataFamily::gaussian;
  cfg.amplitude = 1.0;
  const ExperimentReport rep = run_decay(cfg);
  CHECK(rep.pass);
  REQUIRE_FALSE(rep.checks.empty());
  CHECK(rep.checks.front().name == "decay_slope");
  CHECK(rep.checks.front().tolerance == 0.02);
  CHECK(rep.checks.front().error <= 0.02);
}

TEST_CASE("nonlinear decay slope approaches the linear rate as amplitude shrinks") {
  ExperimentConfig cfg = default_config(Experiment::decay);
  double errors[2];
  int i = 0;
  for (double amp : {0.4, 0.05}) {
    cfg.amplitude = amp;
    errors[i++] = run_decay(cfg).checks.front().error;
  }
  CHECK(errors[1] <= errors[0]);
  CHECK(errors[1] <= 0.02);  // at tiny amplitude the linear rate re-emerges
}

TEST_CASE("lifespan run reports non-applicability for the linear flow") {
  ExperimentConfig cfg = default_config(Experiment::lifespan);
  cfg.lambda = 0.0;
  const ExperimentReport rep = run_lifespan(cfg);
  CHECK(rep.pass);
  CHECK(rep.checks.empty());
  REQUIRE_FALSE(rep.notes.empty());
  CHECK(rep.notes.front().find("not applicable") != std::string::npos);
}

TEST_CASE("artifacts land in the output directory and the store is append-only") {
  ExperimentConfig cfg = default_config(Experiment::decay);
  cfg.lambda = 0.0;
  cfg.alpha = Rational(3);
  cfg.p = Rational(3, 2);
  const auto dir = temp_dir("decay");
  const ExperimentReport rep = run_decay(cfg, dir);
  CHECK(std::filesystem::exists(dir / "report.json"));
  CHECK(std::filesystem::exists(dir / "norms.csv"));
  CHECK(std::filesystem::exists(dir / "fields" / "initial.bin"));
  CHECK(std::filesystem::exists(dir / "fields" / "final.bin"));

  std::ifstream in(dir / "report.json");
  Json j;
  in >> j;
  CHECK(j.at("pass").get<bool>() == rep.pass);
  CHECK(j.at("provenance").at("config_hash").get<std::string>() == rep.config_hash);
  CHECK(j.at("provenance").at("code_version").get<std::string>() == rep.code_version);

  // reports are immutable once written
  CHECK_THROWS_AS(run_decay(cfg, dir), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("reports are reproducible bit for bit") {
  ExperimentConfig cfg = default_config(Experiment::strichartz_sweep);
  const auto dir1 = temp_dir("sweep1");
  const auto dir2 = temp_dir("sweep2");
  const ExperimentReport r1 = run_strichartz_sweep(cfg, dir1);
  const ExperimentReport r2 = run_strichartz_sweep(cfg, dir2);
  CHECK(r1.config_hash == r2.config_hash);
  CHECK(r1.values == r2.values);
  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("norms csv is deterministic") {
  ExperimentConfig cfg = default_config(Experiment::decay);
  cfg.lambda = 0.0;
  cfg.alpha = Rational(3);
  cfg.p = Rational(3, 2);
  const auto dir1 = temp_dir("det1");
  const auto dir2 = temp_dir("det2");
  run_decay(cfg, dir1);
  run_decay(cfg, dir2);
  std::ifstream a(dir1 / "norms.csv"), b(dir2 / "norms.csv");
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  CHECK_FALSE(sa.empty());
  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("experiment and family names round trip") {
  for (Experiment e : {Experiment::decay, Experiment::lifespan, Experiment::smoothing,
                       Experiment::persistence, Experiment::scatter, Experiment::hatlp,
                       Experiment::continuation, Experiment::strichartz_sweep})
    CHECK(experiment_from_name(experiment_name(e)) == e);
  for (DataFamily f : {DataFamily::gaussian, DataFamily::box, DataFamily::heavy_tail,
                       DataFamily::singular, DataFamily::random})
    CHECK(family_from_name(family_name(f)) == f);
  CHECK_THROWS_AS(experiment_from_name("unknown"), std::invalid_argument);
  CHECK_THROWS_AS(family_from_name("unknown"), std::invalid_argument);
}

TEST_CASE("persistence run refuses focusing large data") {
  ExperimentConfig cfg = default_config(Experiment::persistence);
  cfg.lambda = 1.0;
  CHECK_THROWS_AS(run_persistence(cfg), std::domain_error);
}

TEST_CASE("smoothing run validates the singular exponent") {
  ExperimentConfig cfg = default_config(Experiment::smoothing);
  cfg.beta = 0.1;  // no L^{p'} divergence
  CHECK_THROWS_AS(run_smoothing(cfg), std::invalid_argument);
  cfg.family = DataFamily::gaussian;
  CHECK_THROWS_AS(run_smoothing(cfg), std::invalid_argument);
}

}  // TEST_SUITE
