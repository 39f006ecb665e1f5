#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "nlslab/io.hpp"
#include "nlslab/profiles.hpp"

using namespace nlslab;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nlslab_test_" + name);
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("field container round trips bit exactly") {
  const GridSpec grid(512, 12.5);
  const ComplexField f = random_profile(grid, 77, 1.3);
  const auto path = temp_path("field.bin");
  write_field(path, f);
  const ComplexField back = read_field(path);
  CHECK(back.grid.n == f.grid.n);
  CHECK(back.grid.half_width == f.grid.half_width);
  for (std::size_t j = 0; j < grid.n; ++j) CHECK(back.values[j] == f.values[j]);
  std::filesystem::remove(path);
}

TEST_CASE("field container rejects truncation and bad tags") {
  const GridSpec grid(64, 4.0);
  const ComplexField f = gaussian_profile(grid);
  const auto path = temp_path("truncated.bin");
  write_field(path, f);
  std::filesystem::resize_file(path, 64);
  CHECK_THROWS_AS(read_field(path), std::runtime_error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_field(temp_path("missing.bin")), std::runtime_error);
}

TEST_CASE("csv writers") {
  const GridSpec grid(64, 4.0);
  const ComplexField f = gaussian_profile(grid);
  const auto field_csv = temp_path("field.csv");
  write_field_csv(field_csv, f);
  std::ifstream in(field_csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,re,im");
  std::string first;
  std::getline(in, first);
  CHECK(first.substr(0, 3) == "-4,");
  std::filesystem::remove(field_csv);

  const NormTimeSeries series({0.0, 0.5, 1.0}, Rational(2), {1.0, 0.75, 0.5});
  const auto series_csv = temp_path("series.csv");
  write_norm_series_csv(series_csv, series);
  std::ifstream sin(series_csv);
  std::getline(sin, header);
  CHECK(header == "t,norm");
  std::getline(sin, first);
  CHECK(first == "0,1");
  std::filesystem::remove(series_csv);

  const auto norms_csv = temp_path("norms.csv");
  write_norms_csv(norms_csv, {NormsRow{0.0, 1.0, 2.0, 3.0, 4e-5}});
  std::ifstream nin(norms_csv);
  std::getline(nin, header);
  CHECK(header == "t,u_lp_dual,v_lp,mass,leakage");
  std::getline(nin, first);
  CHECK(first == "0,1,2,3,4e-05");
  std::filesystem::remove(norms_csv);
}

TEST_CASE("deterministic double formatting round trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-17, 123456.789, -2.5e300}) {
    CHECK(std::stod(format_double(v)) == v);
    CHECK(format_double(v) == format_double(v));
  }
}

TEST_CASE("rationals serialize as num/den strings") {
  CHECK(rational_to_json(Rational(3, 2)).get<std::string>() == "3/2");
  CHECK(rational_to_json(Rational(4)).get<std::string>() == "4/1");
  CHECK(rational_from_json(Json("7/4")) == Rational(7, 4));
  CHECK(rational_from_json(Json(3)) == Rational(3));
  CHECK(rational_from_json(Json(1.9)) == Rational(19, 10));
  CHECK_THROWS_AS(rational_from_json(Json::array()), std::invalid_argument);
}

TEST_CASE("fnv hash is stable and sensitive") {
  const std::string a = fnv1a_hex("nlslab config");
  CHECK(a == fnv1a_hex("nlslab config"));
  CHECK(a != fnv1a_hex("nlslab config!"));
  CHECK(a.size() == 16);
}

}  // TEST_SUITE
