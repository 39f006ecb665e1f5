#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlslab/nonlinearity.hpp"
#include "nlslab/profiles.hpp"

using namespace nlslab;

namespace {

ComplexField constant_field(const GridSpec& grid, Complex value) {
  return ComplexField(grid, std::vector<Complex>(grid.n, value));
}

}  // namespace

TEST_SUITE("nonlinearity") {

TEST_CASE("pointwise evaluation") {
  const GridSpec grid(64, 4.0);

  NonlinearitySpec cubic{NonlinearityKind::gauge, Rational(3), 1.0};
  const ComplexField ones = apply(cubic, constant_field(grid, Complex(1.0, 0.0)));
  CHECK(ones.values[0] == Complex(1.0, 0.0));

  const ComplexField twoi = apply(cubic, constant_field(grid, Complex(0.0, 2.0)));
  CHECK(twoi.values[0].real() == doctest::Approx(0.0));
  CHECK(twoi.values[0].imag() == doctest::Approx(8.0));

  cubic.lambda = -2.5;
  const ComplexField scaled = apply(cubic, constant_field(grid, Complex(0.0, 2.0)));
  CHECK(scaled.values[0].imag() == doctest::Approx(-20.0));

  // |u|^alpha kind is real valued: |3+4i|^2 = 25
  NonlinearitySpec modulus{NonlinearityKind::modulus, Rational(2), 1.0};
  const ComplexField m = apply(modulus, constant_field(grid, Complex(3.0, 4.0)));
  CHECK(m.values[0].real() == doctest::Approx(25.0));
  CHECK(m.values[0].imag() == doctest::Approx(0.0));

  NonlinearitySpec conj{NonlinearityKind::conjugate, Rational(3), 1.0};
  const ComplexField c = apply(conj, constant_field(grid, Complex(0.0, 2.0)));
  CHECK(c.values[0].imag() == doctest::Approx(-8.0));

  // N(0) = 0 exactly, including fractional powers
  NonlinearitySpec frac{NonlinearityKind::gauge, Rational(9, 2), 1.0};
  const ComplexField z = apply(frac, constant_field(grid, Complex(0.0, 0.0)));
  CHECK(z.values[0] == Complex(0.0, 0.0));
}

TEST_CASE("gauge covariance under constant phases") {
  const GridSpec grid(256, 8.0);
  const NonlinearitySpec spec{NonlinearityKind::gauge, Rational(7, 2), 1.0};
  const ComplexField u = random_profile(grid, 17, 1.0);
  const ComplexField nu = apply(spec, u);
  for (double theta : {0.0, std::numbers::pi / 3.0, std::numbers::pi / 2.0}) {
    const Complex phase(std::cos(theta), std::sin(theta));
    std::vector<Complex> rotated(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) rotated[j] = phase * u.values[j];
    const ComplexField nrot = apply(spec, ComplexField(grid, std::move(rotated)));
    for (std::size_t j = 0; j < grid.n; j += 17)
      CHECK(std::abs(nrot.values[j] - phase * nu.values[j]) <=
            1e-13 * std::abs(nu.values[j]) + 1e-300);
  }
}

TEST_CASE("homogeneity of degree alpha") {
  const GridSpec grid(256, 8.0);
  const ComplexField u = random_profile(grid, 23, 1.0);
  const double s = 1.7;
  for (NonlinearityKind kind :
       {NonlinearityKind::gauge, NonlinearityKind::conjugate, NonlinearityKind::modulus}) {
    const NonlinearitySpec spec{kind, Rational(5, 2), 1.0};
    const ComplexField nu = apply(spec, u);
    std::vector<Complex> su(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) su[j] = s * u.values[j];
    const ComplexField nsu = apply(spec, ComplexField(grid, std::move(su)));
    const double factor = std::pow(s, 2.5);
    for (std::size_t j = 0; j < grid.n; j += 31)
      CHECK(std::abs(nsu.values[j] - factor * nu.values[j]) <=
            1e-12 * factor * std::abs(nu.values[j]) + 1e-300);
  }
}

TEST_CASE("lipschitz probe") {
  const GridSpec grid(256, 8.0);
  const NonlinearitySpec cubic{NonlinearityKind::gauge, Rational(3), 1.0};

  const ComplexField u = random_profile(grid, 31, 1.0);
  CHECK(lipschitz_probe(cubic, u, u) == 0.0);

  // scalar check u = 1, v = 0: |N(1)-N(0)| / ((1+0)*1) = 1
  const ComplexField one = constant_field(grid, Complex(1.0, 0.0));
  const ComplexField zero = constant_field(grid, Complex(0.0, 0.0));
  CHECK(lipschitz_probe(cubic, one, zero) == doctest::Approx(1.0));

  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const ComplexField a = random_profile(grid, rng(), 1.0 + 0.1 * (trial % 7));
    const ComplexField b = random_profile(grid, rng(), 0.5 + 0.2 * (trial % 5));
    worst = std::max(worst, lipschitz_probe(cubic, a, b));
  }
  CHECK(worst <= 2.0);
  CHECK(worst > 0.5);  // the sweep is not vacuous
}

TEST_CASE("difference kernel") {
  const GridSpec grid(256, 8.0);
  const NonlinearitySpec cubic{NonlinearityKind::gauge, Rational(3), 1.0};
  const ComplexField v = random_profile(grid, 41, 1.0);
  const ComplexField w = random_profile(grid, 43, 0.7);
  const ComplexField zero = constant_field(grid, Complex(0.0, 0.0));

  // w1 = w2 kills the kernel
  const ComplexField same = g_kernel(cubic, v, w, w);
  for (std::size_t j = 0; j < grid.n; j += 13) CHECK(same.values[j] == Complex(0.0, 0.0));

  // w2 = 0 gives the forcing N(v+w) - N(v)
  const ComplexField forcing = g_kernel(cubic, v, w, zero);
  std::vector<Complex> sum(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) sum[j] = v.values[j] + w.values[j];
  const ComplexField direct_sum = apply(cubic, ComplexField(grid, std::move(sum)));
  const ComplexField direct_v = apply(cubic, v);
  for (std::size_t j = 0; j < grid.n; j += 13)
    CHECK(std::abs(forcing.values[j] - (direct_sum.values[j] - direct_v.values[j])) <= 1e-14);

  // v = 0, w2 = 0 reduces to N(w1)
  const ComplexField reduced = g_kernel(cubic, zero, w, zero);
  const ComplexField nw = apply(cubic, w);
  for (std::size_t j = 0; j < grid.n; j += 13)
    CHECK(std::abs(reduced.values[j] - nw.values[j]) <= 1e-14);

  const NonlinearitySpec conj{NonlinearityKind::conjugate, Rational(3), 1.0};
  CHECK_THROWS_AS(g_kernel(conj, v, w, zero), std::invalid_argument);
}

TEST_CASE("kind names round trip") {
  for (NonlinearityKind kind :
       {NonlinearityKind::gauge, NonlinearityKind::conjugate, NonlinearityKind::modulus})
    CHECK(kind_from_name(kind_name(kind)) == kind);
  CHECK_THROWS_AS(kind_from_name("cubic"), std::invalid_argument);
}

}  // TEST_SUITE
