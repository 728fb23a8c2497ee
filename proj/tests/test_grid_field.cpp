#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "nlb/grid.hpp"
#include "nlb/spectral.hpp"
#include "test_util.hpp"

using namespace nlb;
using nlb::test::random_band_limited;

TEST_CASE("make_grid builds the uniform periodic mesh") {
  auto g = make_grid(4);
  CHECK(g->n == 4);
  CHECK(g->mesh == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(g->nodes[0] == doctest::Approx(-kPi));
  CHECK(g->nodes[1] == doctest::Approx(-kPi / 2));
  CHECK(g->nodes[2] == doctest::Approx(0.0));
  CHECK(g->nodes[3] == doctest::Approx(kPi / 2));

  CHECK(make_grid(8)->mesh == doctest::Approx(kPi / 4).epsilon(1e-15));

  CHECK_THROWS_AS(make_grid(3), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(7), std::invalid_argument);
}

TEST_CASE("field construction validates length and finiteness") {
  auto g = make_grid(4);
  CHECK_THROWS_AS(make_field(g, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_field(g, {1.0, 2.0, std::nan(""), 0.0}), std::invalid_argument);
  Field f = constant_field(g, 5.0);
  CHECK(all_finite(f));
  CHECK(f.size() == 4);
}

TEST_CASE("dft recovers single Fourier modes under the fixed convention") {
  SUBCASE("constant field has only the DC coefficient") {
    auto g = make_grid(32);
    Spectrum s = dft(constant_field(g, 3.5));
    CHECK(std::abs(s.at(0) - std::complex<double>(3.5, 0.0)) < 1e-14);
    for (int k = -16; k < 16; ++k)
      if (k != 0) CHECK(std::abs(s.at(k)) < 1e-14);
  }
  SUBCASE("sin x gives uhat(+-1) = -+ i/2") {
    auto g = make_grid(64);
    Spectrum s = dft(sample_field(g, [](double x) { return std::sin(x); }));
    CHECK(std::abs(s.at(1) - std::complex<double>(0.0, -0.5)) < 1e-12);
    CHECK(std::abs(s.at(-1) - std::complex<double>(0.0, 0.5)) < 1e-12);
    for (int k = -32; k < 32; ++k)
      if (k != 1 && k != -1) CHECK(std::abs(s.at(k)) < 1e-12);
  }
  SUBCASE("linear combination of modes") {
    auto g = make_grid(64);
    Spectrum s = dft(sample_field(
        g, [](double x) { return 2.0 + std::sin(x) + 0.3 * std::cos(5.0 * x); }));
    CHECK(std::abs(s.at(0)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(s.at(1)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(s.at(-1)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(s.at(5)) == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(std::abs(s.at(-5)) == doctest::Approx(0.15).epsilon(1e-12));
  }
}

TEST_CASE("dft/idft round trip and Parseval over a range of grid sizes") {
  for (int n : {8, 16, 32, 64, 128, 256, 512, 1024}) {
    auto g = make_grid(n);
    Field f = random_band_limited(g, n / 2 - 1, 1234u + n, 0.7);
    Field back = idft(dft(f));
    const double scale = max_abs(f);
    CHECK(nlb::test::dist_inf(f, back) <= 1e-12 * scale);

    // Parseval under the declared convention: (1/n) sum |f|^2 = sum |uhat|^2.
    double phys = 0.0;
    for (double v : f.values) phys += v * v;
    phys /= n;
    double spec = 0.0;
    for (const auto& c : dft(f).coeffs) spec += std::norm(c);
    CHECK(phys == doctest::Approx(spec).epsilon(1e-12));
  }
}

TEST_CASE("lp_norm is the rectangle rule on the torus") {
  SUBCASE("constant") {
    auto g = make_grid(16);
    CHECK(lp_norm(constant_field(g, -3.0), 2.0) ==
          doctest::Approx(3.0 * std::sqrt(kTwoPi)).epsilon(1e-14));
  }
  SUBCASE("sin x at n=128 integrates exactly") {
    auto g = make_grid(128);
    Field f = sample_field(g, [](double x) { return std::sin(x); });
    CHECK(lp_norm(f, 2.0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
  }
  SUBCASE("relaxation-limit data") {
    auto g = make_grid(128);
    Field f = sample_field(
        g, [](double x) { return 2.0 + std::sin(x) + 0.3 * std::cos(5.0 * x); });
    // ||u||_L2 / sqrt(2 pi) = 0.3 sqrt(101/2)
    CHECK(lp_norm(f, 2.0) / std::sqrt(kTwoPi) ==
          doctest::Approx(0.3 * std::sqrt(50.5)).epsilon(1e-12));
  }
  SUBCASE("p = inf is the max norm") {
    auto g = make_grid(64);
    Field f = sample_field(g, [](double x) { return std::sin(x) - 2.0; });
    CHECK(lp_norm(f, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("p < 1 rejected") {
    auto g = make_grid(8);
    CHECK_THROWS_AS(lp_norm(constant_field(g, 1.0), 0.5), std::invalid_argument);
  }
  SUBCASE("probability-normalized norms are nondecreasing in p") {
    auto g = make_grid(64);
    Field f = sample_field(g, [](double x) { return 1.0 + 0.8 * std::sin(x); });
    double prev = 0.0;
    for (double p : {1.0, 2.0, 4.0, 8.0}) {
      const double norm_p = lp_norm(f, p) / std::pow(kTwoPi, 1.0 / p);
      CHECK(norm_p >= prev - 1e-13);
      prev = norm_p;
    }
    CHECK(lp_norm(f, std::numeric_limits<double>::infinity()) >= prev - 1e-13);
  }
}

TEST_CASE("extrema reports min, max, amplitude") {
  auto g4 = make_grid(4);
  auto e1 = extrema(constant_field(g4, 5.0));
  CHECK(e1.min == 5.0);
  CHECK(e1.max == 5.0);
  CHECK(e1.amplitude == 0.0);

  auto e2 = extrema(sample_field(g4, [](double x) { return std::sin(x); }));
  CHECK(e2.min == doctest::Approx(-1.0));
  CHECK(e2.max == doctest::Approx(1.0));
  CHECK(e2.amplitude == doctest::Approx(2.0));

  auto g = make_grid(512);
  auto e3 = extrema(sample_field(g, [](double x) { return 2.0 + std::sin(x); }));
  CHECK(e3.min == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(e3.max == doctest::Approx(3.0).epsilon(1e-4));

  SUBCASE("shifting by a constant shifts min and max, amplitude fixed") {
    Field f = random_band_limited(make_grid(64), 10, 77u);
    auto base = extrema(f);
    for (double c : {0.3, -12.0, 4e6}) {
      std::vector<double> v = f.values;
      for (double& x : v) x += c;
      auto shifted = extrema(make_field(f.grid, std::move(v)));
      const double tol = 1e-12 * std::max(1.0, std::fabs(c));
      CHECK(std::fabs(shifted.min - (base.min + c)) <= tol);
      CHECK(std::fabs(shifted.max - (base.max + c)) <= tol);
      CHECK(std::fabs(shifted.amplitude - base.amplitude) <= tol);
    }
  }
}

TEST_CASE("momentum and mean are the discrete integral and average") {
  auto g = make_grid(64);
  Field f = sample_field(g, [](double x) { return 2.0 + std::sin(x); });
  CHECK(momentum(f) == doctest::Approx(4.0 * kPi).epsilon(1e-13));
  CHECK(mean_value(f) == doctest::Approx(2.0).epsilon(1e-13));
}
