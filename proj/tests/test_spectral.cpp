#include <cmath>
#include <numbers>
#include <thread>

#include "doctest.h"
#include "kdv/error.hpp"
#include "kdv/field.hpp"
#include "kdv/grid.hpp"
#include "kdv/spectral.hpp"
#include "support/analytic.hpp"

using namespace kdv;
using std::numbers::pi;

namespace {

double max_abs_diff(const Field& a, const Field& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
  return worst;
}

double max_abs(const Field& a) { return norms(a).linf; }

// Smooth, band-limited test function with several modes well below n/3.
Field trig_mix(const Grid& g) {
  const double k = 2.0 * pi / g.length();
  return Field::sample(g, [k](double x) {
    return 0.3 + std::sin(k * x) - 0.5 * std::cos(3 * k * x) + 0.25 * std::sin(7 * k * x + 0.4);
  });
}

}  // namespace

TEST_CASE("make_grid builds the uniform grid and FFT-ordered wavenumbers") {
  const Grid g = make_grid(8, 2 * pi);
  for (std::size_t j = 0; j < 8; ++j) CHECK(g.point(j) == doctest::Approx(j * pi / 4));
  const std::vector<double> expected = {0, 1, 2, 3, 4, -3, -2, -1};
  for (std::size_t j = 0; j < 8; ++j) CHECK(g.wavenumbers()[j] == doctest::Approx(expected[j]));
  CHECK(g.dealias_cutoff() == 2);

  CHECK(make_grid(256, 100).spacing() == 0.390625);
}

TEST_CASE("make_grid rejects bad sizes") {
  CHECK_THROWS_AS(make_grid(7, 10), ConfigError);
  CHECK_THROWS_AS(make_grid(6, 10), ConfigError);
  CHECK_THROWS_AS(make_grid(64, 0), ConfigError);
  CHECK_THROWS_AS(make_grid(64, -1), ConfigError);
  CHECK_THROWS_AS(make_grid(64, NAN), ConfigError);
}

TEST_CASE("grids compare by size and length, not identity") {
  CHECK(make_grid(64, 10) == make_grid(64, 10));
  CHECK_FALSE(make_grid(64, 10) == make_grid(64, 11));
  CHECK_FALSE(make_grid(64, 10) == make_grid(128, 10));
}

TEST_CASE("fields reject non-finite values and mismatched grids") {
  const Grid g = make_grid(8, 1);
  CHECK_THROWS_AS(Field(g, std::vector<double>(8, NAN)), NonFiniteError);
  CHECK_THROWS_AS(Field(g, std::vector<double>(7, 0.0)), ConfigError);
  CHECK_THROWS_AS(Field::constant(g, 1e300) * 1e300, NonFiniteError);

  Field a = Field::constant(g, 1.0);
  const Field b = Field::constant(make_grid(16, 1), 1.0);
  CHECK_THROWS_AS(a += b, ConfigError);
  // Same (n, L) from a different construction is compatible.
  CHECK_NOTHROW(a += Field::constant(make_grid(8, 1), 2.0));
  CHECK(a[3] == 3.0);
}

TEST_CASE("derivative of sin is cos") {
  const Grid g = make_grid(256, 2 * pi);
  const Field f = Field::sample(g, [](double x) { return std::sin(x); });
  const Field expected = Field::sample(g, [](double x) { return std::cos(x); });
  CHECK(max_abs_diff(derivative(f, 1), expected) <= 1e-12);
}

TEST_CASE("derivatives of a constant vanish") {
  const Field c = Field::constant(make_grid(64, 7), 2.5);
  for (int order = 1; order <= kMaxDerivativeOrder; ++order) {
    CHECK(max_abs(derivative(c, order)) <= 1e-14);
  }
}

namespace {

double sech2_third_derivative_error(std::size_t n) {
  const double K = std::sqrt(3.0) / 2.0;
  const Grid g = make_grid(n, 100);
  const Field f = Field::sample(g, [K](double x) { return std::pow(1.0 / std::cosh(K * (x - 50)), 2); });
  const Field expected = Field::sample(
      g, [K](double x) { return testing::sech2_derivative(x, 1.0, K, 50.0, 3); });
  return max_abs_diff(derivative(f, 3), expected);
}

}  // namespace

TEST_CASE("third derivative of sech^2 matches the analytic formula") {
  CHECK(sech2_third_derivative_error(1024) <= 1e-8);
}

// At n = 512 the trigonometric interpolant of sech^2(sqrt(3)/2 x) itself is
// off by about 2e-8 in its third derivative: the transform decays like
// exp(-pi k / sqrt(3)) and the modes beyond the Nyquist wavenumber 16.1
// carry sum k^3 |f(k)| / L ~ 3e-8. No spectral method on this grid can meet
// 1e-8, so the case is kept as a known failure rather than loosened.
TEST_CASE("third derivative of sech^2 on 512 points within 1e-8" * doctest::should_fail()) {
  const double err = sech2_third_derivative_error(512);
  MESSAGE("max error on (512, 100): " << err);
  CHECK(err <= 1e-8);
}

TEST_CASE("all derivative orders agree with the Gaussian Hermite formula") {
  const Grid g = make_grid(1024, 100);
  const Field f = Field::sample(g, [](double x) { return std::exp(-std::pow((x - 50) / 5, 2)); });
  for (int order = 1; order <= kMaxDerivativeOrder; ++order) {
    const Field expected = Field::sample(
        g, [order](double x) { return testing::gaussian_derivative(x, 1.0, 5.0, 50.0, order); });
    // Rounding in the transform is amplified by k_max^order.
    const double k_max = pi * 1024 / 100;
    const double tol = std::max(1e-11, 2.2e-16 * std::pow(k_max, order));
    CAPTURE(order);
    CHECK(max_abs_diff(derivative(f, order), expected) <= tol);
  }
}

TEST_CASE("derivative rejects unsupported orders") {
  const Field f = Field::zeros(make_grid(16, 1));
  CHECK_THROWS_AS(derivative(f, 0), ConfigError);
  CHECK_THROWS_AS(derivative(f, 7), ConfigError);
  CHECK_THROWS_AS(derivative(f, -1), ConfigError);
}

TEST_CASE("odd derivatives drop the Nyquist mode, even ones keep it") {
  const Grid g = make_grid(16, 2 * pi);
  const Field nyq = Field::sample(g, [](double x) { return std::cos(8 * x); });
  CHECK(max_abs(derivative(nyq, 1)) <= 1e-12);
  CHECK(max_abs(derivative(nyq, 3)) <= 1e-10);
  CHECK(max_abs_diff(derivative(nyq, 2), -64.0 * nyq) <= 1e-10);
}

TEST_CASE("derivative orders compose") {
  const Grid g = make_grid(128, 10);
  const Field f = trig_mix(g);
  for (int a = 1; a <= 5; ++a) {
    for (int b = 1; a + b <= kMaxDerivativeOrder; ++b) {
      const Field direct = derivative(f, a + b);
      const Field composed = derivative(derivative(f, a), b);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(max_abs_diff(direct, composed) <= 1e-10 * max_abs(direct));
    }
  }
}

TEST_CASE("integral examples") {
  const Field s = Field::sample(make_grid(64, 2 * pi), [](double x) { return std::sin(x); });
  CHECK(std::abs(integral(s)) <= 1e-14);
  CHECK(integral(Field::constant(make_grid(32, 10), 0.5)) == doctest::Approx(5.0).epsilon(1e-15));

  const double K = std::sqrt(3.0) / 2.0;
  const Field sech2 = Field::sample(make_grid(1024, 100),
                                    [K](double x) { return std::pow(1.0 / std::cosh(K * (x - 50)), 2); });
  CHECK(integral(sech2) == doctest::Approx(4.0 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("integral of a derivative vanishes and integral is linear") {
  const Grid g = make_grid(256, 30);
  // The ramp makes f jump at the boundary; the zero mode is still removed.
  const Field f = Field::sample(
      g, [](double x) { return std::exp(-std::pow(x - 15, 2) / 4) + 0.1 * x / 30; });
  CHECK(std::abs(integral(derivative(f, 1))) <= 1e-12 * norms(f).l2);

  const Field h = trig_mix(g);
  CHECK(integral(2.0 * f - 3.0 * h) == doctest::Approx(2.0 * integral(f) - 3.0 * integral(h)));
}

TEST_CASE("norms examples and scaling") {
  const Norms c = norms(Field::constant(make_grid(32, 10), 2.0));
  CHECK(c.l2 == doctest::Approx(2.0 * std::sqrt(10.0)).epsilon(1e-15));
  CHECK(c.linf == 2.0);

  const Norms z = norms(Field::zeros(make_grid(32, 10)));
  CHECK(z.l2 == 0.0);
  CHECK(z.linf == 0.0);

  const Field s = Field::sample(make_grid(64, 2 * pi), [](double x) { return std::sin(x); });
  CHECK(norms(s).l2 == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
  CHECK(norms(-3.0 * s).l2 == doctest::Approx(3.0 * norms(s).l2).epsilon(1e-15));
  CHECK(norms(-3.0 * s).linf == doctest::Approx(3.0 * norms(s).linf).epsilon(1e-15));
}

TEST_CASE("Parseval: sample-space and mode-space L2 agree") {
  const Grid g = make_grid(128, 10);
  const Field f = trig_mix(g);
  // Mode amplitudes of trig_mix: mean 0.3, then 1, 0.5, 0.25 on modes 1, 3, 7.
  const double mode_space = std::sqrt(10.0 * (0.09 + 0.5 * (1.0 + 0.25 + 0.0625)));
  CHECK(std::abs(norms(f).l2 - mode_space) <= 1e-12 * mode_space);
}

TEST_CASE("sobolev_norm") {
  const Grid g = make_grid(64, 2 * pi);
  const Field s = Field::sample(g, [](double x) { return std::sin(x); });
  CHECK(sobolev_norm(s, 0) == doctest::Approx(norms(s).l2).epsilon(1e-15));
  CHECK(sobolev_norm(s, 1) == doctest::Approx(std::sqrt(2 * pi)).epsilon(1e-13));
  // Every derivative of sin has the same L2 norm.
  CHECK(sobolev_norm(s, 6) == doctest::Approx(std::sqrt(7 * pi)).epsilon(1e-12));

  const Field c = Field::constant(make_grid(32, 9), 1.5);
  for (int k = 0; k <= 6; ++k) CHECK(sobolev_norm(c, k) == doctest::Approx(1.5 * 3.0).epsilon(1e-14));

  CHECK_THROWS_AS(sobolev_norm(s, -1), ConfigError);
  CHECK_THROWS_AS(sobolev_norm(s, 7), ConfigError);
}

TEST_CASE("dealias is a projection onto |m| <= n/3") {
  const Grid g = make_grid(96, 10);
  const Field resolved = trig_mix(g);
  CHECK(max_abs_diff(dealias(resolved), resolved) <= 1e-14);

  const double k = 2.0 * pi / g.length();
  const Field high = Field::sample(g, [k](double x) { return std::cos((96 / 2 - 1) * k * x); });
  CHECK(max_abs(dealias(high)) <= 1e-13);

  const Field mixed = resolved + high + Field::sample(g, [k](double x) { return std::sin(33 * k * x); });
  const Field once = dealias(mixed);
  CHECK(max_abs_diff(dealias(once), once) <= 1e-14);
  CHECK(max_abs_diff(once, resolved) <= 1e-13);
}

TEST_CASE("product dealiases the pointwise product") {
  const Grid g = make_grid(48, 2 * pi);
  const Field a = Field::sample(g, [](double x) { return std::cos(10 * x); });
  // cos^2(10x) = (1 + cos 20x)/2, and mode 20 > 48/3 is removed.
  const Field p = product(a, a);
  CHECK(max_abs_diff(p, Field::constant(g, 0.5)) <= 1e-14);
}

TEST_CASE("spectral operations are safe to call concurrently") {
  const Grid g = make_grid(256, 10);
  const Field f = trig_mix(g);
  const Field expected = derivative(f, 3);
  std::vector<int> ok(8, 0);
  std::vector<std::thread> pool;
  for (int t = 0; t < 8; ++t) {
    pool.emplace_back([&, t] {
      bool same = true;
      for (int rep = 0; rep < 50; ++rep) same = same && derivative(f, 3) == expected;
      ok[t] = same;
    });
  }
  for (auto& th : pool) th.join();
  for (int v : ok) CHECK(v == 1);
}
